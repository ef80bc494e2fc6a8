#pragma once

#include "trajcluster/distance.hpp"

#include <cstddef>
#include <vector>

namespace trajcluster {

/// Vertex-restricted simplification: `result` consists of the source
/// vertices at `source_indices` (0-based, increasing, first and last kept).
struct Simplification {
    Trajectory result;
    std::vector<std::size_t> source_indices;
    /// Threshold reached by the threshold searches, or the summed shortcut
    /// error for the dynamic program.
    double objective = 0.0;
};

/// Distance of the chosen kind between the shortcut p_i p_j and the
/// subtrajectory p_i..p_j (0-based, i < j). Infinite when p_i == p_j,
/// since a simplification cannot repeat a vertex.
double shortcut_error(const Trajectory& t, std::size_t i, std::size_t j, DistanceKind kind,
                      Resolution res = kDefaultResolution);

/// Memoized shortcut errors of one trajectory.
class ShortcutTable {
public:
    ShortcutTable(const Trajectory& t, DistanceKind kind, Resolution res = kDefaultResolution);

    double operator()(std::size_t i, std::size_t j);
    const Trajectory& trajectory() const { return t_; }
    DistanceKind kind() const { return kind_; }

private:
    const Trajectory& t_;
    DistanceKind kind_;
    Resolution res_;
    std::vector<double> cache_;
};

/// Greedy scan at a fixed threshold: from p_i advance j while the shortcut
/// to p_{j+1} stays within the threshold, then emit p_j and restart there.
std::vector<std::size_t> greedy_scan(ShortcutTable& table, double threshold);

/// Greedy simplification with a binary search on the threshold for the
/// smallest one giving at most `ell` vertices.
Simplification greedy_simplify(const Trajectory& t, std::size_t ell, DistanceKind kind,
                               Resolution res = kDefaultResolution);

/// Min-link shortcut path, binary-searching the threshold over the sorted
/// shortcut-error values.
Simplification imai_iri_threshold(const Trajectory& t, std::size_t ell, DistanceKind kind,
                                  Resolution res = kDefaultResolution);

/// Dynamic program minimizing the summed shortcut error over paths with at
/// most `ell` vertices.
Simplification imai_iri_dp(const Trajectory& t, std::size_t ell, DistanceKind kind,
                           Resolution res = kDefaultResolution);

enum class SimplifyMethod { Greedy, ImaiIri, ImaiIriDp };

Simplification simplify(const Trajectory& t, std::size_t ell, DistanceKind kind, SimplifyMethod method,
                        Resolution res = kDefaultResolution);

/// Trajectory through the given source vertices.
Simplification make_simplification(const Trajectory& t, std::vector<std::size_t> indices, double objective = 0.0);

}  // namespace trajcluster
