#pragma once

#include "trajcluster/clustering.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace trajcluster {

enum class ImproveMethod { Dba, Cdba, Fsa, Wedge };

std::string_view to_string(ImproveMethod method);
std::optional<ImproveMethod> parse_improve_method(std::string_view name);

/// Distance a method's updates are designed to decrease.
DistanceKind natural_kind(ImproveMethod method);

/// Cluster members are passed by pointer so clusters can be views into one
/// dataset.
using Members = std::span<const Trajectory* const>;

// Each update returns the candidate vertex positions of the new center,
// one per vertex of `center`. Candidates may contain repeated consecutive
// vertices; the improve loop rejects those that collapse below two vertices.

/// Mean of the DTW-aligned vertices.
std::vector<Point> dba_update(const Trajectory& center, Members cluster);

/// Mean of points sampled from the stretches of each member that the
/// optimal CDTW path matches to each center vertex.
std::vector<Point> cdba_update(const Trajectory& center, Members cluster, Resolution res = kDefaultResolution);

/// Minimum-enclosing-circle center of points sampled like cdba_update, but
/// along a Fréchet matching.
std::vector<Point> fsa_update(const Trajectory& center, Members cluster);

struct WedgeOptions {
    bool fix_endpoints = false;
    int rounds = 12;
    /// Initial pattern-search step as a fraction of the mean incident
    /// center-segment length.
    double step_fraction = 1.0 / 128.0;
};

/// Moves each center vertex in turn (already-moved neighbours included) to
/// reduce the weighted squared distance of the member vertices assigned to
/// its two incident center segments.
std::vector<Point> wedge_update(const Trajectory& center, Members cluster, WedgeOptions options = {},
                                Resolution res = kDefaultResolution);

/// Other-axis range [lo, hi] of a monotone path at coordinate `s` on the
/// chosen axis (p when along_p, else q).
std::pair<double, double> matched_range(std::span<const ParamPoint> path, double s, bool along_p = true);

/// Points spread evenly over the arc-length range [lo, hi] of `t`:
/// max(1, ceil(B * (hi - lo) / L(t))) of them with B the complexity of t,
/// the midpoint when only one.
std::vector<Point> sample_range(const Trajectory& t, double lo, double hi);

struct ImproveOptions {
    int max_iter = 20;
    Resolution res = kDefaultResolution;
    WedgeOptions wedge;
    /// Distance used for acceptance and reassignment; defaults to the
    /// method's natural kind.
    std::optional<DistanceKind> kind;
};

struct ImproveResult {
    Clustering clustering;
    DistanceKind kind = DistanceKind::Cdtw;
    /// Costs under `kind`: the initial clustering, then after every
    /// iteration that accepted at least one candidate.
    std::vector<ClusterCost> trace;
    int iterations = 0;
    std::size_t accepted = 0;
};

/// Alternates center updates (a candidate is kept only if it strictly lowers
/// its cluster's summed distance) with nearest-center reassignment, until no
/// candidate is accepted or max_iter iterations ran.
ImproveResult improve_loop(std::span<const Trajectory> trajectories, const Clustering& initial, ImproveMethod method,
                           const ImproveOptions& options = {});

}  // namespace trajcluster
