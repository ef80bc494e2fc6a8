#pragma once

#include "trajcluster/geometry.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace trajcluster {

/// Vertex alignment (i into P, j into Q), 0-based, from (0, 0) to (n-1, m-1).
struct DiscreteWarping {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

struct DtwResult {
    double cost = 0.0;
    DiscreteWarping warping;
};

/// Dynamic time warping with squared Euclidean ground distance.
DtwResult dtw(const Trajectory& p, const Trajectory& q);

double dtw_cost(const Trajectory& p, const Trajectory& q);

/// Monotone matching between P and Q as (arc length on P, arc length on Q)
/// pairs; linear interpolation between consecutive pairs stays within the
/// free space of the threshold it was extracted at.
struct FrechetMatching {
    std::vector<std::pair<double, double>> pairs;
    double threshold = 0.0;
};

/// True iff the continuous Fréchet distance between P and Q is at most eps.
bool frechet_decision(const Trajectory& p, const Trajectory& q, double eps);

inline constexpr double kFrechetRelTol = 1e-6;

/// Fréchet distance by bisection over frechet_decision, to relative
/// tolerance rel_tol. Returns the upper end of the final bracket.
double frechet(const Trajectory& p, const Trajectory& q, double rel_tol = kFrechetRelTol);

/// A monotone matching realizing (up to rel_tol) the Fréchet distance,
/// sampled at every free-space cell boundary crossing.
FrechetMatching frechet_matching(const Trajectory& p, const Trajectory& q, double rel_tol = kFrechetRelTol);

}  // namespace trajcluster
