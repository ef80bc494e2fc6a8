#pragma once

#include "trajcluster/distance.hpp"
#include "trajcluster/simplification.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace trajcluster {

/// k centers plus the nearest-center assignment of every input trajectory.
struct Clustering {
    std::vector<Trajectory> centers;
    std::vector<std::size_t> assignment;
    std::vector<double> distances;
    /// Input indices the centers were simplified from, when they were.
    std::vector<std::size_t> medoids;

    std::vector<std::size_t> members(std::size_t cluster) const;
};

struct ClusterCost {
    double medians = 0.0;  // sum of distances to the nearest center
    double center = 0.0;   // maximum distance to the nearest center
};

/// Assigns every trajectory to its nearest center (ties: lowest index).
/// Throws std::invalid_argument for an empty center list.
Clustering assign(std::span<const Trajectory> trajectories, std::span<const Trajectory> centers, DistanceKind kind,
                  Resolution res = kDefaultResolution);

ClusterCost cost(const Clustering& clustering);

/// Input trajectories as candidate centers: each candidate is the greedy
/// Fréchet ell-simplification of an input, and distances from inputs to
/// candidates are computed once per candidate and cached.
class CandidatePool {
public:
    CandidatePool(std::span<const Trajectory> trajectories, std::size_t ell, DistanceKind kind,
                  Resolution res = kDefaultResolution);

    std::size_t size() const { return trajectories_.size(); }
    std::size_t ell() const { return ell_; }
    DistanceKind kind() const { return kind_; }
    Resolution resolution() const { return res_; }
    std::span<const Trajectory> trajectories() const { return trajectories_; }

    const Trajectory& candidate(std::size_t c);
    /// Distances from every input trajectory to candidate c.
    const std::vector<double>& column(std::size_t c);
    double operator()(std::size_t t, std::size_t c) { return column(c)[t]; }

    /// Clustering whose centers are the given candidates.
    Clustering clustering(std::span<const std::size_t> medoids);

private:
    std::span<const Trajectory> trajectories_;
    std::size_t ell_;
    DistanceKind kind_;
    Resolution res_;
    std::vector<std::optional<Trajectory>> candidates_;
    std::vector<std::vector<double>> columns_;
};

/// Farthest-point selection over ell-simplified inputs; the first center is
/// drawn uniformly from the seeded generator.
Clustering gonzalez(CandidatePool& pool, std::size_t k, std::uint64_t seed);

/// Runs gonzalez once per seed and keeps the run with the lowest medians cost
/// (ties: earliest seed).
Clustering gonzalez_best_of(CandidatePool& pool, std::size_t k, std::span<const std::uint64_t> seeds);

/// PAM build phase: adds k candidates one at a time, each giving the largest
/// reduction of the medians cost.
std::vector<std::size_t> pam_greedy_init(CandidatePool& pool, std::size_t k);

struct LocalSearchStats {
    std::size_t swaps = 0;
    std::vector<double> trace;  // medians cost before the first and after every swap
};

/// PAM swap phase: performs the best single (medoid, non-medoid) swap while
/// it strictly reduces the medians cost.
Clustering pam_local_search(CandidatePool& pool, std::vector<std::size_t> medoids, LocalSearchStats* stats = nullptr);

Clustering pam(CandidatePool& pool, std::size_t k);

}  // namespace trajcluster
