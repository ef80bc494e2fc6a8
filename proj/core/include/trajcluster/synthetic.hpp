#pragma once

#include "trajcluster/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace trajcluster::synthetic {

/// Pen-stroke-like corpus: each class has two writing styles of one smooth
/// stroke; members vary the style by a small affine jitter, uneven pen speed
/// and point noise. Trajectories are labeled "c00", "c01", ... and
/// resampled to `complexity` vertices.
struct CharacterCorpusOptions {
    std::size_t classes = 20;
    std::size_t per_class = 50;
    std::size_t complexity = 50;
    std::uint64_t seed = 1;
};
std::vector<LabeledTrajectory> character_corpus(const CharacterCorpusOptions& options);

/// `groups` well-separated groups. Members of one group follow the same
/// zig-zag of `corners` corners, each corner moved by up to `spread` per
/// axis, with extra vertices placed mid-segment and up to `spread` off it.
/// Group anchors are `separation` apart; segments between corners have
/// length 10.
struct PlantedOptions {
    std::size_t groups = 3;
    std::size_t per_group = 10;
    std::size_t corners = 5;
    std::size_t extra_per_segment = 1;
    double separation = 100.0;
    double spread = 0.05;
    std::uint64_t seed = 1;
};
std::vector<LabeledTrajectory> planted_groups(const PlantedOptions& options);

/// Unstructured random walks, for property tests.
std::vector<Trajectory> random_walks(std::size_t count, std::size_t complexity, std::uint64_t seed,
                                     double step = 1.0);

std::vector<Trajectory> trajectories_of(const std::vector<LabeledTrajectory>& items);

}  // namespace trajcluster::synthetic
