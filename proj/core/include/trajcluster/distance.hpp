#pragma once

#include "trajcluster/cdtw.hpp"
#include "trajcluster/geometry.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace trajcluster {

enum class DistanceKind { Dtw, Frechet, Cdtw };

std::string_view to_string(DistanceKind kind);

/// Parses "dtw", "frechet" or "cdtw" (case-insensitive).
std::optional<DistanceKind> parse_distance_kind(std::string_view name);

/// Distance of the chosen kind; `res` only matters for CDTW.
double distance(const Trajectory& p, const Trajectory& q, DistanceKind kind, Resolution res = kDefaultResolution);

}  // namespace trajcluster
