#include "trajcluster/distance.hpp"

#include "trajcluster/discrete.hpp"

#include <algorithm>
#include <cctype>

namespace trajcluster {

std::string_view to_string(DistanceKind kind)
{
    switch (kind) {
    case DistanceKind::Dtw: return "dtw";
    case DistanceKind::Frechet: return "frechet";
    case DistanceKind::Cdtw: return "cdtw";
    }
    return "unknown";
}

std::optional<DistanceKind> parse_distance_kind(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "dtw") return DistanceKind::Dtw;
    if (lower == "frechet" || lower == "fréchet") return DistanceKind::Frechet;
    if (lower == "cdtw") return DistanceKind::Cdtw;
    return std::nullopt;
}

double distance(const Trajectory& p, const Trajectory& q, DistanceKind kind, Resolution res)
{
    switch (kind) {
    case DistanceKind::Dtw: return dtw_cost(p, q);
    case DistanceKind::Frechet: return frechet(p, q);
    case DistanceKind::Cdtw: return cdtw_cost(p, q, res);
    }
    return 0.0;
}

}  // namespace trajcluster
