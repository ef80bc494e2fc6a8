#include "trajcluster/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace trajcluster {

double norm(const Point& p) { return std::hypot(p.x, p.y); }

double point_segment_dist(const Point& p, const Segment& s)
{
    const Point d = s.end - s.start;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return dist(p, s.start);
    const double t = std::clamp(dot(p - s.start, d) / len2, 0.0, 1.0);
    return dist(p, s.start + t * d);
}

Trajectory::Trajectory(std::vector<Point> raw_points)
{
    vertices_.reserve(raw_points.size());
    for (const Point& p : raw_points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw GeometryError("trajectory contains a non-finite coordinate");
        if (vertices_.empty() || !(vertices_.back() == p)) vertices_.push_back(p);
    }
    if (vertices_.size() < 2)
        throw GeometryError("trajectory needs at least 2 distinct consecutive points, got " +
                            std::to_string(vertices_.size()));

    cum_lengths_.resize(vertices_.size());
    cum_lengths_[0] = 0.0;
    for (std::size_t i = 1; i < vertices_.size(); ++i)
        cum_lengths_[i] = cum_lengths_[i - 1] + dist(vertices_[i - 1], vertices_[i]);
}

Trajectory make_trajectory(std::vector<Point> raw_points) { return Trajectory(std::move(raw_points)); }

std::size_t Trajectory::segment_at(double s) const
{
    auto it = std::upper_bound(cum_lengths_.begin(), cum_lengths_.end(), s);
    if (it == cum_lengths_.begin()) return 0;
    const auto idx = static_cast<std::size_t>(it - cum_lengths_.begin()) - 1;
    return std::min(idx, num_segments() - 1);
}

Point Trajectory::point_at(double s) const
{
    if (!(s >= 0.0 && s <= length()))
        throw GeometryError("arc length " + std::to_string(s) + " outside [0, " + std::to_string(length()) + "]");
    return point_at_clamped(s);
}

Point Trajectory::point_at_clamped(double s) const
{
    if (!(s > 0.0)) return vertices_.front();
    if (s >= length()) return vertices_.back();
    const std::size_t i = segment_at(s);
    const double t = (s - cum_lengths_[i]) / segment_length(i);
    const Point& a = vertices_[i];
    const Point& b = vertices_[i + 1];
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

Point project_transverse_mercator(double lat_deg, double lon_deg, double ref_lon_deg)
{
    if (!std::isfinite(lat_deg) || !(std::abs(lat_deg) < 90.0))
        throw GeometryError("latitude out of range: " + std::to_string(lat_deg));
    if (!std::isfinite(lon_deg) || std::abs(lon_deg) > 180.0)
        throw GeometryError("longitude out of range: " + std::to_string(lon_deg));
    if (!std::isfinite(ref_lon_deg) || std::abs(ref_lon_deg) > 180.0)
        throw GeometryError("reference longitude out of range: " + std::to_string(ref_lon_deg));

    constexpr double deg = std::numbers::pi / 180.0;
    double dlon = lon_deg - ref_lon_deg;
    if (dlon > 180.0) dlon -= 360.0;
    if (dlon < -180.0) dlon += 360.0;

    const double phi = lat_deg * deg;
    const double lam = dlon * deg;
    const double b = std::cos(phi) * std::sin(lam);
    if (!(std::abs(b) < 1.0))
        throw GeometryError("point is 90 degrees from the central meridian");

    return {kEarthRadius * std::atanh(b), kEarthRadius * std::atan2(std::tan(phi), std::cos(lam))};
}

}  // namespace trajcluster
