#pragma once

#include "trajcluster/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <span>

namespace trajcluster {

struct Circle {
    Point center;
    double radius = 0.0;

    bool contains(const Point& p, double slack = 1e-12) const
    {
        return dist(center, p) <= radius + slack * std::max(1.0, radius);
    }
};

/// Smallest circle enclosing all points (randomized incremental, expected
/// linear time). The shuffle uses a fixed seed so results are reproducible.
/// Throws std::invalid_argument for an empty input.
Circle minimum_enclosing_circle(std::span<const Point> points, std::uint64_t seed = 0x5eedULL);

/// Circle through three points; collinear triples give the circle on the
/// farthest pair as diameter.
Circle circle_from(const Point& a, const Point& b, const Point& c);
Circle circle_from(const Point& a, const Point& b);

}  // namespace trajcluster
