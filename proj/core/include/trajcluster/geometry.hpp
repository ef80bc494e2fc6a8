#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace trajcluster {

/// A point in the plane. Units are whatever the input data uses.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;

    Point& operator+=(const Point& o) { x += o.x; y += o.y; return *this; }
    Point& operator-=(const Point& o) { x -= o.x; y -= o.y; return *this; }
    Point& operator*=(double s) { x *= s; y *= s; return *this; }
};

inline Point operator+(Point a, const Point& b) { return a += b; }
inline Point operator-(Point a, const Point& b) { return a -= b; }
inline Point operator*(Point a, double s) { return a *= s; }
inline Point operator*(double s, Point a) { return a *= s; }

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

double norm(const Point& p);

/// Squared Euclidean distance, the ground distance used by DTW and CDTW.
inline double sq_dist(const Point& p, const Point& q)
{
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

inline double dist(const Point& p, const Point& q) { return norm(p - q); }

struct Segment {
    Point start;
    Point end;

    double length() const { return dist(start, end); }
};

/// Euclidean (un-squared) distance from `p` to the closest point of `s`.
/// A degenerate segment is treated as a single point.
double point_segment_dist(const Point& p, const Segment& s);

/// Thrown for malformed trajectories and out-of-range queries.
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A polygonal chain with at least two vertices and no repeated consecutive
/// vertices, together with its cumulative arc lengths.
class Trajectory {
public:
    /// Drops exact consecutive duplicates; throws GeometryError when fewer than
    /// two distinct vertices remain.
    explicit Trajectory(std::vector<Point> raw_points);

    std::size_t size() const { return vertices_.size(); }
    std::size_t num_segments() const { return vertices_.size() - 1; }

    const std::vector<Point>& vertices() const { return vertices_; }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }
    const Point& front() const { return vertices_.front(); }
    const Point& back() const { return vertices_.back(); }

    /// cum_lengths()[i] is the arc length from the first vertex to vertex i.
    const std::vector<double>& cum_lengths() const { return cum_lengths_; }
    double length() const { return cum_lengths_.back(); }
    double segment_length(std::size_t i) const { return cum_lengths_[i + 1] - cum_lengths_[i]; }

    Segment segment(std::size_t i) const { return {vertices_[i], vertices_[i + 1]}; }

    /// Index of the segment containing arc length `s` (the last segment for s = L).
    std::size_t segment_at(double s) const;

    /// Point at arc length `s`; throws GeometryError outside [0, L].
    Point point_at(double s) const;

    /// Like point_at, but clamps `s` into [0, L] first. Used internally where
    /// arc lengths come out of floating-point arithmetic.
    Point point_at_clamped(double s) const;

    friend bool operator==(const Trajectory& a, const Trajectory& b) { return a.vertices_ == b.vertices_; }

private:
    std::vector<Point> vertices_;
    std::vector<double> cum_lengths_;
};

Trajectory make_trajectory(std::vector<Point> raw_points);

inline Point point_at(const Trajectory& t, double s) { return t.point_at(s); }

/// Earth radius (meters) used by the spherical projection.
inline constexpr double kEarthRadius = 6371008.8;

/// Spherical transverse Mercator projection centered on `ref_lon`.
/// Returns planar coordinates in meters (x east, y north).
Point project_transverse_mercator(double lat_deg, double lon_deg, double ref_lon_deg);

}  // namespace trajcluster
