#pragma once

#include "trajcluster/geometry.hpp"

#include <vector>

namespace trajcluster {

/// A point of the parameter space [0, L(P)] x [0, L(Q)], or of a single
/// cell's local rectangle, depending on context.
struct ParamPoint {
    double p = 0.0;
    double q = 0.0;

    friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

inline bool dominates(const ParamPoint& t, const ParamPoint& s) { return s.p <= t.p && s.q <= t.q; }

/// Monotone polyline through parameter space together with its cost.
struct WarpingPath {
    std::vector<ParamPoint> points;
    double cost = 0.0;
};

/// The slope-1 line q - b = p - a through the center of a cell's level sets,
/// stored as the offset a - b so that the line is q = p - offset.
struct DiagonalLine {
    double offset = 0.0;

    /// Signed vertical distance of (p, q) above the line.
    double above(double p, double q) const { return q - p + offset; }
};

/// One parameter-space cell: the squared distance between a point on segment
/// P (arc length p from its start) and a point on segment Q (arc length q) as
///
///     h(p, q) = (p - a)^2 + (q - b)^2 + 2 lambda (p - a)(q - b) + c.
///
/// lambda = -(u . v) for the unit directions u, v of the two segments.
/// Parallel segments (|lambda| = 1) have a valley line instead of a single
/// minimum; (a, b) is then the point of that line closest to the cell center
/// and c is the squared distance between the supporting lines.
class Cell {
public:
    /// Throws GeometryError for a degenerate segment.
    static Cell from_segments(const Segment& seg_p, const Segment& seg_q, ParamPoint origin = {});

    double a() const { return a_; }
    double b() const { return b_; }
    double lambda() const { return lambda_; }
    double c() const { return c_; }
    double width() const { return width_; }
    double height_extent() const { return height_; }
    const ParamPoint& origin() const { return origin_; }
    bool parallel() const { return parallel_; }

    DiagonalLine ell_m() const { return {offset_}; }

    /// Exact squared distance between the two segment points, evaluated from
    /// the segment geometry (numerically stable for any lambda).
    double height(double p, double q) const
    {
        const double dx = d_.x + u_.x * p - v_.x * q;
        const double dy = d_.y + u_.y * p - v_.y * q;
        return dx * dx + dy * dy;
    }

    /// The quadratic form evaluated from (a, b, lambda, c).
    double height_from_coefficients(double p, double q) const;

private:
    Point d_;  // start of P minus start of Q
    Point u_;
    Point v_;
    double a_ = 0.0;
    double b_ = 0.0;
    double lambda_ = 0.0;
    double c_ = 0.0;
    double offset_ = 0.0;  // a - b, computed without cancellation
    double width_ = 0.0;
    double height_ = 0.0;
    ParamPoint origin_;
    bool parallel_ = false;
};

Cell cell_from_segments(const Segment& seg_p, const Segment& seg_q, ParamPoint origin = {});

inline DiagonalLine ell_m(const Cell& cell) { return cell.ell_m(); }

/// Cost of the straight piece u -> v: L1 length times the Simpson average of
/// h, which is exact since h is quadratic along a line.
double segment_cost(const Cell& cell, const ParamPoint& u, const ParamPoint& v);

/// Corner points of the optimal path from s to t inside a cell (local
/// coordinates). The path has at most four points.
struct LocalPath {
    ParamPoint pts[4];
    int size = 0;
};

LocalPath cell_optimal_corners(const Cell& cell, const ParamPoint& s, const ParamPoint& t);

/// Cost of the optimal within-cell path from s to t; s <= t is not checked.
double cell_optimal_cost(const Cell& cell, const ParamPoint& s, const ParamPoint& t);

/// Optimal within-cell warping path from s to t (local coordinates).
/// Throws std::invalid_argument unless s <= t componentwise.
WarpingPath cell_optimal_path(const Cell& cell, const ParamPoint& s, const ParamPoint& t);

/// Steiner-point density. At level r every cell boundary edge carries 2^r
/// uniform intervals (2^r + 1 points including both corners).
struct Resolution {
    int level = 5;

    int intervals() const { return 1 << level; }
};

inline constexpr Resolution kDefaultResolution{5};
inline constexpr int kMaxResolutionLevel = 20;

/// Smallest level whose Steiner spacing is at most `spacing` on every
/// segment of both trajectories.
Resolution resolution_for_spacing(const Trajectory& p, const Trajectory& q, double spacing);

struct CdtwResult {
    double cost = 0.0;
    WarpingPath path;
};

/// Additive approximation of the continuous DTW distance: shortest path
/// through the Steiner-point graph of the cell grid, found by bidirectional
/// Dijkstra with lazily generated edges.
CdtwResult cdtw(const Trajectory& p, const Trajectory& q, Resolution res = kDefaultResolution);

/// Cost only; skips path reconstruction.
double cdtw_cost(const Trajectory& p, const Trajectory& q, Resolution res = kDefaultResolution);

/// Sum of segment_cost over the pieces of a global warping path, using the
/// cell that contains each piece.
double recompute_path_cost(const Trajectory& p, const Trajectory& q, const WarpingPath& path);

/// Staircase dynamic program over an (n+1) x (n+1) uniform grid of the
/// parameter space. Converges to the continuous DTW distance as n grows.
double cdtw_grid_oracle(const Trajectory& p, const Trajectory& q, int n);

}  // namespace trajcluster
