#include "trajcluster/cdtw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace trajcluster {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cells whose |lambda| is this close to 1 are treated as parallel.
constexpr double kParallelTolerance = 1e-9;

}  // namespace

Cell Cell::from_segments(const Segment& seg_p, const Segment& seg_q, ParamPoint origin)
{
    Cell cell;
    cell.width_ = seg_p.length();
    cell.height_ = seg_q.length();
    if (!(cell.width_ > 0.0) || !(cell.height_ > 0.0))
        throw GeometryError("cell requires two non-degenerate segments");

    cell.origin_ = origin;
    cell.u_ = (seg_p.end - seg_p.start) * (1.0 / cell.width_);
    cell.v_ = (seg_q.end - seg_q.start) * (1.0 / cell.height_);
    cell.d_ = seg_p.start - seg_q.start;

    const double du = dot(cell.d_, cell.u_);
    const double dv = dot(cell.d_, cell.v_);
    const double dd = dot(cell.d_, cell.d_);
    const double lambda = std::clamp(-dot(cell.u_, cell.v_), -1.0, 1.0);
    const double cx = 0.5 * cell.width_;
    const double cy = 0.5 * cell.height_;

    if (1.0 - std::abs(lambda) <= kParallelTolerance) {
        cell.parallel_ = true;
        cell.c_ = std::max(0.0, dd - du * du);
        if (lambda < 0.0) {
            // Same direction: h = ((p - a) - (q - b))^2 + c, valley a - b = -du.
            cell.lambda_ = -1.0;
            cell.offset_ = -du;
            cell.a_ = 0.5 * (cx + cy + cell.offset_);
            cell.b_ = 0.5 * (cx + cy - cell.offset_);
        } else {
            // Opposite directions: h = ((p - a) + (q - b))^2 + c, valley a + b = -du.
            cell.lambda_ = 1.0;
            const double sum = -du;
            cell.a_ = 0.5 * (cx - cy + sum);
            cell.b_ = 0.5 * (cy - cx + sum);
            cell.offset_ = cell.a_ - cell.b_;
        }
        return cell;
    }

    cell.lambda_ = lambda;
    const double den = 1.0 - lambda * lambda;
    cell.a_ = (-du - lambda * dv) / den;
    cell.b_ = (dv + lambda * du) / den;
    cell.offset_ = -(du + dv) / (1.0 - lambda);
    cell.c_ = 0.0;
    return cell;
}

Cell cell_from_segments(const Segment& seg_p, const Segment& seg_q, ParamPoint origin)
{
    return Cell::from_segments(seg_p, seg_q, origin);
}

double Cell::height_from_coefficients(double p, double q) const
{
    const double x = p - a_;
    const double y = q - b_;
    return x * x + y * y + 2.0 * lambda_ * x * y + c_;
}

double segment_cost(const Cell& cell, const ParamPoint& u, const ParamPoint& v)
{
    const double len = std::abs(v.p - u.p) + std::abs(v.q - u.q);
    if (len == 0.0) return 0.0;
    const double hm = cell.height(0.5 * (u.p + v.p), 0.5 * (u.q + v.q));
    return len * (cell.height(u.p, u.q) + 4.0 * hm + cell.height(v.p, v.q)) / 6.0;
}

LocalPath cell_optimal_corners(const Cell& cell, const ParamPoint& s, const ParamPoint& t)
{
    const DiagonalLine line = cell.ell_m();
    LocalPath out;
    auto push = [&out](ParamPoint x) {
        if (out.size == 0 || !(out.pts[out.size - 1] == x)) out.pts[out.size++] = x;
    };

    push(s);
    if (line.above(s.p, t.q) < 0.0) {
        // The line passes above-left of the rectangle spanned by s and t.
        push({s.p, t.q});
    } else if (line.above(t.p, s.q) > 0.0) {
        push({t.p, s.q});
    } else {
        ParamPoint cs = s;
        const double gs = line.above(s.p, s.q);
        if (gs > 0.0) cs.p = std::clamp(s.q + line.offset, s.p, t.p);
        else if (gs < 0.0) cs.q = std::clamp(s.p - line.offset, s.q, t.q);

        ParamPoint ct = t;
        const double gt = line.above(t.p, t.q);
        if (gt > 0.0) ct.q = std::clamp(t.p - line.offset, cs.q, t.q);
        else if (gt < 0.0) ct.p = std::clamp(t.q + line.offset, cs.p, t.p);
        ct.p = std::max(ct.p, cs.p);
        ct.q = std::max(ct.q, cs.q);

        push(cs);
        push(ct);
    }
    push(t);
    return out;
}

double cell_optimal_cost(const Cell& cell, const ParamPoint& s, const ParamPoint& t)
{
    const LocalPath path = cell_optimal_corners(cell, s, t);
    double cost = 0.0;
    double h_prev = cell.height(path.pts[0].p, path.pts[0].q);
    for (int i = 1; i < path.size; ++i) {
        const ParamPoint& u = path.pts[i - 1];
        const ParamPoint& v = path.pts[i];
        const double h_next = cell.height(v.p, v.q);
        const double len = (v.p - u.p) + (v.q - u.q);
        const double hm = cell.height(0.5 * (u.p + v.p), 0.5 * (u.q + v.q));
        cost += len * (h_prev + 4.0 * hm + h_next) / 6.0;
        h_prev = h_next;
    }
    return cost;
}

WarpingPath cell_optimal_path(const Cell& cell, const ParamPoint& s, const ParamPoint& t)
{
    if (!dominates(t, s)) throw std::invalid_argument("cell_optimal_path requires s <= t componentwise");
    const LocalPath local = cell_optimal_corners(cell, s, t);
    WarpingPath path;
    path.points.assign(local.pts, local.pts + local.size);
    if (path.points.size() == 1) path.points.push_back(t);
    for (std::size_t i = 1; i < path.points.size(); ++i)
        path.cost += segment_cost(cell, path.points[i - 1], path.points[i]);
    return path;
}

Resolution resolution_for_spacing(const Trajectory& p, const Trajectory& q, double spacing)
{
    if (!(spacing > 0.0)) throw std::invalid_argument("Steiner spacing must be positive");
    double longest = 0.0;
    for (std::size_t i = 0; i < p.num_segments(); ++i) longest = std::max(longest, p.segment_length(i));
    for (std::size_t j = 0; j < q.num_segments(); ++j) longest = std::max(longest, q.segment_length(j));
    int level = 0;
    while (longest / static_cast<double>(1 << level) > spacing) {
        if (++level > kMaxResolutionLevel)
            throw std::invalid_argument("Steiner spacing " + std::to_string(spacing) + " needs more than 2^" +
                                        std::to_string(kMaxResolutionLevel) + " points per edge");
    }
    return Resolution{level};
}

namespace {

// Implicit Steiner graph. Vertices are lattice points (I, J) of the refined
// grid with I = i*M + k along P and J = j*M + k along Q, restricted to the
// cell boundary lines (I % M == 0 or J % M == 0).
class SteinerGraph {
public:
    SteinerGraph(const Trajectory& p, const Trajectory& q, Resolution res)
        : p_(p), q_(q), m_(res.intervals()), cols_(static_cast<int>(p.num_segments())),
          rows_(static_cast<int>(q.num_segments())), np_(cols_ * m_), nq_(rows_ * m_)
    {
        if (res.level < 0 || res.level > kMaxResolutionLevel)
            throw std::invalid_argument("resolution level out of range: " + std::to_string(res.level));
        cells_.reserve(static_cast<std::size_t>(cols_) * rows_);
        for (int i = 0; i < cols_; ++i)
            for (int j = 0; j < rows_; ++j)
                cells_.push_back(Cell::from_segments(p.segment(i), q.segment(j),
                                                     {p.cum_lengths()[i], q.cum_lengths()[j]}));
        horizontal_ = static_cast<std::int64_t>(rows_ + 1) * (np_ + 1);
        vertical_per_column_ = static_cast<std::int64_t>(rows_) * (m_ - 1);
        total_ = horizontal_ + static_cast<std::int64_t>(cols_ + 1) * vertical_per_column_;
        if (total_ > (std::int64_t{1} << 31))
            throw std::invalid_argument("Steiner graph too large; lower the resolution level");
    }

    std::int64_t size() const { return total_; }
    int target_i() const { return np_; }
    int target_j() const { return nq_; }

    std::int64_t id(int I, int J) const
    {
        if (J % m_ == 0) return static_cast<std::int64_t>(J / m_) * (np_ + 1) + I;
        return horizontal_ + static_cast<std::int64_t>(I / m_) * vertical_per_column_ +
               static_cast<std::int64_t>(J / m_) * (m_ - 1) + (J % m_ - 1);
    }

    const Cell& cell(int ci, int cj) const { return cells_[static_cast<std::size_t>(ci) * rows_ + cj]; }
    int cell_index(int ci, int cj) const { return ci * rows_ + cj; }
    const Cell& cell(int index) const { return cells_[static_cast<std::size_t>(index)]; }

    double local_p(int ci, int k) const { return k == 0 ? 0.0 : k == m_ ? cell(ci, 0).width() : k * cell(ci, 0).width() / m_; }
    double local_q(int cj, int k) const
    {
        return k == 0 ? 0.0 : k == m_ ? cell(0, cj).height_extent() : k * cell(0, cj).height_extent() / m_;
    }

    ParamPoint global(int I, int J) const
    {
        const auto& cp = p_.cum_lengths();
        const auto& cq = q_.cum_lengths();
        const int ci = std::min(I / m_, cols_ - 1);
        const int cj = std::min(J / m_, rows_ - 1);
        const int kp = I - ci * m_;
        const int kq = J - cj * m_;
        return {kp == m_ ? cp[ci + 1] : cp[ci] + local_p(ci, kp), kq == m_ ? cq[cj + 1] : cq[cj] + local_q(cj, kq)};
    }

    // Calls visit(I2, J2, cell_index, weight) for every out-edge of (I, J).
    template <class Visit>
    void forward(int I, int J, Visit&& visit) const
    {
        for_cells(I, J, [&](int ci, int cj) {
            const int kp = I - ci * m_;
            const int kq = J - cj * m_;
            const Cell& c = cell(ci, cj);
            const int index = cell_index(ci, cj);
            const ParamPoint s{local_p(ci, kp), local_q(cj, kq)};
            const bool near = kp == 0 || kq == 0;
            const bool outer_top = kq == m_ && cj == rows_ - 1;
            const bool outer_right = kp == m_ && ci == cols_ - 1;
            if (near) {
                for (int k = kp; k <= m_; ++k) {
                    if (k == kp && kq == m_) continue;
                    visit(ci * m_ + k, (cj + 1) * m_, index, cell_optimal_cost(c, s, {local_p(ci, k), c.height_extent()}));
                }
                for (int k = kq; k < m_; ++k) {
                    if (k == kq && kp == m_) continue;
                    visit((ci + 1) * m_, cj * m_ + k, index, cell_optimal_cost(c, s, {c.width(), local_q(cj, k)}));
                }
                return;
            }
            if (outer_top)
                for (int k = kp + 1; k <= m_; ++k)
                    visit(ci * m_ + k, J, index, cell_optimal_cost(c, s, {local_p(ci, k), c.height_extent()}));
            if (outer_right)
                for (int k = kq + 1; k <= m_; ++k)
                    visit(I, cj * m_ + k, index, cell_optimal_cost(c, s, {c.width(), local_q(cj, k)}));
        });
    }

    // Calls visit(I2, J2, cell_index, weight) for every in-edge of (I, J).
    template <class Visit>
    void backward(int I, int J, Visit&& visit) const
    {
        for_cells(I, J, [&](int ci, int cj) {
            const int kp = I - ci * m_;
            const int kq = J - cj * m_;
            const Cell& c = cell(ci, cj);
            const int index = cell_index(ci, cj);
            const ParamPoint t{local_p(ci, kp), local_q(cj, kq)};
            const bool far = kp == m_ || kq == m_;
            if (far) {
                for (int k = 0; k <= kp; ++k) {
                    if (k == kp && kq == 0) continue;
                    visit(ci * m_ + k, cj * m_, index, cell_optimal_cost(c, {local_p(ci, k), 0.0}, t));
                }
                for (int k = 1; k <= kq; ++k) {
                    if (k == kq && kp == 0) continue;
                    visit(ci * m_, cj * m_ + k, index, cell_optimal_cost(c, {0.0, local_q(cj, k)}, t));
                }
            }
            if (kq == m_ && cj == rows_ - 1)
                for (int k = 1; k < kp; ++k)
                    visit(ci * m_ + k, J, index, cell_optimal_cost(c, {local_p(ci, k), c.height_extent()}, t));
            if (kp == m_ && ci == cols_ - 1)
                for (int k = 1; k < kq; ++k)
                    visit(I, cj * m_ + k, index, cell_optimal_cost(c, {c.width(), local_q(cj, k)}, t));
        });
    }

    // Local coordinates of lattice point (I, J) inside cell `index`.
    ParamPoint local(int index, int I, int J) const
    {
        const int ci = index / rows_;
        const int cj = index % rows_;
        return {local_p(ci, I - ci * m_), local_q(cj, J - cj * m_)};
    }

private:
    template <class F>
    void for_cells(int I, int J, F&& f) const
    {
        int ci_lo = I / m_, ci_hi = I / m_;
        if (I % m_ == 0) --ci_lo;
        int cj_lo = J / m_, cj_hi = J / m_;
        if (J % m_ == 0) --cj_lo;
        ci_lo = std::max(ci_lo, 0);
        ci_hi = std::min(ci_hi, cols_ - 1);
        cj_lo = std::max(cj_lo, 0);
        cj_hi = std::min(cj_hi, rows_ - 1);
        for (int ci = ci_lo; ci <= ci_hi; ++ci)
            for (int cj = cj_lo; cj <= cj_hi; ++cj) f(ci, cj);
    }

    const Trajectory& p_;
    const Trajectory& q_;
    int m_;
    int cols_;
    int rows_;
    int np_;
    int nq_;
    std::vector<Cell> cells_;
    std::int64_t horizontal_ = 0;
    std::int64_t vertical_per_column_ = 0;
    std::int64_t total_ = 0;
};

struct QueueEntry {
    double cost;
    int i;
    int j;

    // Min-heap on (cost, p, q).
    bool operator>(const QueueEntry& o) const
    {
        if (cost != o.cost) return cost > o.cost;
        if (i != o.i) return i > o.i;
        return j > o.j;
    }
};

using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

struct Label {
    double dist = kInf;
    int pred_i = -1;
    int pred_j = -1;
    int cell = -1;
    bool settled = false;
};

struct Meeting {
    double cost = kInf;
    int fi = -1, fj = -1;  // forward-side endpoint
    int bi = -1, bj = -1;  // backward-side endpoint
    int cell = -1;
};

struct SearchResult {
    Meeting meet;
    std::vector<Label> fwd;
    std::vector<Label> bwd;
};

SearchResult bidirectional_search(const SteinerGraph& g)
{
    SearchResult r;
    r.fwd.resize(static_cast<std::size_t>(g.size()));
    r.bwd.resize(static_cast<std::size_t>(g.size()));
    auto& fwd = r.fwd;
    auto& bwd = r.bwd;
    Meeting& meet = r.meet;

    MinQueue qf, qb;
    const int ti = g.target_i(), tj = g.target_j();
    fwd[static_cast<std::size_t>(g.id(0, 0))].dist = 0.0;
    bwd[static_cast<std::size_t>(g.id(ti, tj))].dist = 0.0;
    qf.push({0.0, 0, 0});
    qb.push({0.0, ti, tj});

    auto drop_stale = [](MinQueue& q, const std::vector<Label>& labels, const SteinerGraph& graph) {
        while (!q.empty()) {
            const QueueEntry& top = q.top();
            const Label& l = labels[static_cast<std::size_t>(graph.id(top.i, top.j))];
            if (l.settled || top.cost > l.dist) q.pop();
            else break;
        }
    };

    while (true) {
        drop_stale(qf, fwd, g);
        drop_stale(qb, bwd, g);
        if (qf.empty() || qb.empty()) break;
        if (qf.top().cost + qb.top().cost >= meet.cost) break;

        if (!(qf.top() > qb.top())) {
            const QueueEntry top = qf.top();
            qf.pop();
            Label& lu = fwd[static_cast<std::size_t>(g.id(top.i, top.j))];
            lu.settled = true;
            g.forward(top.i, top.j, [&](int i2, int j2, int cell, double w) {
                const std::size_t x = static_cast<std::size_t>(g.id(i2, j2));
                const double nd = lu.dist + w;
                if (nd < fwd[x].dist) {
                    fwd[x] = {nd, top.i, top.j, cell, false};
                    qf.push({nd, i2, j2});
                }
                if (bwd[x].dist < kInf) {
                    const double cand = lu.dist + w + bwd[x].dist;
                    if (cand < meet.cost) meet = {cand, top.i, top.j, i2, j2, cell};
                }
            });
        } else {
            const QueueEntry top = qb.top();
            qb.pop();
            Label& lu = bwd[static_cast<std::size_t>(g.id(top.i, top.j))];
            lu.settled = true;
            g.backward(top.i, top.j, [&](int i2, int j2, int cell, double w) {
                const std::size_t x = static_cast<std::size_t>(g.id(i2, j2));
                const double nd = lu.dist + w;
                if (nd < bwd[x].dist) {
                    bwd[x] = {nd, top.i, top.j, cell, false};
                    qb.push({nd, i2, j2});
                }
                if (fwd[x].dist < kInf) {
                    const double cand = fwd[x].dist + w + lu.dist;
                    if (cand < meet.cost) meet = {cand, i2, j2, top.i, top.j, cell};
                }
            });
        }
    }
    if (!(meet.cost < kInf)) throw std::logic_error("Steiner graph search found no path");
    return r;
}

}  // namespace

CdtwResult cdtw(const Trajectory& p, const Trajectory& q, Resolution res)
{
    const SteinerGraph g(p, q, res);
    const SearchResult r = bidirectional_search(g);

    struct Edge {
        int i0, j0, i1, j1, cell;
    };
    std::vector<Edge> edges;
    for (int i = r.meet.fi, j = r.meet.fj; !(i == 0 && j == 0);) {
        const Label& l = r.fwd[static_cast<std::size_t>(g.id(i, j))];
        edges.push_back({l.pred_i, l.pred_j, i, j, l.cell});
        i = edges.back().i0;
        j = edges.back().j0;
    }
    std::reverse(edges.begin(), edges.end());
    edges.push_back({r.meet.fi, r.meet.fj, r.meet.bi, r.meet.bj, r.meet.cell});
    for (int i = r.meet.bi, j = r.meet.bj; !(i == g.target_i() && j == g.target_j());) {
        const Label& l = r.bwd[static_cast<std::size_t>(g.id(i, j))];
        edges.push_back({i, j, l.pred_i, l.pred_j, l.cell});
        i = l.pred_i;
        j = l.pred_j;
    }

    CdtwResult out;
    out.cost = r.meet.cost;
    auto& pts = out.path.points;
    pts.push_back({0.0, 0.0});
    for (const Edge& e : edges) {
        const Cell& c = g.cell(e.cell);
        const ParamPoint a = g.global(e.i0, e.j0);
        const ParamPoint b = g.global(e.i1, e.j1);
        const LocalPath local = cell_optimal_corners(c, g.local(e.cell, e.i0, e.j0), g.local(e.cell, e.i1, e.j1));
        for (int k = 1; k + 1 < local.size; ++k) {
            ParamPoint x{c.origin().p + local.pts[k].p, c.origin().q + local.pts[k].q};
            x.p = std::min(std::max({x.p, a.p, pts.back().p}), b.p);
            x.q = std::min(std::max({x.q, a.q, pts.back().q}), b.q);
            if (!(x == pts.back())) pts.push_back(x);
        }
        if (!(b == pts.back())) pts.push_back(b);
    }
    pts.back() = {p.length(), q.length()};
    out.path.cost = out.cost;
    return out;
}

double cdtw_cost(const Trajectory& p, const Trajectory& q, Resolution res)
{
    const SteinerGraph g(p, q, res);
    return bidirectional_search(g).meet.cost;
}

double recompute_path_cost(const Trajectory& p, const Trajectory& q, const WarpingPath& path)
{
    double total = 0.0;
    for (std::size_t k = 1; k < path.points.size(); ++k) {
        const ParamPoint& u = path.points[k - 1];
        const ParamPoint& v = path.points[k];
        const std::size_t i = p.segment_at(0.5 * (u.p + v.p));
        const std::size_t j = q.segment_at(0.5 * (u.q + v.q));
        const double op = p.cum_lengths()[i];
        const double oq = q.cum_lengths()[j];
        const Cell c = Cell::from_segments(p.segment(i), q.segment(j), {op, oq});
        total += segment_cost(c, {u.p - op, u.q - oq}, {v.p - op, v.q - oq});
    }
    return total;
}

double cdtw_grid_oracle(const Trajectory& p, const Trajectory& q, int n)
{
    if (n < 2) throw std::invalid_argument("grid oracle needs n >= 2");
    const auto count = static_cast<std::size_t>(n) + 1;
    std::vector<Point> ps(count), qs(count);
    const double dp = p.length() / n;
    const double dq = q.length() / n;
    for (std::size_t k = 0; k < count; ++k) {
        ps[k] = p.point_at_clamped(static_cast<double>(k) * dp);
        qs[k] = q.point_at_clamped(static_cast<double>(k) * dq);
    }

    // row[j] holds the best cost to reach (i, j); h values are cached per row.
    std::vector<double> row(count), h_prev(count), h_cur(count);
    for (std::size_t j = 0; j < count; ++j) h_prev[j] = sq_dist(ps[0], qs[j]);
    row[0] = 0.0;
    for (std::size_t j = 1; j < count; ++j) row[j] = row[j - 1] + dq * 0.5 * (h_prev[j - 1] + h_prev[j]);

    for (std::size_t i = 1; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) h_cur[j] = sq_dist(ps[i], qs[j]);
        row[0] += dp * 0.5 * (h_prev[0] + h_cur[0]);
        for (std::size_t j = 1; j < count; ++j) {
            const double from_left = row[j] + dp * 0.5 * (h_prev[j] + h_cur[j]);
            const double from_below = row[j - 1] + dq * 0.5 * (h_cur[j - 1] + h_cur[j]);
            row[j] = std::min(from_left, from_below);
        }
        std::swap(h_prev, h_cur);
    }
    return row.back();
}

}  // namespace trajcluster
