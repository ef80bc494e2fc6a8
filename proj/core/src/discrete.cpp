#include "trajcluster/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trajcluster {

DtwResult dtw(const Trajectory& p, const Trajectory& q)
{
    const std::size_t n = p.size();
    const std::size_t m = q.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> acc(n * m, inf);
    auto at = [m, &acc](std::size_t i, std::size_t j) -> double& { return acc[i * m + j]; };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double d = sq_dist(p[i], q[j]);
            if (i == 0 && j == 0) {
                at(i, j) = d;
                continue;
            }
            double best = inf;
            if (i > 0 && j > 0) best = at(i - 1, j - 1);
            if (i > 0) best = std::min(best, at(i - 1, j));
            if (j > 0) best = std::min(best, at(i, j - 1));
            at(i, j) = best + d;
        }
    }

    DtwResult r;
    r.cost = at(n - 1, m - 1);
    auto& w = r.warping.pairs;
    std::size_t i = n - 1, j = m - 1;
    w.emplace_back(i, j);
    while (i > 0 || j > 0) {
        // Ties prefer the diagonal step, then a step back along P.
        if (i > 0 && j > 0) {
            const double diag = at(i - 1, j - 1);
            const double up = at(i - 1, j);
            const double left = at(i, j - 1);
            if (diag <= up && diag <= left) { --i; --j; }
            else if (up <= left) { --i; }
            else { --j; }
        } else if (i > 0) {
            --i;
        } else {
            --j;
        }
        w.emplace_back(i, j);
    }
    std::reverse(w.begin(), w.end());
    return r;
}

double dtw_cost(const Trajectory& p, const Trajectory& q) { return dtw(p, q).cost; }

namespace {

struct Interval {
    double lo = 1.0;
    double hi = 0.0;

    bool empty() const { return lo > hi; }
};

// Parameters t in [0, 1] with |a + t (b - a) - c|^2 <= eps2.
Interval free_interval(const Point& c, const Point& a, const Point& b, double eps2)
{
    const Point d = b - a;
    const Point f = a - c;
    const double dd = dot(d, d);
    const double df = dot(d, f);
    const double ff = dot(f, f);
    const double disc = df * df - dd * (ff - eps2);
    Interval out;
    if (disc < 0.0) {
        if (ff <= eps2) out.lo = out.hi = 0.0;
        else if (sq_dist(b, c) <= eps2) out.lo = out.hi = 1.0;
        return out;
    }
    const double root = std::sqrt(disc);
    out.lo = std::max(0.0, (-df - root) / dd);
    out.hi = std::min(1.0, (-df + root) / dd);
    // Endpoint membership decided by direct distance tests.
    if (ff <= eps2) out.lo = 0.0;
    if (sq_dist(b, c) <= eps2) out.hi = 1.0;
    return out;
}

// Free space and reachable sets of the Alt-Godau decision procedure.
// left_*[i][j]: vertical line at P vertex i, Q segment j.
// bottom_*[i][j]: horizontal line at Q vertex j, P segment i.
class FreeSpace {
public:
    FreeSpace(const Trajectory& p, const Trajectory& q, double eps)
        : p_(p), q_(q), n_(p.size()), m_(q.size()),
          left_free_(n_ * (m_ - 1)), bottom_free_((n_ - 1) * m_),
          left_reach_(n_ * (m_ - 1)), bottom_reach_((n_ - 1) * m_)
    {
        // A small relative slack absorbs rounding in exactly tangent configurations.
        const double eps2 = eps * eps * (1.0 + 1e-12);
        ends_free_ = sq_dist(p.front(), q.front()) <= eps2 && sq_dist(p.back(), q.back()) <= eps2;
        if (!ends_free_) return;

        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j + 1 < m_; ++j) left_free(i, j) = free_interval(p[i], q[j], q[j + 1], eps2);
        for (std::size_t i = 0; i + 1 < n_; ++i)
            for (std::size_t j = 0; j < m_; ++j) bottom_free(i, j) = free_interval(q[j], p[i], p[i + 1], eps2);

        bool open = true;
        for (std::size_t j = 0; j + 1 < m_; ++j) {
            const Interval f = left_free(0, j);
            open = open && !f.empty() && f.lo == 0.0;
            if (open) left_reach(0, j) = f;
            open = open && f.hi == 1.0;
        }
        open = true;
        for (std::size_t i = 0; i + 1 < n_; ++i) {
            const Interval f = bottom_free(i, 0);
            open = open && !f.empty() && f.lo == 0.0;
            if (open) bottom_reach(i, 0) = f;
            open = open && f.hi == 1.0;
        }

        for (std::size_t i = 0; i + 1 < n_; ++i) {
            for (std::size_t j = 0; j + 1 < m_; ++j) {
                const Interval lr = left_reach(i, j);
                const Interval br = bottom_reach(i, j);

                Interval right = left_free(i + 1, j);
                if (!br.empty()) {
                } else if (!lr.empty()) {
                    right.lo = std::max(right.lo, lr.lo);
                } else {
                    right = Interval{};
                }
                left_reach(i + 1, j) = right;

                Interval top = bottom_free(i, j + 1);
                if (!lr.empty()) {
                } else if (!br.empty()) {
                    top.lo = std::max(top.lo, br.lo);
                } else {
                    top = Interval{};
                }
                bottom_reach(i, j + 1) = top;
            }
        }
    }

    bool feasible() const
    {
        if (!ends_free_) return false;
        const Interval r = left_reach(n_ - 1, m_ - 2);
        const Interval t = bottom_reach(n_ - 2, m_ - 1);
        return (!r.empty() && r.hi == 1.0) || (!t.empty() && t.hi == 1.0);
    }

    // Backtracks a monotone path from the end corner, choosing in each cell
    // the dominated reachable entry point whose connection is closest to the
    // cell diagonal (equal fractions along both segments).
    std::vector<std::pair<double, double>> extract() const
    {
        const auto& cp = p_.cum_lengths();
        const auto& cq = q_.cum_lengths();
        std::vector<std::pair<double, double>> out;
        out.emplace_back(p_.length(), q_.length());

        std::size_t i = n_ - 2, j = m_ - 2;
        double x_p = 1.0, x_q = 1.0;

        while (true) {
            const Interval br = bottom_reach(i, j);
            const Interval lr = left_reach(i, j);
            const bool bottom_ok = !br.empty() && br.lo <= x_p;
            const bool left_ok = !lr.empty() && lr.lo <= x_q;
            bool use_bottom = bottom_ok;
            if (bottom_ok && left_ok) use_bottom = x_p >= x_q;
            if (!bottom_ok && !left_ok) throw std::logic_error("free-space backtracking left the reachable set");

            if (use_bottom) {
                const double s = std::clamp(x_p - x_q, br.lo, std::min(br.hi, x_p));
                out.emplace_back(cp[i] + s * p_.segment_length(i), cq[j]);
                if (j == 0) {
                    for (std::size_t k = i + 1; k-- > 0;) out.emplace_back(cp[k], 0.0);
                    break;
                }
                --j;
                x_p = s;
                x_q = 1.0;
            } else {
                const double r = std::clamp(x_q - x_p, lr.lo, std::min(lr.hi, x_q));
                out.emplace_back(cp[i], cq[j] + r * q_.segment_length(j));
                if (i == 0) {
                    for (std::size_t k = j + 1; k-- > 0;) out.emplace_back(0.0, cq[k]);
                    break;
                }
                --i;
                x_p = 1.0;
                x_q = r;
            }
        }
        std::reverse(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    Interval& left_free(std::size_t i, std::size_t j) { return left_free_[i * (m_ - 1) + j]; }
    Interval& bottom_free(std::size_t i, std::size_t j) { return bottom_free_[i * m_ + j]; }
    Interval& left_reach(std::size_t i, std::size_t j) { return left_reach_[i * (m_ - 1) + j]; }
    Interval& bottom_reach(std::size_t i, std::size_t j) { return bottom_reach_[i * m_ + j]; }
    const Interval& left_reach(std::size_t i, std::size_t j) const { return left_reach_[i * (m_ - 1) + j]; }
    const Interval& bottom_reach(std::size_t i, std::size_t j) const { return bottom_reach_[i * m_ + j]; }

    const Trajectory& p_;
    const Trajectory& q_;
    std::size_t n_;
    std::size_t m_;
    bool ends_free_ = false;
    std::vector<Interval> left_free_;
    std::vector<Interval> bottom_free_;
    std::vector<Interval> left_reach_;
    std::vector<Interval> bottom_reach_;
};

double max_vertex_distance(const Trajectory& p, const Trajectory& q)
{
    double best = 0.0;
    for (const Point& a : p.vertices())
        for (const Point& b : q.vertices()) best = std::max(best, sq_dist(a, b));
    return std::sqrt(best);
}

}  // namespace

bool frechet_decision(const Trajectory& p, const Trajectory& q, double eps)
{
    if (!(eps >= 0.0)) throw std::invalid_argument("Fréchet threshold must be non-negative");
    return FreeSpace(p, q, eps).feasible();
}

double frechet(const Trajectory& p, const Trajectory& q, double rel_tol)
{
    if (!(rel_tol > 0.0)) throw std::invalid_argument("relative tolerance must be positive");
    double lo = std::max(dist(p.front(), q.front()), dist(p.back(), q.back()));
    double hi = max_vertex_distance(p, q);
    if (frechet_decision(p, q, lo)) return lo;
    if (hi <= 1e-12) return hi;
    for (int it = 0; it < 60 && hi - lo > 0.5 * rel_tol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (frechet_decision(p, q, mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

FrechetMatching frechet_matching(const Trajectory& p, const Trajectory& q, double rel_tol)
{
    FrechetMatching m;
    m.threshold = frechet(p, q, rel_tol);
    const FreeSpace fs(p, q, m.threshold);
    if (!fs.feasible()) throw std::logic_error("Fréchet threshold is not feasible");
    m.pairs = fs.extract();
    return m;
}

}  // namespace trajcluster
