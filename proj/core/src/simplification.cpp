#include "trajcluster/simplification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace trajcluster {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_ell(std::size_t ell)
{
    if (ell < 2) throw std::invalid_argument("simplification needs ell >= 2, got " + std::to_string(ell));
}

Trajectory subtrajectory(const Trajectory& t, std::size_t i, std::size_t j)
{
    return Trajectory(std::vector<Point>(t.vertices().begin() + static_cast<std::ptrdiff_t>(i),
                                         t.vertices().begin() + static_cast<std::ptrdiff_t>(j) + 1));
}

// Minimum number of vertices of a shortcut path 0 -> n-1 using shortcuts with
// error <= threshold; fills `path` (lowest predecessor index on ties).
std::size_t min_link(ShortcutTable& table, std::size_t n, double threshold, std::vector<std::size_t>& path)
{
    constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> count(n, unreachable), pred(n, 0);
    count[0] = 1;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (count[i] == unreachable || count[i] + 1 >= count[j]) continue;
            if (table(i, j) <= threshold) {
                count[j] = count[i] + 1;
                pred[j] = i;
            }
        }
    }
    path.clear();
    if (count[n - 1] == unreachable) return unreachable;
    for (std::size_t k = n - 1;; k = pred[k]) {
        path.push_back(k);
        if (k == 0) break;
    }
    std::reverse(path.begin(), path.end());
    return count[n - 1];
}

}  // namespace

double shortcut_error(const Trajectory& t, std::size_t i, std::size_t j, DistanceKind kind, Resolution res)
{
    if (!(i < j) || j >= t.size()) throw std::out_of_range("shortcut indices must satisfy i < j < n");
    if (j == i + 1) return 0.0;
    // Consecutive simplified vertices must be distinct.
    if (t[i] == t[j]) return kInf;
    const Trajectory shortcut({t[i], t[j]});
    return distance(shortcut, subtrajectory(t, i, j), kind, res);
}

ShortcutTable::ShortcutTable(const Trajectory& t, DistanceKind kind, Resolution res)
    : t_(t), kind_(kind), res_(res), cache_(t.size() * t.size(), std::numeric_limits<double>::quiet_NaN())
{
}

double ShortcutTable::operator()(std::size_t i, std::size_t j)
{
    double& slot = cache_[i * t_.size() + j];
    if (std::isnan(slot)) slot = shortcut_error(t_, i, j, kind_, res_);
    return slot;
}

std::vector<std::size_t> greedy_scan(ShortcutTable& table, double threshold)
{
    const std::size_t n = table.trajectory().size();
    std::vector<std::size_t> out{0};
    std::size_t i = 0;
    while (i + 1 < n) {
        std::size_t j = i + 1;
        while (j + 1 < n && table(i, j + 1) <= threshold) ++j;
        out.push_back(j);
        i = j;
    }
    return out;
}

Simplification make_simplification(const Trajectory& t, std::vector<std::size_t> indices, double objective)
{
    std::vector<Point> pts;
    pts.reserve(indices.size());
    for (std::size_t k : indices) pts.push_back(t[k]);
    return {Trajectory(std::move(pts)), std::move(indices), objective};
}

Simplification greedy_simplify(const Trajectory& t, std::size_t ell, DistanceKind kind, Resolution res)
{
    check_ell(ell);
    const std::size_t n = t.size();
    if (ell >= n) {
        std::vector<std::size_t> all(n);
        for (std::size_t k = 0; k < n; ++k) all[k] = k;
        return make_simplification(t, std::move(all));
    }

    ShortcutTable table(t, kind, res);
    auto fits = [&](double threshold) { return greedy_scan(table, threshold).size() <= ell; };
    if (fits(0.0)) return make_simplification(t, greedy_scan(table, 0.0), 0.0);

    double base = kInf;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        const double e = table(i, i + 2);
        if (e > 0.0 && e < base) base = e;
    }
    if (!std::isfinite(base)) base = 1.0;

    double lo = 0.0;
    double hi = base;
    int doublings = 0;
    while (!fits(hi)) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 2000 || !std::isfinite(hi))
            throw std::invalid_argument("no greedy simplification with at most " + std::to_string(ell) + " vertices");
    }
    for (int step = 0; step < 50; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (fits(mid)) hi = mid;
        else lo = mid;
    }
    return make_simplification(t, greedy_scan(table, hi), hi);
}

Simplification imai_iri_threshold(const Trajectory& t, std::size_t ell, DistanceKind kind, Resolution res)
{
    check_ell(ell);
    const std::size_t n = t.size();
    ShortcutTable table(t, kind, res);
    std::vector<double> values;
    values.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (const double e = table(i, j); std::isfinite(e)) values.push_back(e);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<std::size_t> path;
    if (min_link(table, n, values.back(), path) > ell)
        throw std::invalid_argument("no shortcut path with at most " + std::to_string(ell) + " vertices");

    // Smallest admissible threshold; min-link count is monotone in it.
    std::size_t lo = 0, hi = values.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (min_link(table, n, values[mid], path) <= ell) hi = mid;
        else lo = mid + 1;
    }
    min_link(table, n, values[hi], path);
    return make_simplification(t, path, values[hi]);
}

Simplification imai_iri_dp(const Trajectory& t, std::size_t ell, DistanceKind kind, Resolution res)
{
    check_ell(ell);
    const std::size_t n = t.size();
    const std::size_t kmax = std::min(ell, n);
    ShortcutTable table(t, kind, res);

    // cost[k][j]: best summed error reaching vertex j with k + 1 vertices.
    std::vector<std::vector<double>> cost(kmax, std::vector<double>(n, kInf));
    std::vector<std::vector<std::size_t>> pred(kmax, std::vector<std::size_t>(n, 0));
    cost[0][0] = 0.0;
    for (std::size_t k = 1; k < kmax; ++k) {
        for (std::size_t j = k; j < n; ++j) {
            for (std::size_t i = k - 1; i < j; ++i) {
                if (!std::isfinite(cost[k - 1][i])) continue;
                const double c = cost[k - 1][i] + table(i, j);
                if (c < cost[k][j]) {
                    cost[k][j] = c;
                    pred[k][j] = i;
                }
            }
        }
    }

    std::size_t best_k = 0;
    for (std::size_t k = 1; k < kmax; ++k)
        if (cost[k][n - 1] < cost[best_k][n - 1]) best_k = k;
    if (!std::isfinite(cost[best_k][n - 1]))
        throw std::invalid_argument("no shortcut path with at most " + std::to_string(ell) + " vertices");

    std::vector<std::size_t> path;
    for (std::size_t k = best_k, j = n - 1;; --k) {
        path.push_back(j);
        if (k == 0) break;
        j = pred[k][j];
    }
    std::reverse(path.begin(), path.end());
    return make_simplification(t, std::move(path), cost[best_k][n - 1]);
}

Simplification simplify(const Trajectory& t, std::size_t ell, DistanceKind kind, SimplifyMethod method, Resolution res)
{
    switch (method) {
    case SimplifyMethod::Greedy: return greedy_simplify(t, ell, kind, res);
    case SimplifyMethod::ImaiIri: return imai_iri_threshold(t, ell, kind, res);
    case SimplifyMethod::ImaiIriDp: return imai_iri_dp(t, ell, kind, res);
    }
    throw std::invalid_argument("unknown simplification method");
}

}  // namespace trajcluster
