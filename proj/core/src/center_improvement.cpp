#include "trajcluster/center_improvement.hpp"

#include "trajcluster/discrete.hpp"
#include "trajcluster/mec.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace trajcluster {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Point> mean_or_keep(const Trajectory& center, const std::vector<std::vector<Point>>& buckets)
{
    std::vector<Point> out(center.vertices());
    for (std::size_t i = 0; i < buckets.size(); ++i) {
        if (buckets[i].empty()) continue;
        Point sum{0.0, 0.0};
        for (const Point& p : buckets[i]) sum += p;
        out[i] = sum * (1.0 / static_cast<double>(buckets[i].size()));
    }
    return out;
}

void collect_samples(const Trajectory& center, const Trajectory& member, std::span<const ParamPoint> path,
                     std::vector<std::vector<Point>>& buckets)
{
    const auto& cum = center.cum_lengths();
    for (std::size_t i = 0; i < center.size(); ++i) {
        const auto [lo, hi] = matched_range(path, cum[i]);
        auto pts = sample_range(member, lo, hi);
        buckets[i].insert(buckets[i].end(), pts.begin(), pts.end());
    }
}

}  // namespace

std::string_view to_string(ImproveMethod method)
{
    switch (method) {
    case ImproveMethod::Dba: return "dba";
    case ImproveMethod::Cdba: return "cdba";
    case ImproveMethod::Fsa: return "fsa";
    case ImproveMethod::Wedge: return "wedge";
    }
    return "unknown";
}

std::optional<ImproveMethod> parse_improve_method(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (ImproveMethod m : {ImproveMethod::Dba, ImproveMethod::Cdba, ImproveMethod::Fsa, ImproveMethod::Wedge})
        if (lower == to_string(m)) return m;
    return std::nullopt;
}

DistanceKind natural_kind(ImproveMethod method)
{
    switch (method) {
    case ImproveMethod::Dba: return DistanceKind::Dtw;
    case ImproveMethod::Fsa: return DistanceKind::Frechet;
    case ImproveMethod::Cdba:
    case ImproveMethod::Wedge: return DistanceKind::Cdtw;
    }
    return DistanceKind::Cdtw;
}

std::pair<double, double> matched_range(std::span<const ParamPoint> path, double s, bool along_p)
{
    if (path.empty()) throw std::invalid_argument("matched_range on an empty path");
    auto axis = [&](const ParamPoint& x) { return along_p ? x.p : x.q; };
    auto other = [&](const ParamPoint& x) { return along_p ? x.q : x.p; };
    s = std::clamp(s, axis(path.front()), axis(path.back()));

    double lo = kInf, hi = -kInf;
    auto take = [&](double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    if (path.size() == 1) take(other(path[0]));
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const double a = axis(path[k]), b = axis(path[k + 1]);
        if (s < a || s > b) continue;
        if (a == b) {
            take(other(path[k]));
            take(other(path[k + 1]));
        } else {
            const double f = (s - a) / (b - a);
            take(other(path[k]) + f * (other(path[k + 1]) - other(path[k])));
        }
    }
    return {lo, hi};
}

std::vector<Point> sample_range(const Trajectory& t, double lo, double hi)
{
    const double len = std::max(0.0, hi - lo);
    const double budget = static_cast<double>(t.size()) * len / t.length();
    const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(budget - 1e-9)));
    if (count == 1) return {t.point_at_clamped(0.5 * (lo + hi))};
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(t.point_at_clamped(lo + len * static_cast<double>(k) / static_cast<double>(count - 1)));
    return out;
}

std::vector<Point> dba_update(const Trajectory& center, Members cluster)
{
    std::vector<std::vector<Point>> buckets(center.size());
    for (const Trajectory* member : cluster)
        for (auto [i, j] : dtw(center, *member).warping.pairs) buckets[i].push_back((*member)[j]);
    return mean_or_keep(center, buckets);
}

std::vector<Point> cdba_update(const Trajectory& center, Members cluster, Resolution res)
{
    std::vector<std::vector<Point>> buckets(center.size());
    for (const Trajectory* member : cluster)
        collect_samples(center, *member, cdtw(center, *member, res).path.points, buckets);
    return mean_or_keep(center, buckets);
}

std::vector<Point> fsa_update(const Trajectory& center, Members cluster)
{
    std::vector<std::vector<Point>> buckets(center.size());
    std::vector<ParamPoint> path;
    for (const Trajectory* member : cluster) {
        path.clear();
        for (auto [s, t] : frechet_matching(center, *member).pairs) path.push_back({s, t});
        collect_samples(center, *member, path, buckets);
    }
    std::vector<Point> out(center.vertices());
    for (std::size_t i = 0; i < buckets.size(); ++i)
        if (!buckets[i].empty()) out[i] = minimum_enclosing_circle(buckets[i]).center;
    return out;
}

std::vector<Point> wedge_update(const Trajectory& center, Members cluster, WedgeOptions options, Resolution res)
{
    struct Weighted {
        Point p;
        double w;
    };
    const std::size_t nv = center.size();
    // by_segment[k]: member vertices aligned into center segment k.
    std::vector<std::vector<Weighted>> by_segment(nv - 1);
    for (const Trajectory* member : cluster) {
        const auto path = cdtw(center, *member, res).path.points;
        const auto& cum = member->cum_lengths();
        for (std::size_t j = 0; j < member->size(); ++j) {
            const auto [lo, hi] = matched_range(path, cum[j], false);
            const std::size_t k = center.segment_at(0.5 * (lo + hi));
            double w = 0.0;
            if (j > 0) w += member->segment_length(j - 1);
            if (j + 1 < member->size()) w += member->segment_length(j);
            by_segment[k].push_back({(*member)[j], w});
        }
    }

    std::vector<Point> c(center.vertices());
    for (std::size_t i = 0; i < nv; ++i) {
        const bool endpoint = i == 0 || i + 1 == nv;
        if (endpoint && options.fix_endpoints) continue;
        auto objective = [&](const Point& x) {
            double total = 0.0;
            if (i > 0)
                for (const auto& [p, w] : by_segment[i - 1]) {
                    const double d = point_segment_dist(p, {c[i - 1], x});
                    total += w * d * d;
                }
            if (i + 1 < nv)
                for (const auto& [p, w] : by_segment[i]) {
                    const double d = point_segment_dist(p, {x, c[i + 1]});
                    total += w * d * d;
                }
            return total;
        };
        double h = 0.0;
        if (i > 0) h += dist(c[i - 1], c[i]);
        if (i + 1 < nv) h += dist(c[i], c[i + 1]);
        h *= (endpoint ? 1.0 : 0.5) * options.step_fraction;
        if (!(h > 0.0)) continue;

        Point best = c[i];
        double best_f = objective(best);
        static constexpr std::array<double, 5> kSteps{-1.0, -0.5, 0.0, 0.5, 1.0};
        for (int round = 0; round < options.rounds; ++round, h *= 0.5) {
            const Point base = best;
            for (double sx : kSteps)
                for (double sy : kSteps) {
                    const Point cand{base.x + sx * h, base.y + sy * h};
                    const double f = objective(cand);
                    if (f < best_f) {
                        best_f = f;
                        best = cand;
                    }
                }
        }
        c[i] = best;
    }
    return c;
}

ImproveResult improve_loop(std::span<const Trajectory> trajectories, const Clustering& initial, ImproveMethod method,
                           const ImproveOptions& options)
{
    const std::size_t n = trajectories.size();
    const std::size_t k = initial.centers.size();
    if (k == 0) throw std::invalid_argument("improve_loop needs at least one center");
    if (initial.assignment.size() != n) throw std::invalid_argument("assignment size does not match the input");
    for (std::size_t a : initial.assignment)
        if (a >= k) throw std::invalid_argument("assignment refers to a missing center");
    if (options.max_iter < 0) throw std::invalid_argument("max_iter must be non-negative");

    ImproveResult out;
    out.kind = options.kind.value_or(natural_kind(method));
    const Resolution res = options.res;
    auto d = [&](std::size_t t, const Trajectory& center) { return distance(trajectories[t], center, out.kind, res); };

    std::vector<Trajectory> centers = initial.centers;
    std::vector<std::size_t> assignment = initial.assignment;
    // dist[c][t]: distance of trajectory t to center c under out.kind.
    std::vector<std::vector<double>> dist_to(k, std::vector<double>(n));
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t t = 0; t < n; ++t) dist_to[c][t] = d(t, centers[c]);

    auto snapshot = [&] {
        Clustering cl;
        cl.centers = centers;
        cl.assignment = assignment;
        cl.distances.resize(n);
        for (std::size_t t = 0; t < n; ++t) cl.distances[t] = dist_to[assignment[t]][t];
        return cl;
    };
    out.trace.push_back(cost(snapshot()));

    for (int iter = 1; iter <= options.max_iter; ++iter) {
        out.iterations = iter;
        std::size_t accepted = 0;
        for (std::size_t c = 0; c < k; ++c) {
            std::vector<const Trajectory*> members;
            std::vector<std::size_t> ids;
            for (std::size_t t = 0; t < n; ++t)
                if (assignment[t] == c) {
                    members.push_back(&trajectories[t]);
                    ids.push_back(t);
                }
            if (members.empty()) continue;

            std::vector<Point> pts;
            switch (method) {
            case ImproveMethod::Dba: pts = dba_update(centers[c], members); break;
            case ImproveMethod::Cdba: pts = cdba_update(centers[c], members, res); break;
            case ImproveMethod::Fsa: pts = fsa_update(centers[c], members); break;
            case ImproveMethod::Wedge:
                pts = wedge_update(centers[c], members, options.wedge, res);
                break;
            }
            std::optional<Trajectory> cand;
            try {
                cand.emplace(std::move(pts));
            } catch (const GeometryError&) {
                continue;
            }
            if (*cand == centers[c]) continue;

            double old_sum = 0.0, new_sum = 0.0;
            std::vector<double> fresh(n, kInf);
            for (std::size_t t : ids) {
                old_sum += dist_to[c][t];
                fresh[t] = d(t, *cand);
                new_sum += fresh[t];
            }
            if (!(new_sum < old_sum)) continue;

            ++accepted;
            centers[c] = std::move(*cand);
            for (std::size_t t = 0; t < n; ++t)
                dist_to[c][t] = assignment[t] == c ? fresh[t] : d(t, centers[c]);
        }
        if (accepted == 0) break;
        out.accepted += accepted;

        for (std::size_t t = 0; t < n; ++t) {
            std::size_t best = assignment[t];
            for (std::size_t c = 0; c < k; ++c)
                if (dist_to[c][t] < dist_to[best][t] || (dist_to[c][t] == dist_to[best][t] && c < best)) best = c;
            assignment[t] = best;
        }
        out.trace.push_back(cost(snapshot()));
    }
    out.clustering = snapshot();
    return out;
}

}  // namespace trajcluster
