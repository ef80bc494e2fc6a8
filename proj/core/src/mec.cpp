#include "trajcluster/mec.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace trajcluster {

Circle circle_from(const Point& a, const Point& b) { return {(a + b) * 0.5, 0.5 * dist(a, b)}; }

Circle circle_from(const Point& a, const Point& b, const Point& c)
{
    const Point ab = b - a;
    const Point ac = c - a;
    const double d = 2.0 * (ab.x * ac.y - ab.y * ac.x);
    const double scale = std::max({sq_dist(a, b), sq_dist(a, c), sq_dist(b, c)});
    if (std::abs(d) <= 1e-14 * scale) {
        Circle best = circle_from(a, b);
        for (const Circle& cand : {circle_from(a, c), circle_from(b, c)})
            if (cand.radius > best.radius) best = cand;
        return best;
    }
    const double ab2 = dot(ab, ab);
    const double ac2 = dot(ac, ac);
    const Point off{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    const Point center = a + off;
    return {center, std::max({dist(center, a), dist(center, b), dist(center, c)})};
}

Circle minimum_enclosing_circle(std::span<const Point> points, std::uint64_t seed)
{
    if (points.empty()) throw std::invalid_argument("minimum enclosing circle of an empty point set");
    std::vector<Point> pts(points.begin(), points.end());
    std::mt19937_64 rng(seed);
    std::shuffle(pts.begin(), pts.end(), rng);

    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (c.contains(pts[i])) continue;
        c = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (c.contains(pts[j])) continue;
            c = circle_from(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k)
                if (!c.contains(pts[k])) c = circle_from(pts[i], pts[j], pts[k]);
        }
    }
    return c;
}

}  // namespace trajcluster
