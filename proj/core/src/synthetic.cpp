#include "trajcluster/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace trajcluster::synthetic {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Uniform Catmull-Rom spline through the control points (end points
// duplicated); t in [0, 1] spans the whole stroke.
Point catmull_rom(const std::vector<Point>& ctrl, double t)
{
    const std::size_t spans = ctrl.size() - 1;
    const double x = std::clamp(t, 0.0, 1.0) * static_cast<double>(spans);
    const std::size_t i = std::min(static_cast<std::size_t>(x), spans - 1);
    const double u = x - static_cast<double>(i);
    const Point& p1 = ctrl[i];
    const Point& p2 = ctrl[i + 1];
    const Point& p0 = i == 0 ? p1 : ctrl[i - 1];
    const Point& p3 = i + 2 < ctrl.size() ? ctrl[i + 2] : p2;
    const double u2 = u * u, u3 = u2 * u;
    return 0.5 * ((2.0 * p1) + (p2 - p0) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u2 +
                  (3.0 * p1 - p0 - 3.0 * p2 + p3) * u3);
}

std::string class_label(std::size_t c)
{
    std::string s = std::to_string(c);
    return "c" + std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s;
}

}  // namespace

std::vector<LabeledTrajectory> character_corpus(const CharacterCorpusOptions& options)
{
    if (options.complexity < 2) throw std::invalid_argument("character corpus complexity must be >= 2");
    Rng rng(options.seed);
    std::normal_distribution<double> noise(0.0, 0.04);
    std::vector<LabeledTrajectory> out;
    for (std::size_t c = 0; c < options.classes; ++c) {
        const std::size_t nctrl = 5 + rng() % 4;
        std::vector<Point> style_a;
        for (std::size_t i = 0; i < nctrl; ++i) style_a.push_back({uniform(rng, 0.0, 10.0), uniform(rng, 0.0, 10.0)});
        std::vector<Point> style_b = style_a;
        for (int moved = 0; moved < 2; ++moved) {
            Point& p = style_b[1 + rng() % (nctrl - 2)];
            p += Point{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
        }

        for (std::size_t m = 0; m < options.per_class; ++m) {
            std::vector<Point> ctrl = (rng() % 3 == 0) ? style_b : style_a;
            const double angle = uniform(rng, -0.1, 0.1);
            const double scale = uniform(rng, 0.92, 1.08);
            const Point shift{uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3)};
            for (Point& p : ctrl) {
                p += Point{uniform(rng, -0.25, 0.25), uniform(rng, -0.25, 0.25)};
                const Point r{std::cos(angle) * p.x - std::sin(angle) * p.y, std::sin(angle) * p.x + std::cos(angle) * p.y};
                p = r * scale + shift;
            }
            // Uneven pen speed: a monotone reparametrization of the stroke.
            const double wobble = uniform(rng, -0.12, 0.12);
            const double phase = uniform(rng, 1.0, 3.0);
            const std::size_t raw = 80 + rng() % 80;
            std::vector<Point> pts;
            pts.reserve(raw);
            for (std::size_t k = 0; k < raw; ++k) {
                const double s = static_cast<double>(k) / static_cast<double>(raw - 1);
                const double t = s + wobble * std::sin(phase * std::numbers::pi * s) * s * (1.0 - s);
                Point p = catmull_rom(ctrl, t);
                if (k > 0 && k + 1 < raw) p += Point{noise(rng), noise(rng)};
                pts.push_back(p);
            }
            out.push_back({class_label(c) + "/" + std::to_string(m), class_label(c),
                           subsample(Trajectory(std::move(pts)), options.complexity)});
        }
    }
    return out;
}

std::vector<LabeledTrajectory> planted_groups(const PlantedOptions& options)
{
    if (options.corners < 2) throw std::invalid_argument("planted groups need at least two corners");
    Rng rng(options.seed);
    std::vector<LabeledTrajectory> out;
    for (std::size_t g = 0; g < options.groups; ++g) {
        const double heading = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        std::vector<Point> corners{{static_cast<double>(g) * options.separation, 0.0}};
        for (std::size_t k = 1; k < options.corners; ++k) {
            const double turn = (k % 2 == 0 ? 1.0 : -1.0) * uniform(rng, 0.2, 0.3) * std::numbers::pi;
            const double dir = heading + turn;
            corners.push_back(corners.back() + 10.0 * Point{std::cos(dir), std::sin(dir)});
        }
        for (std::size_t m = 0; m < options.per_group; ++m) {
            std::vector<Point> own = corners;
            for (Point& c : own) c += Point{uniform(rng, -options.spread, options.spread),
                                            uniform(rng, -options.spread, options.spread)};
            std::vector<Point> pts{own[0]};
            for (std::size_t k = 0; k + 1 < options.corners; ++k) {
                const Point a = own[k], b = own[k + 1];
                const Point dir = (b - a) * (1.0 / dist(a, b));
                const Point normal{-dir.y, dir.x};
                for (std::size_t e = 0; e < options.extra_per_segment; ++e) {
                    const double t = 0.3 + 0.4 * (static_cast<double>(e) + uniform(rng, 0.0, 1.0)) /
                                               static_cast<double>(options.extra_per_segment);
                    pts.push_back(a + (b - a) * t + normal * uniform(rng, -options.spread, options.spread));
                }
                pts.push_back(b);
            }
            out.push_back({"g" + std::to_string(g) + "/" + std::to_string(m), "g" + std::to_string(g),
                           Trajectory(std::move(pts))});
        }
    }
    return out;
}

std::vector<Trajectory> random_walks(std::size_t count, std::size_t complexity, std::uint64_t seed, double step)
{
    if (complexity < 2) throw std::invalid_argument("random walks need complexity >= 2");
    Rng rng(seed);
    std::vector<Trajectory> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Point> pts{{uniform(rng, 0.0, 10.0), uniform(rng, 0.0, 10.0)}};
        for (std::size_t k = 1; k < complexity; ++k) {
            const double dir = uniform(rng, 0.0, 2.0 * std::numbers::pi);
            const double len = step * uniform(rng, 0.5, 1.5);
            pts.push_back(pts.back() + len * Point{std::cos(dir), std::sin(dir)});
        }
        out.emplace_back(std::move(pts));
    }
    return out;
}

std::vector<Trajectory> trajectories_of(const std::vector<LabeledTrajectory>& items)
{
    std::vector<Trajectory> out;
    out.reserve(items.size());
    for (const auto& it : items) out.push_back(it.trajectory);
    return out;
}

}  // namespace trajcluster::synthetic
