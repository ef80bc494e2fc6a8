#include "trajcluster/experiment.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>

namespace trajcluster {

namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Value as it appears in the exported text, so JSON and CSV agree.
double rounded(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

std::size_t distinct_count(std::span<const Trajectory> ts)
{
    std::vector<const Trajectory*> seen;
    for (const auto& t : ts)
        if (std::none_of(seen.begin(), seen.end(), [&](const Trajectory* s) { return *s == t; })) seen.push_back(&t);
    return seen.size();
}

Clustering initial_clustering(const ExperimentConfig& config, CandidatePool& pool)
{
    switch (config.init) {
    case InitMethod::Gonzalez: return gonzalez_best_of(pool, config.k, config.seeds);
    case InitMethod::Pam: return pam(pool, config.k);
    case InitMethod::GonzalezThenPam:
        return pam_local_search(pool, gonzalez_best_of(pool, config.k, config.seeds).medoids);
    }
    throw std::invalid_argument("unknown init method");
}

GroupReport run_group(const ExperimentConfig& config, const std::string& label,
                      const std::vector<const LabeledTrajectory*>& items)
{
    GroupReport g;
    g.label = label;
    std::vector<Trajectory> trajs;
    for (const auto* it : items) {
        g.ids.push_back(it->id);
        trajs.push_back(it->trajectory);
    }
    if (distinct_count(trajs) < config.k)
        throw std::invalid_argument("group '" + label + "' has fewer distinct trajectories than k = " +
                                    std::to_string(config.k));

    const Resolution res{config.resolution_level};
    auto start = std::chrono::steady_clock::now();
    CandidatePool pool(trajs, config.ell, config.kind, res);
    g.initial.method = "initial";
    g.initial.clustering = initial_clustering(config, pool);
    g.initial.trace_kind = config.kind;
    g.initial.final_cost = cost(g.initial.clustering);
    g.initial.trace = {g.initial.final_cost};
    g.initial.seconds = seconds_since(start);

    for (ImproveMethod m : config.improve_methods) {
        start = std::chrono::steady_clock::now();
        ImproveOptions opts;
        opts.max_iter = config.max_iter;
        opts.res = res;
        opts.wedge.fix_endpoints = config.fix_endpoints;
        ImproveResult r = improve_loop(trajs, g.initial.clustering, m, opts);

        MethodReport mr;
        mr.method = std::string(to_string(m));
        mr.trace_kind = r.kind;
        mr.trace = std::move(r.trace);
        mr.iterations = r.iterations;
        mr.accepted = r.accepted;
        mr.clustering = r.kind == config.kind ? std::move(r.clustering)
                                              : assign(trajs, r.clustering.centers, config.kind, res);
        mr.final_cost = cost(mr.clustering);
        mr.seconds = seconds_since(start);
        g.methods.push_back(std::move(mr));
    }
    return g;
}

std::ofstream open_out(const fs::path& file)
{
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error(file.string() + ": cannot open for writing");
    return out;
}

void close_out(std::ofstream& out, const fs::path& file)
{
    out.close();
    if (!out) throw std::runtime_error(file.string() + ": write failed");
}

void write_centers(const fs::path& file, const Clustering& c)
{
    auto out = open_out(file);
    out << "cluster,seq,x,y\n";
    for (std::size_t k = 0; k < c.centers.size(); ++k)
        for (std::size_t s = 0; s < c.centers[k].size(); ++s)
            out << k << ',' << s << ',' << format_number(c.centers[k][s].x) << ','
                << format_number(c.centers[k][s].y) << '\n';
    close_out(out, file);
}

void write_assignment(const fs::path& file, const GroupReport& g, const Clustering& c)
{
    auto out = open_out(file);
    out << "id,cluster,distance\n";
    for (std::size_t t = 0; t < g.ids.size(); ++t)
        out << g.ids[t] << ',' << c.assignment[t] << ',' << format_number(c.distances[t]) << '\n';
    close_out(out, file);
}

nlohmann::ordered_json cost_json(const ClusterCost& c)
{
    return {{"phi1", rounded(c.medians)}, {"phi_inf", rounded(c.center)}};
}

nlohmann::ordered_json config_json(const ExperimentConfig& c)
{
    nlohmann::ordered_json methods = nlohmann::ordered_json::array();
    for (ImproveMethod m : c.improve_methods) methods.push_back(to_string(m));
    return {{"k", c.k},
            {"ell", c.ell},
            {"kind", to_string(c.kind)},
            {"init", to_string(c.init)},
            {"improve_methods", methods},
            {"seeds", c.seeds},
            {"max_iter", c.max_iter},
            {"resolution_level", c.resolution_level},
            {"fix_endpoints", c.fix_endpoints}};
}

void export_group(const GroupReport& g, const ExperimentConfig& config, const fs::path& dir,
                  const ExportOptions& options)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error(dir.string() + ": cannot create directory: " + ec.message());

    write_centers(dir / "centers_initial.csv", g.initial.clustering);
    write_assignment(dir / "assignment.csv", g, g.initial.clustering);
    for (const auto& m : g.methods) {
        write_centers(dir / ("centers_" + m.method + ".csv"), m.clustering);
        write_assignment(dir / ("assignment_" + m.method + ".csv"), g, m.clustering);
    }

    {
        const fs::path file = dir / "costs.csv";
        auto out = open_out(file);
        out << "method,kind,iteration,phi1,phi_inf\n";
        auto rows = [&](const MethodReport& m) {
            for (std::size_t i = 0; i < m.trace.size(); ++i)
                out << m.method << ',' << to_string(m.trace_kind) << ',' << i << ','
                    << format_number(m.trace[i].medians) << ',' << format_number(m.trace[i].center) << '\n';
        };
        rows(g.initial);
        for (const auto& m : g.methods) rows(m);
        close_out(out, file);
    }

    nlohmann::ordered_json methods = nlohmann::ordered_json::array();
    for (const auto& m : g.methods) {
        nlohmann::ordered_json j{{"method", m.method},
                                 {"trace_kind", to_string(m.trace_kind)},
                                 {"iterations", m.iterations},
                                 {"accepted", m.accepted},
                                 {"final", cost_json(m.final_cost)}};
        if (options.include_timings) j["seconds"] = m.seconds;
        methods.push_back(std::move(j));
    }
    nlohmann::ordered_json initial{{"medoids", g.initial.clustering.medoids},
                                   {"final", cost_json(g.initial.final_cost)}};
    if (options.include_timings) initial["seconds"] = g.initial.seconds;
    const nlohmann::ordered_json summary{{"config", config_json(config)},
                                         {"label", g.label},
                                         {"trajectories", g.ids.size()},
                                         {"initial", initial},
                                         {"methods", methods}};
    const fs::path file = dir / "summary.json";
    auto out = open_out(file);
    out << summary.dump(2) << '\n';
    close_out(out, file);
}

}  // namespace

std::string_view to_string(InitMethod method)
{
    switch (method) {
    case InitMethod::Gonzalez: return "gonzalez";
    case InitMethod::Pam: return "pam";
    case InitMethod::GonzalezThenPam: return "gonzalez_then_pam";
    }
    return "unknown";
}

std::optional<InitMethod> parse_init_method(std::string_view name)
{
    for (InitMethod m : {InitMethod::Gonzalez, InitMethod::Pam, InitMethod::GonzalezThenPam})
        if (name == to_string(m)) return m;
    return std::nullopt;
}

void ExperimentConfig::validate() const
{
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (ell < 2) throw std::invalid_argument("ell must be >= 2");
    if (seeds.empty()) throw std::invalid_argument("at least one seed is required");
    if (max_iter < 0) throw std::invalid_argument("max_iter must be >= 0");
    if (resolution_level < 0 || resolution_level > kMaxResolutionLevel)
        throw std::invalid_argument("resolution level must be in [0, " + std::to_string(kMaxResolutionLevel) + "]");
}

ExperimentReport run_experiment(const ExperimentConfig& config, std::span<const LabeledTrajectory> dataset)
{
    config.validate();
    if (dataset.empty()) throw std::invalid_argument("empty dataset");
    std::map<std::string, std::vector<const LabeledTrajectory*>> groups;
    for (const auto& item : dataset) groups[item.label].push_back(&item);

    ExperimentReport report;
    report.config = config;
    for (const auto& [label, items] : groups) report.groups.push_back(run_group(config, label, items));
    return report;
}

void export_results(const ExperimentReport& report, const fs::path& out_dir, const ExportOptions& options)
{
    for (const auto& g : report.groups) {
        fs::path dir = out_dir;
        if (report.groups.size() > 1) dir /= g.label.empty() ? std::string("_unlabeled") : g.label;
        export_group(g, report.config, dir, options);
    }
}

std::string format_number(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value == 0.0 ? 0.0 : value);
    return buf;
}

}  // namespace trajcluster
