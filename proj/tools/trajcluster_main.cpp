// trajcluster command-line front end.
//
// Exit codes: 0 success, 1 input error (bad flags, unreadable or malformed
// data), 2 internal invariant violation.

#include "trajcluster/cdtw.hpp"
#include "trajcluster/dataset.hpp"
#include "trajcluster/discrete.hpp"
#include "trajcluster/experiment.hpp"
#include "trajcluster/simplification.hpp"
#include "trajcluster/synthetic.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tc = trajcluster;

namespace {

constexpr int kInputError = 1;
constexpr int kInternalError = 2;

struct InputOptions {
    std::string kind = "cdtw";
    int resolution = tc::kDefaultResolution.level;
    bool latlon = false;
    std::optional<double> ref_lon;
};

void add_input_options(CLI::App& cmd, InputOptions& in)
{
    cmd.add_option("--kind", in.kind, "Distance: dtw, frechet or cdtw")->capture_default_str();
    cmd.add_option("--resolution", in.resolution, "CDTW resolution level (2^level intervals per cell edge)")
        ->capture_default_str()
        ->check(CLI::Range(0, tc::kMaxResolutionLevel));
    cmd.add_flag("--latlon", in.latlon, "Input files have lat,lon columns");
    cmd.add_option("--ref-lon", in.ref_lon, "Central meridian for the transverse Mercator projection");
}

tc::DistanceKind kind_of(const std::string& name)
{
    auto k = tc::parse_distance_kind(name);
    if (!k) throw std::invalid_argument("unknown distance kind '" + name + "'");
    return *k;
}

tc::Trajectory read_input(const std::string& file, const InputOptions& in)
{
    return tc::load_trajectory_csv(file, in.latlon ? tc::CoordinateMode::LatLon : tc::CoordinateMode::Planar,
                                   in.ref_lon);
}

std::ofstream open_file(const std::string& file)
{
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error(file + ": cannot open for writing");
    return out;
}

struct DatasetOptions {
    std::string manifest;
    std::string data_dir;
    std::string synthetic;
    std::uint64_t synthetic_seed = 1;
    std::size_t synthetic_classes = 20;
};

std::vector<tc::LabeledTrajectory> load(const DatasetOptions& d, const InputOptions& in)
{
    const int sources = !d.manifest.empty() + !d.data_dir.empty() + !d.synthetic.empty();
    if (sources != 1) throw std::invalid_argument("give exactly one of --manifest, --data, --synthetic");
    if (!d.manifest.empty()) return tc::load_dataset(tc::load_manifest(d.manifest));
    if (!d.data_dir.empty()) {
        tc::DatasetManifest m;
        m.path = d.data_dir;
        m.mode = in.latlon ? tc::CoordinateMode::LatLon : tc::CoordinateMode::Planar;
        m.ref_lon = in.ref_lon;
        return tc::load_dataset(m);
    }
    if (d.synthetic == "chars") {
        tc::synthetic::CharacterCorpusOptions o;
        o.classes = d.synthetic_classes;
        o.seed = d.synthetic_seed;
        return tc::synthetic::character_corpus(o);
    }
    if (d.synthetic == "planted") {
        tc::synthetic::PlantedOptions o;
        o.seed = d.synthetic_seed;
        return tc::synthetic::planted_groups(o);
    }
    throw std::invalid_argument("unknown synthetic corpus '" + d.synthetic + "' (chars or planted)");
}

struct RunOptions {
    DatasetOptions data;
    InputOptions input;
    std::size_t k = 2;
    std::size_t ell = 6;
    std::string init = "gonzalez_then_pam";
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::vector<std::string> methods;
    int max_iter = 20;
    bool fix_endpoints = false;
    std::string out;
    bool timings = false;
};

CLI::App* add_run_command(CLI::App& app, const std::string& name, const std::string& help, RunOptions& r,
                          bool with_methods)
{
    CLI::App* cmd = app.add_subcommand(name, help);
    add_input_options(*cmd, r.input);
    cmd->add_option("--manifest", r.data.manifest, "JSON dataset manifest");
    cmd->add_option("--data", r.data.data_dir, "Directory of per-trajectory CSV files");
    cmd->add_option("--synthetic", r.data.synthetic, "Built-in corpus: chars or planted");
    cmd->add_option("--synthetic-seed", r.data.synthetic_seed, "Seed for the built-in corpus")->capture_default_str();
    cmd->add_option("--synthetic-classes", r.data.synthetic_classes, "Classes in the chars corpus")
        ->capture_default_str();
    cmd->add_option("--k", r.k, "Number of clusters")->capture_default_str();
    cmd->add_option("--ell", r.ell, "Center complexity")->capture_default_str();
    cmd->add_option("--init", r.init, "gonzalez, pam or gonzalez_then_pam")->capture_default_str();
    cmd->add_option("--seeds,--seed", r.seeds, "Gonzalez seeds; the best run is kept")->delimiter(',');
    if (with_methods) {
        cmd->add_option("--methods", r.methods, "Improvement methods: dba, cdba, fsa, wedge")->delimiter(',');
        cmd->add_option("--max-iter", r.max_iter, "Iteration cap per method")->capture_default_str();
        cmd->add_flag("--fix-endpoints", r.fix_endpoints, "Keep wedge center endpoints fixed");
    }
    cmd->add_option("--out", r.out, "Output directory")->required();
    cmd->add_flag("--timings", r.timings, "Include wall-clock times in summary.json");
    return cmd;
}

void print_report(const tc::ExperimentReport& report)
{
    for (const auto& g : report.groups) {
        std::cout << (g.label.empty() ? std::string("(all)") : g.label) << ": initial phi1 "
                  << tc::format_number(g.initial.final_cost.medians);
        for (const auto& m : g.methods)
            std::cout << ", " << m.method << ' ' << tc::format_number(m.final_cost.medians) << " (" << m.iterations
                      << " it)";
        std::cout << '\n';
    }
}

int run(const RunOptions& r)
{
    tc::ExperimentConfig cfg;
    cfg.k = r.k;
    cfg.ell = r.ell;
    cfg.kind = kind_of(r.input.kind);
    const auto init = tc::parse_init_method(r.init);
    if (!init) throw std::invalid_argument("unknown init method '" + r.init + "'");
    cfg.init = *init;
    cfg.seeds = r.seeds;
    cfg.max_iter = r.max_iter;
    cfg.resolution_level = r.input.resolution;
    cfg.fix_endpoints = r.fix_endpoints;
    for (const auto& name : r.methods) {
        const auto m = tc::parse_improve_method(name);
        if (!m) throw std::invalid_argument("unknown improvement method '" + name + "'");
        cfg.improve_methods.push_back(*m);
    }
    const auto data = load(r.data, r.input);
    const auto report = tc::run_experiment(cfg, data);
    tc::export_results(report, r.out, {r.timings});
    print_report(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Trajectory clustering under continuous dynamic time warping"};
    app.require_subcommand(1);

    // dist
    InputOptions dist_in;
    std::string dist_a, dist_b, dist_path;
    auto* dist = app.add_subcommand("dist", "Distance between two trajectories");
    dist->add_option("a", dist_a, "First trajectory CSV")->required();
    dist->add_option("b", dist_b, "Second trajectory CSV")->required();
    dist->add_option("--path", dist_path, "Write the CDTW warping path (p,q) to this CSV");
    add_input_options(*dist, dist_in);

    // simplify
    InputOptions simp_in;
    simp_in.kind = "frechet";
    std::string simp_file, simp_out, simp_method = "greedy";
    std::size_t simp_ell = 12;
    auto* simp = app.add_subcommand("simplify", "Vertex-restricted simplification of one trajectory");
    simp->add_option("input", simp_file, "Trajectory CSV")->required();
    simp->add_option("--ell", simp_ell, "Maximum number of vertices")->capture_default_str();
    simp->add_option("--method", simp_method, "greedy, imai-iri or dp")->capture_default_str();
    simp->add_option("--out", simp_out, "Output CSV (default: stdout)");
    add_input_options(*simp, simp_in);

    // cluster / improve / experiment
    RunOptions cluster_opts, improve_opts, experiment_opts;
    improve_opts.methods = {"cdba"};
    experiment_opts.methods = {"dba", "cdba", "fsa", "wedge"};
    auto* cluster = add_run_command(app, "cluster", "Initial (k, ell)-medians clustering per label group",
                                    cluster_opts, false);
    auto* improve = add_run_command(app, "improve", "Clustering followed by center improvement", improve_opts, true);
    auto* experiment = add_run_command(app, "experiment", "Clustering and all four center improvement methods",
                                       experiment_opts, true);

    // oracle
    InputOptions oracle_in;
    std::string oracle_a, oracle_b;
    int oracle_n = 512;
    auto* oracle = app.add_subcommand("oracle", "Brute-force grid CDTW next to the Steiner-graph value");
    oracle->add_option("a", oracle_a, "First trajectory CSV")->required();
    oracle->add_option("b", oracle_b, "Second trajectory CSV")->required();
    oracle->add_option("--n", oracle_n, "Grid intervals per axis")->capture_default_str()->check(CLI::Range(1, 8192));
    add_input_options(*oracle, oracle_in);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*dist) {
            const auto a = read_input(dist_a, dist_in);
            const auto b = read_input(dist_b, dist_in);
            const auto kind = kind_of(dist_in.kind);
            if (!dist_path.empty() && kind != tc::DistanceKind::Cdtw)
                throw std::invalid_argument("--path is only available for --kind cdtw");
            if (kind == tc::DistanceKind::Cdtw) {
                const auto r = tc::cdtw(a, b, tc::Resolution{dist_in.resolution});
                std::cout << tc::format_number(r.cost) << '\n';
                if (!dist_path.empty()) {
                    auto out = open_file(dist_path);
                    out << "p,q\n";
                    for (const auto& pt : r.path.points)
                        out << tc::format_number(pt.p) << ',' << tc::format_number(pt.q) << '\n';
                }
            } else {
                std::cout << tc::format_number(tc::distance(a, b, kind)) << '\n';
            }
        } else if (*simp) {
            const auto t = read_input(simp_file, simp_in);
            tc::SimplifyMethod method;
            if (simp_method == "greedy") method = tc::SimplifyMethod::Greedy;
            else if (simp_method == "imai-iri") method = tc::SimplifyMethod::ImaiIri;
            else if (simp_method == "dp") method = tc::SimplifyMethod::ImaiIriDp;
            else throw std::invalid_argument("unknown simplification method '" + simp_method + "'");
            const auto s = tc::simplify(t, simp_ell, kind_of(simp_in.kind), method, tc::Resolution{simp_in.resolution});
            std::ofstream file;
            if (!simp_out.empty()) file = open_file(simp_out);
            std::ostream& out = simp_out.empty() ? std::cout : file;
            out << "x,y\n";
            for (const auto& p : s.result.vertices())
                out << tc::format_number(p.x) << ',' << tc::format_number(p.y) << '\n';
            std::cerr << "objective " << tc::format_number(s.objective) << ", " << s.result.size() << " vertices\n";
        } else if (*cluster) {
            return run(cluster_opts);
        } else if (*improve) {
            return run(improve_opts);
        } else if (*experiment) {
            return run(experiment_opts);
        } else if (*oracle) {
            const auto a = read_input(oracle_a, oracle_in);
            const auto b = read_input(oracle_b, oracle_in);
            std::cout << "oracle " << tc::format_number(tc::cdtw_grid_oracle(a, b, oracle_n)) << '\n'
                      << "cdtw " << tc::format_number(tc::cdtw_cost(a, b, tc::Resolution{oracle_in.resolution}))
                      << '\n';
        }
        return 0;
    } catch (const tc::DatasetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}
