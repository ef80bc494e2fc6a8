#pragma once

#include "trajcluster/center_improvement.hpp"
#include "trajcluster/clustering.hpp"
#include "trajcluster/dataset.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trajcluster {

enum class InitMethod { Gonzalez, Pam, GonzalezThenPam };

std::string_view to_string(InitMethod method);
std::optional<InitMethod> parse_init_method(std::string_view name);

struct ExperimentConfig {
    std::size_t k = 2;
    std::size_t ell = 6;
    DistanceKind kind = DistanceKind::Cdtw;
    InitMethod init = InitMethod::GonzalezThenPam;
    std::vector<ImproveMethod> improve_methods;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    int max_iter = 20;
    int resolution_level = kDefaultResolution.level;
    bool fix_endpoints = false;

    /// Throws std::invalid_argument when k < 1, ell < 2, seeds are empty or
    /// the resolution level is out of range.
    void validate() const;
};

struct MethodReport {
    std::string method;  // "initial" or an improve method name
    Clustering clustering;
    /// Distance the method's own trace is measured in.
    DistanceKind trace_kind = DistanceKind::Cdtw;
    std::vector<ClusterCost> trace;
    int iterations = 0;
    std::size_t accepted = 0;
    /// Final centers re-scored (nearest-center reassignment) under the
    /// experiment's distance kind, so methods are comparable.
    ClusterCost final_cost;
    double seconds = 0.0;
};

struct GroupReport {
    std::string label;
    std::vector<std::string> ids;
    MethodReport initial;
    std::vector<MethodReport> methods;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<GroupReport> groups;  // sorted by label
};

/// Clusters every label group separately: one initial clustering, then each
/// improve method run on its own copy of it. The dataset is not modified.
ExperimentReport run_experiment(const ExperimentConfig& config, std::span<const LabeledTrajectory> dataset);

struct ExportOptions {
    /// Wall-clock times make summary.json differ between runs, so they are
    /// only written on request.
    bool include_timings = false;
};

/// Writes centers_<method>.csv, assignment.csv (initial clustering),
/// assignment_<method>.csv, costs.csv and summary.json. With more than one
/// label group each group goes to its own subdirectory. Throws
/// std::runtime_error naming the file on I/O failure.
void export_results(const ExperimentReport& report, const std::filesystem::path& out_dir,
                    const ExportOptions& options = {});

/// Decimal text with 9 significant digits, as used in every export file.
std::string format_number(double value);

}  // namespace trajcluster
