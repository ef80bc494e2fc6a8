#pragma once

#include "trajcluster/geometry.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trajcluster {

struct LabeledTrajectory {
    std::string id;
    std::string label;
    Trajectory trajectory;
};

enum class DatasetFormat {
    CsvDir,      // one CSV per trajectory, header x,y or lat,lon; label = parent directory
    LabeledCsv,  // one CSV with columns id,label,x,y (or id,label,lat,lon)
};

enum class CoordinateMode { Planar, LatLon };

struct DatasetManifest {
    DatasetFormat format = DatasetFormat::CsvDir;
    std::filesystem::path path;
    CoordinateMode mode = CoordinateMode::Planar;
    std::optional<double> ref_lon;
    std::optional<std::size_t> target_complexity;
};

/// Input problems, one line per offending file or row.
class DatasetError : public std::runtime_error {
public:
    explicit DatasetError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Reads a JSON manifest such as
///   {"format": "csv_dir", "path": "data", "coordinates": "latlon",
///    "ref_lon": 8.5, "target_complexity": 50}
/// A relative "path" is resolved against the manifest's directory.
DatasetManifest load_manifest(const std::filesystem::path& file);
DatasetManifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir = {});

/// Loads every trajectory, projecting lat/lon input and subsampling when the
/// manifest asks for it. csv_dir files are visited in sorted path order.
/// Throws DatasetError listing every bad file before returning anything.
std::vector<LabeledTrajectory> load_dataset(const DatasetManifest& manifest);

/// One trajectory from a CSV file with header x,y or lat,lon.
Trajectory load_trajectory_csv(const std::filesystem::path& file, CoordinateMode mode = CoordinateMode::Planar,
                               std::optional<double> ref_lon = std::nullopt);

/// target_n points at equal arc-length spacing, both endpoints included.
/// Short inputs are resampled up to target_n as well.
Trajectory subsample(const Trajectory& t, std::size_t target_n);

}  // namespace trajcluster
