#include "trajcluster/dataset.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace trajcluster {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool parse_double(const std::string& s, double& out)
{
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::string where(const fs::path& file, std::size_t line) { return file.string() + ":" + std::to_string(line) + ": "; }

struct Columns {
    std::map<std::string, std::size_t> index;

    std::optional<std::size_t> find(const std::string& name) const
    {
        const auto it = index.find(name);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

// Reads a CSV into a header map and rows; blank lines are skipped.
struct CsvTable {
    Columns columns;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;  // (line number, cells)
};

CsvTable read_csv(const fs::path& file)
{
    std::ifstream in(file);
    if (!in) throw DatasetError({file.string() + ": cannot open file"});
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cells = split(line);
        if (!have_header) {
            for (std::size_t c = 0; c < cells.size(); ++c) table.columns.index.emplace(lower(cells[c]), c);
            have_header = true;
            continue;
        }
        table.rows.emplace_back(lineno, std::move(cells));
    }
    if (!have_header) throw DatasetError({file.string() + ": empty file"});
    return table;
}

struct CoordinateColumns {
    std::size_t first;
    std::size_t second;
};

CoordinateColumns coordinate_columns(const Columns& cols, CoordinateMode mode, const fs::path& file)
{
    const char* a = mode == CoordinateMode::Planar ? "x" : "lat";
    const char* b = mode == CoordinateMode::Planar ? "y" : "lon";
    const auto ia = cols.find(a), ib = cols.find(b);
    if (!ia || !ib)
        throw DatasetError({file.string() + ": header must contain columns " + a + "," + b});
    return {*ia, *ib};
}

Point row_point(const std::vector<std::string>& cells, CoordinateColumns cc, CoordinateMode mode,
                std::optional<double> ref_lon, const fs::path& file, std::size_t lineno)
{
    double u = 0.0, v = 0.0;
    if (std::max(cc.first, cc.second) >= cells.size() || !parse_double(cells[cc.first], u) ||
        !parse_double(cells[cc.second], v))
        throw DatasetError({where(file, lineno) + "malformed row"});
    if (mode == CoordinateMode::Planar) return {u, v};
    try {
        return project_transverse_mercator(u, v, *ref_lon);
    } catch (const std::exception& e) {
        throw DatasetError({where(file, lineno) + e.what()});
    }
}

Trajectory build(std::vector<Point> pts, const fs::path& file, const std::string& what)
{
    try {
        return Trajectory(std::move(pts));
    } catch (const GeometryError& e) {
        throw DatasetError({file.string() + ": " + what + e.what()});
    }
}

void check_mode(const DatasetManifest& m)
{
    if (m.mode == CoordinateMode::LatLon && !m.ref_lon)
        throw DatasetError({"manifest: latlon coordinates need ref_lon"});
}

std::string join_problems(const std::vector<std::string>& problems)
{
    std::ostringstream os;
    os << problems.size() << " dataset problem(s)";
    for (const auto& p : problems) os << "\n  " << p;
    return os.str();
}

std::vector<LabeledTrajectory> load_csv_dir(const DatasetManifest& m)
{
    if (!fs::is_directory(m.path)) throw DatasetError({m.path.string() + ": not a directory"});
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(m.path))
        if (entry.is_regular_file() && lower(entry.path().extension().string()) == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DatasetError({m.path.string() + ": no .csv files"});

    std::vector<LabeledTrajectory> out;
    std::vector<std::string> problems;
    for (const auto& file : files) {
        try {
            const fs::path rel = fs::relative(file, m.path);
            out.push_back({(rel.parent_path() / rel.stem()).generic_string(), rel.parent_path().generic_string(),
                           load_trajectory_csv(file, m.mode, m.ref_lon)});
        } catch (const DatasetError& e) {
            problems.insert(problems.end(), e.problems().begin(), e.problems().end());
        }
    }
    if (!problems.empty()) throw DatasetError(std::move(problems));
    return out;
}

std::vector<LabeledTrajectory> load_labeled_csv(const DatasetManifest& m)
{
    const CsvTable table = read_csv(m.path);
    const auto id_col = table.columns.find("id");
    const auto label_col = table.columns.find("label");
    if (!id_col || !label_col) throw DatasetError({m.path.string() + ": header must contain columns id,label"});
    const CoordinateColumns cc = coordinate_columns(table.columns, m.mode, m.path);

    struct Group {
        std::string label;
        std::vector<Point> pts;
    };
    std::vector<std::string> order;
    std::map<std::string, Group> groups;
    std::vector<std::string> problems;
    for (const auto& [lineno, cells] : table.rows) {
        if (std::max(*id_col, *label_col) >= cells.size() || cells[*id_col].empty()) {
            problems.push_back(where(m.path, lineno) + "malformed row");
            continue;
        }
        const std::string& id = cells[*id_col];
        auto [it, inserted] = groups.try_emplace(id, Group{cells[*label_col], {}});
        if (inserted) order.push_back(id);
        if (it->second.label != cells[*label_col]) {
            problems.push_back(where(m.path, lineno) + "trajectory '" + id + "' changes label");
            continue;
        }
        try {
            it->second.pts.push_back(row_point(cells, cc, m.mode, m.ref_lon, m.path, lineno));
        } catch (const DatasetError& e) {
            problems.insert(problems.end(), e.problems().begin(), e.problems().end());
        }
    }

    std::vector<LabeledTrajectory> out;
    for (const auto& id : order) {
        auto& g = groups.at(id);
        try {
            out.push_back({id, g.label, build(std::move(g.pts), m.path, "trajectory '" + id + "': ")});
        } catch (const DatasetError& e) {
            problems.insert(problems.end(), e.problems().begin(), e.problems().end());
        }
    }
    if (!problems.empty()) throw DatasetError(std::move(problems));
    return out;
}

}  // namespace

DatasetError::DatasetError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems))
{
}

DatasetManifest parse_manifest(const std::string& json_text, const fs::path& base_dir)
{
    DatasetManifest m;
    try {
        const auto j = nlohmann::json::parse(json_text);
        const std::string format = j.at("format").get<std::string>();
        if (format == "csv_dir") m.format = DatasetFormat::CsvDir;
        else if (format == "labeled_csv") m.format = DatasetFormat::LabeledCsv;
        else throw DatasetError({"manifest: unknown format '" + format + "'"});

        m.path = j.at("path").get<std::string>();
        if (m.path.is_relative() && !base_dir.empty()) m.path = base_dir / m.path;

        const std::string coords = j.value("coordinates", std::string("planar"));
        if (coords == "planar") m.mode = CoordinateMode::Planar;
        else if (coords == "latlon") m.mode = CoordinateMode::LatLon;
        else throw DatasetError({"manifest: unknown coordinates '" + coords + "'"});

        if (j.contains("ref_lon")) m.ref_lon = j.at("ref_lon").get<double>();
        if (j.contains("target_complexity")) {
            const auto n = j.at("target_complexity").get<long long>();
            if (n < 2) throw DatasetError({"manifest: target_complexity must be >= 2"});
            m.target_complexity = static_cast<std::size_t>(n);
        }
    } catch (const nlohmann::json::exception& e) {
        throw DatasetError({std::string("manifest: ") + e.what()});
    }
    check_mode(m);
    return m;
}

DatasetManifest load_manifest(const fs::path& file)
{
    std::ifstream in(file);
    if (!in) throw DatasetError({file.string() + ": cannot open manifest"});
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str(), file.parent_path());
}

Trajectory load_trajectory_csv(const fs::path& file, CoordinateMode mode, std::optional<double> ref_lon)
{
    if (mode == CoordinateMode::LatLon && !ref_lon) throw DatasetError({file.string() + ": latlon input needs ref_lon"});
    const CsvTable table = read_csv(file);
    const CoordinateColumns cc = coordinate_columns(table.columns, mode, file);
    std::vector<Point> pts;
    pts.reserve(table.rows.size());
    for (const auto& [lineno, cells] : table.rows) pts.push_back(row_point(cells, cc, mode, ref_lon, file, lineno));
    return build(std::move(pts), file, "");
}

std::vector<LabeledTrajectory> load_dataset(const DatasetManifest& manifest)
{
    check_mode(manifest);
    auto out = manifest.format == DatasetFormat::CsvDir ? load_csv_dir(manifest) : load_labeled_csv(manifest);
    if (manifest.target_complexity)
        for (auto& lt : out) lt.trajectory = subsample(lt.trajectory, *manifest.target_complexity);
    return out;
}

Trajectory subsample(const Trajectory& t, std::size_t target_n)
{
    if (target_n < 2) throw std::invalid_argument("subsample needs target_n >= 2");
    const double len = t.length();
    std::vector<Point> pts;
    pts.reserve(target_n);
    pts.push_back(t.front());
    for (std::size_t k = 1; k + 1 < target_n; ++k)
        pts.push_back(t.point_at(len * static_cast<double>(k) / static_cast<double>(target_n - 1)));
    pts.push_back(t.back());
    return Trajectory(std::move(pts));
}

}  // namespace trajcluster
