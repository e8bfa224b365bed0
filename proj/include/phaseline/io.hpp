#ifndef PHASELINE_IO_HPP
#define PHASELINE_IO_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "phaseline/numerics.hpp"
#include "phaseline/pde_solver.hpp"

namespace phaseline {

using json = nlohmann::json;

namespace io {

inline std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Column {
    std::string name;
    const std::vector<double>* values;
};

inline void write_csv(const std::filesystem::path& path, const std::vector<Column>& columns)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c].name;
    out << "\n";
    const std::size_t rows = columns.empty() ? 0 : columns[0].values->size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << g17((*columns[c].values)[r]);
        out << "\n";
    }
}

inline std::vector<std::vector<double>> read_csv(const std::filesystem::path& path,
                                                 std::vector<std::string>* header = nullptr)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file");
    std::vector<std::string> names;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) names.push_back(cell);
    }
    if (header) *header = names;
    std::vector<std::vector<double>> cols(names.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ss, cell, ',') && c < cols.size()) cols[c++].push_back(std::stod(cell));
    }
    return cols;
}

inline std::uint64_t config_hash(const json& config) { return fnv1a(config.dump()); }

inline std::string hash_hex(std::uint64_t h)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Writes one CSV per snapshot plus a manifest that ties the run together.
inline std::filesystem::path write_run(const std::filesystem::path& dir, const json& config,
                                       const Trajectory& traj)
{
    std::filesystem::create_directories(dir);
    json manifest;
    manifest["schema_version"] = 1;
    manifest["config"] = config;
    manifest["config_hash"] = hash_hex(traj.config_hash ? traj.config_hash : config_hash(config));
    const Grid& g = traj.states.empty() ? Grid{} : traj.states.front().grid;
    manifest["grid"] = {{"x_min", g.x_min}, {"x_max", g.x_max}, {"n", g.n}};
    json times = json::array(), th_m = json::array(), th_p = json::array(),
         files = json::array();

    std::vector<double> xs(g.n);
    for (int i = 0; i < g.n; ++i) xs[i] = g.x(i);
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const SolutionState& s = traj.states[k];
        char name[32];
        std::snprintf(name, sizeof name, "snap_%04zu.csv", k);
        write_csv(dir / name, {{"x", &xs}, {"u", &s.u}, {"ux", &s.ux}, {"ut", &s.ut}});
        times.push_back(s.t);
        th_m.push_back(s.theta_minus);
        th_p.push_back(s.theta_plus);
        files.push_back(name);
    }
    manifest["times"] = times;
    manifest["theta_minus"] = th_m;
    manifest["theta_plus"] = th_p;
    manifest["snapshots"] = files;

    const std::filesystem::path manifest_path = dir / "manifest.json";
    std::ofstream out(manifest_path);
    out << manifest.dump(2) << "\n";
    return manifest_path;
}

struct LoadedRun {
    Trajectory trajectory;
    json config;
    std::string config_hash;
};

inline LoadedRun load_run(const std::filesystem::path& manifest_path)
{
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("load_run: cannot open " + manifest_path.string());
    json manifest = json::parse(in);

    LoadedRun run;
    run.config = manifest.value("config", json::object());
    run.config_hash = manifest.value("config_hash", "");
    const Grid g = Grid::over(manifest["grid"]["x_min"].get<double>(),
                              manifest["grid"]["x_max"].get<double>(),
                              manifest["grid"]["n"].get<int>());
    const auto dir = manifest_path.parent_path();
    const auto& files = manifest["snapshots"];
    for (std::size_t k = 0; k < files.size(); ++k) {
        const auto cols = read_csv(dir / files[k].get<std::string>());
        if (cols.size() < 4 || static_cast<int>(cols[1].size()) != g.n)
            throw std::runtime_error("load_run: malformed snapshot file");
        SolutionState s;
        s.t = manifest["times"][k].get<double>();
        s.grid = g;
        s.u = cols[1];
        s.ux = cols[2];
        s.ut = cols[3];
        s.theta_minus = manifest["theta_minus"][k].get<double>();
        s.theta_plus = manifest["theta_plus"][k].get<double>();
        run.trajectory.states.push_back(std::move(s));
    }
    return run;
}

} // namespace io

} // namespace phaseline

#endif
