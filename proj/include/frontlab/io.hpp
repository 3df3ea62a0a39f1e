#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontlab/core.hpp"

namespace frontlab {

using nlohmann::json;

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path.string());
    out << text;
}

inline void write_json(const std::filesystem::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

inline std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// CSV with a header row; every number is printed round-trippable.
inline void write_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out << fmt_g(r[i]) << (i + 1 < r.size() ? "," : "\n");
    }
}

/// Raw little-endian float64 dump, row-major (y slow, x fast), plus a JSON
/// sidecar describing the byte layout and grid.
inline void dump_field(const std::filesystem::path& base, const Field2D& f, double t,
                       const json& extra = json::object()) {
    std::ofstream bin(base.string() + ".f64", std::ios::binary);
    if (!bin) throw ConfigError("cannot open for writing: " + base.string() + ".f64");
    bin.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    json j = extra;
    j["format"] = "raw float64, little-endian, row-major (y outer, x inner)";
    j["t"] = t;
    j["frame"] = frame_name(f.frame);
    j["nx_points"] = f.nx();
    j["ny_points"] = f.ny();
    j["x_min"] = f.grid.gx.x_min;
    j["x_max"] = f.grid.gx.x_max;
    j["y_min"] = f.grid.gy.x_min;
    j["y_max"] = f.grid.gy.x_max;
    write_json(base.string() + ".json", j);
}

inline Field2D load_field(const std::filesystem::path& base) {
    std::ifstream meta(base.string() + ".json");
    if (!meta) throw ConfigError("cannot open: " + base.string() + ".json");
    json j = json::parse(meta);
    Grid2D g{Grid1D(j["x_min"], j["x_max"], j["nx_points"].get<std::size_t>() - 1),
             Grid1D(j["y_min"], j["y_max"], j["ny_points"].get<std::size_t>() - 1)};
    std::string fr = j["frame"];
    Field2D f(g, fr == "lab" ? Frame::lab
                             : (fr == "moving" ? Frame::moving : Frame::selfsimilar));
    std::ifstream bin(base.string() + ".f64", std::ios::binary);
    if (!bin) throw ConfigError("cannot open: " + base.string() + ".f64");
    bin.read(reinterpret_cast<char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (bin.gcount() != static_cast<std::streamsize>(f.values.size() * sizeof(double)))
        throw ConfigError("truncated field dump: " + base.string() + ".f64");
    return f;
}

}  // namespace frontlab
