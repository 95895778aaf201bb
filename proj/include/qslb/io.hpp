// io.hpp — Deterministic file writers: trajectory tables, reports, sweep grids

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qslb/dynamics.hpp"
#include "qslb/errors.hpp"

namespace qslb::io {

// Fixed 12-significant-digit scientific notation; bit-stable across runs.
inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

// Shortest exact decimal; used where values must round-trip (config files).
inline std::string exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

using Report = std::vector<std::pair<std::string, std::string>>;

inline void ensure_parent(const std::filesystem::path& p) {
    const auto dir = p.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

inline std::ofstream open_out(const std::filesystem::path& p) {
    ensure_parent(p);
    std::ofstream f(p);
    if (!f) throw config_error("cannot open output file: " + p.string());
    return f;
}

// Units convention carried in every file header: frequencies in omega_c,
// times in 1/omega_c.
inline constexpr const char* units_comment =
    "# units: frequencies in omega_c, times in 1/omega_c\n";

inline void write_trajectory_csv(const std::filesystem::path& path,
                                 const Trajectory& traj) {
    auto f = open_out(path);
    f << units_comment;
    f << "t,re_c,im_c,pop,pop_rate,gamma,omega_shift,rate_valid\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        f << sci(traj.times[i]) << ',' << sci(traj.amplitudes[i].real()) << ','
          << sci(traj.amplitudes[i].imag()) << ',' << sci(traj.populations[i])
          << ',' << sci(traj.pop_rates[i]) << ',' << sci(traj.gamma[i]) << ','
          << sci(traj.omega_shift[i]) << ','
          << static_cast<int>(traj.rate_valid[i]) << '\n';
    }
}

inline void write_trajectory_jsonl(const std::filesystem::path& path,
                                   const Trajectory& traj) {
    auto f = open_out(path);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        nlohmann::ordered_json rec;
        rec["t"] = traj.times[i];
        rec["re_c"] = traj.amplitudes[i].real();
        rec["im_c"] = traj.amplitudes[i].imag();
        rec["pop"] = traj.populations[i];
        rec["pop_rate"] = traj.pop_rates[i];
        rec["gamma"] = traj.gamma[i];
        rec["omega_shift"] = traj.omega_shift[i];
        rec["rate_valid"] = static_cast<bool>(traj.rate_valid[i]);
        f << rec.dump() << '\n';
    }
}

inline void write_report_txt(const std::filesystem::path& path,
                             const Report& report) {
    auto f = open_out(path);
    f << units_comment;
    for (const auto& [k, v] : report) f << k << " = " << v << '\n';
}

inline void write_report_jsonl(const std::filesystem::path& path,
                               const Report& report) {
    auto f = open_out(path);
    nlohmann::ordered_json rec;
    for (const auto& [k, v] : report) rec[k] = v;
    f << rec.dump() << '\n';
}

// Grid/table files: one header line then one row per point. Cells are
// preformatted strings so callers control precision; empty cells stay empty.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline void write_table_csv(const std::filesystem::path& path, const Table& t) {
    auto f = open_out(path);
    f << units_comment;
    for (std::size_t c = 0; c < t.header.size(); ++c)
        f << t.header[c] << (c + 1 < t.header.size() ? "," : "");
    f << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            f << row[c] << (c + 1 < row.size() ? "," : "");
        f << '\n';
    }
}

inline void write_table_jsonl(const std::filesystem::path& path, const Table& t) {
    auto f = open_out(path);
    for (const auto& row : t.rows) {
        nlohmann::ordered_json rec;
        for (std::size_t c = 0; c < t.header.size() && c < row.size(); ++c)
            rec[t.header[c]] = row[c];
        f << rec.dump() << '\n';
    }
}

} // namespace qslb::io
