#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdecay/version.hpp"

namespace qdecay {

using json = nlohmann::json;
using CsvCell = std::optional<double>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;
};

/// Format a value with 15 significant digits (the printed-precision contract
/// for all numeric output).
inline std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.14e", v);
    return buf;
}

/// Write a CSV table; null cells become empty fields.
inline void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_csv: cannot open " + path.string());
    for (std::size_t i = 0; i < table.header.size(); ++i)
        os << (i ? "," : "") << table.header[i];
    os << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw std::invalid_argument("write_csv: row width != header width");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            if (row[i]) os << format_value(*row[i]);
        }
        os << "\n";
    }
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Sidecar metadata written next to every command's outputs.  Re-running the
/// command with the recorded parameters reproduces the numeric columns.
struct RunManifest {
    std::string command;
    json parameters;
    std::vector<std::string> outputs;

    json to_json() const {
        return json{{"command", command},
                    {"artifact_version", QDECAY_VERSION},
                    {"timestamp_utc", utc_timestamp()},
                    {"parameters", parameters},
                    {"outputs", outputs}};
    }
};

inline void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_manifest: cannot open " + path.string());
    os << m.to_json().dump(2) << "\n";
}

} // namespace qdecay
