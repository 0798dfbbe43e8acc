#pragma once

// Run configuration shared by the CLI and the acceptance suite: tolerance
// overrides by check name, grid sizes, output format, and the seed that
// fully determines every randomized check.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

namespace tauberian::cli {

enum class OutputFormat { csv, json, table };

struct RunConfig {
    std::map<std::string, double> tolerance_overrides;
    int grid = 201;
    OutputFormat format = OutputFormat::table;
    std::uint64_t seed = 20240817;

    double tol(const std::string& name, double fallback) const {
        auto it = tolerance_overrides.find(name);
        return it == tolerance_overrides.end() ? fallback : it->second;
    }
};

/// parse a repeatable `--tol NAME=VALUE` argument; returns an error message
/// on malformed input (unknown names are rejected later against the
/// registry of the consuming command)
inline std::optional<std::string> parse_tol_flag(RunConfig& cfg, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) return "expected NAME=VALUE, got '" + kv + "'";
    const std::string name = kv.substr(0, eq);
    try {
        std::size_t used = 0;
        const double v = std::stod(kv.substr(eq + 1), &used);
        if (used != kv.size() - eq - 1) return "trailing characters in value of '" + name + "'";
        cfg.tolerance_overrides[name] = v;
    } catch (const std::exception&) {
        return "could not parse value in '" + kv + "'";
    }
    return std::nullopt;
}

inline std::optional<OutputFormat> parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    if (s == "table") return OutputFormat::table;
    return std::nullopt;
}

}  // namespace tauberian::cli

namespace tauberian::rng {

/// uniform in [0, 1) with implementation-independent bit layout, so a seed
/// reproduces byte-identical results across standard libraries
inline double u01(std::mt19937_64& g) { return (g() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& g, double a, double b) { return a + (b - a) * u01(g); }

}  // namespace tauberian::rng
