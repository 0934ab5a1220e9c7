#pragma once

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hgs::cli {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int schema_version = 1;

/// A malformed or missing flag; the message names the flag. Exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { json, csv, text };

Format parse_format(const std::string& name);

struct RunConfig {
    std::string command;

    // inputs
    std::string forbidden;   // property spec: graph6 lines
    std::string graph;       // file holding one graph6 line
    std::string g6;          // graph6 given inline
    std::string bip;         // BipGraph text file
    std::string certificate; // JSON certificate to re-verify
    std::string parts;       // comma-separated part labels, one per vertex
    std::string a_set;       // comma-separated vertex lists
    std::string b_set;
    std::string chain;       // comma-separated stage targets
    std::string pattern;     // v in {0,1}^r, e.g. "01"

    // parameters
    std::optional<int> n, n_max, m, k, r, r_max, x, t, a;
    std::optional<double> alpha, eps;
    std::string mode = "whole";
    std::string side = "a";
    std::string form = "classes";
    std::uint64_t seed = 1;
    int threads = 0;
    int decompose_max_n = 7;

    Format format = Format::json;
};

struct Report {
    nlohmann::ordered_json doc;
    int exit_code = 0; // 1 when a verification fails

    /// Rendering of the report in the configured format.
    std::string render(Format format) const;
};

/// Dispatches one command. Throws UsageError for bad flags and hgs::Error
/// for domain failures.
Report run(const RunConfig& config);

} // namespace hgs::cli
