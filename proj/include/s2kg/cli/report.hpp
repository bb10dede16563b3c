#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace s2kg::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Info lines never affect the exit code; Warn marks a known discrepancy in a
/// reference form, Fail and Undecided make the run fail.
enum class Status { Pass, Warn, Fail, Undecided, Info };
[[nodiscard]] std::string to_string(Status s);

struct Check {
    std::string id;
    std::string what;
    Status status = Status::Info;
    /// PROVEN_ZERO, LIKELY_NONZERO, UNDECIDED, EXACT_ZERO, ... or a number
    std::string verdict;
    std::optional<std::string> residual;
    std::optional<double> value;
    std::optional<double> tolerance;
    std::string note;
};

struct Report {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    std::vector<Check> checks;
    /// extra machine-readable content (tables, series summaries)
    nlohmann::json data = nlohmann::json::object();
    /// extra human-readable content, printed before the checks
    std::vector<std::string> lines;
    double seconds = 0.0;

    Check& add(Check c);
    /// Appends the other report's checks, lines and data (under its command).
    void merge(const Report& other);
    /// 0 when nothing failed or stayed undecided, else 1
    [[nodiscard]] int exit_code() const;
    [[nodiscard]] nlohmann::json to_json(bool timings = false) const;
    [[nodiscard]] std::string to_text() const;
};

}  // namespace s2kg::cli
