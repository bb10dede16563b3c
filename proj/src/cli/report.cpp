#include "s2kg/cli/report.hpp"

#include <iomanip>
#include <sstream>

namespace s2kg::cli {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Warn: return "WARN";
        case Status::Fail: return "FAIL";
        case Status::Undecided: return "UNDECIDED";
        case Status::Info: return "INFO";
    }
    return "INFO";
}

Check& Report::add(Check c) {
    checks.push_back(std::move(c));
    return checks.back();
}

void Report::merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    if (!other.lines.empty()) {
        lines.push_back("[" + other.command + "]");
        lines.insert(lines.end(), other.lines.begin(), other.lines.end());
    }
    if (!other.data.empty()) data[other.command] = other.data;
    seconds += other.seconds;
}

int Report::exit_code() const {
    for (const auto& c : checks) {
        if (c.status == Status::Fail || c.status == Status::Undecided) return 1;
    }
    return 0;
}

nlohmann::json Report::to_json(bool timings) const {
    nlohmann::json cs = nlohmann::json::array();
    nlohmann::json summary{{"PASS", 0}, {"WARN", 0}, {"FAIL", 0}, {"UNDECIDED", 0}, {"INFO", 0}};
    for (const auto& c : checks) {
        nlohmann::json j{{"id", c.id}, {"what", c.what}, {"status", to_string(c.status)}, {"verdict", c.verdict}};
        if (c.residual) j["residual"] = *c.residual;
        if (c.value) j["value"] = *c.value;
        if (c.tolerance) j["tolerance"] = *c.tolerance;
        if (!c.note.empty()) j["note"] = c.note;
        summary[to_string(c.status)] = summary[to_string(c.status)].get<int>() + 1;
        cs.push_back(std::move(j));
    }
    nlohmann::json out{{"tool", "s2kg"},          {"version", kToolVersion}, {"schema_version", kSchemaVersion},
                       {"command", command},      {"inputs", inputs},        {"checks", cs},
                       {"summary", summary},      {"exit_code", exit_code()}};
    if (!data.empty()) out["data"] = data;
    if (timings) out["seconds"] = seconds;
    return out;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "s2kg " << kToolVersion << "  " << command << '\n';
    for (const auto& l : lines) os << "  " << l << '\n';
    for (const auto& c : checks) {
        os << std::left << std::setw(10) << to_string(c.status) << std::setw(34) << c.id << ' ' << c.what;
        if (!c.verdict.empty()) os << "  [" << c.verdict << "]";
        if (c.value) {
            os << "  value=" << std::setprecision(10) << *c.value;
            if (c.tolerance) os << " tol=" << *c.tolerance;
        }
        os << '\n';
        if (c.residual && c.status != Status::Pass) os << "          residual: " << *c.residual << '\n';
        if (!c.note.empty()) os << "          note: " << c.note << '\n';
    }
    int counts[5] = {};
    for (const auto& c : checks) ++counts[static_cast<int>(c.status)];
    os << "summary: " << counts[0] << " pass, " << counts[1] << " warn, " << counts[2] << " fail, " << counts[3]
       << " undecided\n";
    return os.str();
}

}  // namespace s2kg::cli
