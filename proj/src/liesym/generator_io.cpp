#include "s2kg/liesym/generator_io.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "s2kg/symcore/parse.hpp"

namespace s2kg::lie {

namespace {

constexpr std::array<const char*, 4> kKeys{"xi_t", "xi_x", "xi_y", "eta"};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw GeneratorFileError("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

std::vector<VectorField> parse_generators(std::string_view text) {
    std::vector<VectorField> out;
    std::array<sym::Expr, 4> comps;
    std::set<std::string> seen_keys;
    std::set<std::string> names;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) out.emplace_back(current, comps[0], comps[1], comps[2], comps[3]);
        comps = {};
        seen_keys.clear();
    };
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) fail(lineno, "malformed section header " + line);
            flush();
            current = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!names.insert(current).second) fail(lineno, "duplicate generator " + current);
            continue;
        }
        if (current.empty()) fail(lineno, "coefficient outside a [Name] section");
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = expression");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        std::size_t slot = kKeys.size();
        for (std::size_t i = 0; i < kKeys.size(); ++i) {
            if (key == kKeys[i]) slot = i;
        }
        if (slot == kKeys.size()) fail(lineno, "unknown key '" + key + "' (expected xi_t, xi_x, xi_y, eta)");
        if (!seen_keys.insert(key).second) fail(lineno, "duplicate key " + key);
        try {
            comps[slot] = sym::parse(std::string_view(line).substr(eq + 1));
        } catch (const sym::ParseError& e) {
            fail(lineno, std::string(e.what()) + " (column " + std::to_string(eq + 2 + e.offset()) + ")");
        }
    }
    flush();
    return out;
}

std::vector<VectorField> load_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GeneratorFileError("cannot open generator file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_generators(ss.str());
}

std::string format_generators(const std::vector<VectorField>& fields) {
    std::string out;
    for (const auto& f : fields) {
        out += "[" + f.name + "]\n";
        for (std::size_t a = 0; a < 4; ++a) {
            if (!f.component(a).is_zero()) out += std::string(kKeys[a]) + " = " + f.component(a).str() + "\n";
        }
        out += "\n";
    }
    return out;
}

}  // namespace s2kg::lie
