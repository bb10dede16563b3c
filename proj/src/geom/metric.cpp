#include "s2kg/geom/metric.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "s2kg/symcore/parse.hpp"
#include "s2kg/symcore/zero_test.hpp"

namespace s2kg::geom {

using sym::Expr;

namespace {

Matrix minor_of(const Matrix& m, std::size_t row, std::size_t col) {
    Matrix out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == row) continue;
        std::vector<Expr> r;
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j != col) r.push_back(m[i][j]);
        }
        out.push_back(std::move(r));
    }
    return out;
}

bool is_perfect_square(std::int64_t n, std::int64_t& root) {
    if (n < 0) return false;
    root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    for (std::int64_t r = std::max<std::int64_t>(0, root - 1); r <= root + 1; ++r) {
        if (r * r == n) {
            root = r;
            return true;
        }
    }
    return false;
}

// sqrt of a single-term canonical expression with even exponents.
std::optional<Expr> monomial_sqrt(const Expr& e) {
    const auto terms = sym::terms_of(e);
    if (terms.size() != 1) return std::nullopt;
    const auto& term = terms.front();
    std::int64_t pn = 0;
    std::int64_t pd = 0;
    if (!is_perfect_square(term.coeff.abs().num(), pn) || !is_perfect_square(term.coeff.den(), pd)) {
        return std::nullopt;
    }
    sym::Term root{sym::Rational(pn, pd), {}};
    for (const auto& [atom, k] : term.factors) {
        if (k % 2 != 0) return std::nullopt;
        root.factors.emplace_back(atom, k / 2);
    }
    return sym::from_term(root);
}

// Numeric check of g * inv == I at a few random points.
bool inverse_spot_check(const Matrix& g, const Matrix& inv) {
    std::mt19937_64 rng(sym::kDefaultSeed);
    std::vector<Expr> leaves;
    for (const auto& row : g) {
        for (const auto& e : row) {
            for (const auto& a : sym::leaf_atoms(e)) leaves.push_back(a);
        }
    }
    const std::size_t n = g.size();
    int good = 0;
    for (int attempt = 0; attempt < 32 && good < 4; ++attempt) {
        const auto point = sym::sample_point(leaves, rng);
        try {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                for (std::size_t j = 0; j < n && ok; ++j) {
                    double s = 0.0;
                    for (std::size_t k = 0; k < n; ++k) {
                        s += sym::eval_numeric(g[i][k], point) * sym::eval_numeric(inv[k][j], point);
                    }
                    ok = std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-9;
                }
            }
            if (!ok) return false;
            ++good;
        } catch (const sym::SingularEvaluationError&) {
        }
    }
    return good > 0;
}

}  // namespace

Expr determinant(const Matrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return Expr(1);
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Expr det;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        Expr c = m[0][j] * determinant(minor_of(m, 0, j));
        det = (j % 2 == 0) ? det + c : det - c;
    }
    return det;
}

ChartMetric::ChartMetric(std::vector<sym::Coord> coords, Matrix g, std::string name)
    : coords_(std::move(coords)), g_(std::move(g)), name_(std::move(name)) {
    const std::size_t n = coords_.size();
    if (n == 0) throw MetricError("metric has no coordinates");
    if (g_.size() != n) throw MetricError("metric size does not match the coordinate count");
    for (auto& row : g_) {
        if (row.size() != n) throw MetricError("metric is not square");
        for (auto& e : row) e = sym::simplify(e);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (g_[i][j] != g_[j][i]) throw MetricError("metric is not symmetric");
        }
    }
    det_ = determinant(g_);
    if (det_.is_zero()) throw MetricError("metric is degenerate (det g = 0)");

    inv_.assign(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Expr cof = n == 1 ? Expr(1) : determinant(minor_of(g_, j, i));
            if ((i + j) % 2 == 1) cof = -cof;
            inv_[i][j] = cof / det_;
        }
    }

    bool exact = true;
    for (std::size_t i = 0; i < n && exact; ++i) {
        for (std::size_t j = 0; j < n && exact; ++j) {
            Expr s;
            for (std::size_t k = 0; k < n; ++k) s += g_[i][k] * inv_[k][j];
            exact = s == Expr(i == j ? 1 : 0);
        }
    }
    if (!exact && !inverse_spot_check(g_, inv_)) {
        throw MetricError("metric is not invertible at sample points");
    }

    // |det g| is det g or -det g; the root's sign is fixed positive on the
    // probing domain (x in (0, pi) gives sin x).
    auto root = monomial_sqrt(det_);
    if (!root) root = monomial_sqrt(-det_);
    if (root) {
        std::mt19937_64 rng(sym::kDefaultSeed);
        const auto point = sym::sample_point(sym::leaf_atoms(*root), rng);
        sqrt_abs_det_ = sym::eval_numeric(*root, point) < 0 ? -*root : *root;
    }
}

const Expr& ChartMetric::sqrt_abs_det() const {
    if (!sqrt_abs_det_) {
        throw MetricError("sqrt|det g| is only supported when det g is a perfect-square monomial; det g = " +
                          det_.str());
    }
    return *sqrt_abs_det_;
}

std::vector<std::vector<double>> ChartMetric::evaluate(const sym::NumericBindings& point) const {
    std::vector<std::vector<double>> out(dim(), std::vector<double>(dim()));
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j) out[i][j] = sym::eval_numeric(g_[i][j], point);
    }
    return out;
}

namespace {

const std::map<std::string, std::string, std::less<>>& preset_texts() {
    static const std::map<std::string, std::string, std::less<>> texts{
        {"s2xr",
         "# S^2 x R with the Lorentzian product metric\n"
         "[coordinates]\nt x y\n[metric]\ng_tt = 1\ng_xx = -1\ng_yy = -sin(x)^2\n"},
        {"minkowski3", "[coordinates]\nt x y\n[metric]\ng_tt = 1\ng_xx = -1\ng_yy = -1\n"},
        {"euclidean2", "[coordinates]\nx y\n[metric]\ng_xx = 1\ng_yy = 1\n"},
        {"euclidean3", "[coordinates]\nt x y\n[metric]\ng_tt = 1\ng_xx = 1\ng_yy = 1\n"},
        {"sphere", "# unit round sphere\n[coordinates]\nx y\n[metric]\ng_xx = 1\ng_yy = sin(x)^2\n"},
    };
    return texts;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) {
    throw MetricError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

}  // namespace

std::string preset_metric_text(std::string_view name) {
    const auto& texts = preset_texts();
    auto it = texts.find(name);
    if (it == texts.end()) throw MetricError("unknown metric preset '" + std::string(name) + "'");
    return it->second;
}

ChartMetric preset_metric(std::string_view name) { return parse_metric(preset_metric_text(name), std::string(name)); }

std::vector<std::string> preset_metric_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : preset_texts()) out.push_back(k);
    return out;
}

ChartMetric parse_metric(std::string_view text, const std::string& name) {
    enum class Section { None, Coordinates, Metric } section = Section::None;
    std::vector<sym::Coord> coords;
    std::map<std::pair<std::size_t, std::size_t>, Expr> entries;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    bool saw_coords = false;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const std::size_t col0 = raw.find_first_not_of(" \t") + 1;
        if (line.front() == '[') {
            if (line == "[coordinates]") {
                section = Section::Coordinates;
            } else if (line == "[metric]") {
                if (!saw_coords) fail(lineno, col0, "[metric] before [coordinates]");
                section = Section::Metric;
            } else {
                fail(lineno, col0, "unknown section " + line);
            }
            continue;
        }
        if (section == Section::None) fail(lineno, col0, "content outside a section");
        if (section == Section::Coordinates) {
            if (saw_coords) fail(lineno, col0, "coordinates already declared");
            std::istringstream words(line);
            std::string w;
            while (words >> w) {
                sym::Coord c;
                if (w == "t") c = sym::Coord::t;
                else if (w == "x") c = sym::Coord::x;
                else if (w == "y") c = sym::Coord::y;
                else fail(lineno, col0 + line.find(w), "unknown coordinate '" + w + "' (expected t, x or y)");
                if (std::find(coords.begin(), coords.end(), c) != coords.end()) {
                    fail(lineno, col0 + line.find(w), "duplicate coordinate '" + w + "'");
                }
                coords.push_back(c);
            }
            saw_coords = true;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, col0, "expected g_ab = expression");
        const std::string lhs = trim(std::string_view(line).substr(0, eq));
        if (lhs.size() != 4 || lhs.compare(0, 2, "g_") != 0) fail(lineno, col0, "expected g_ab on the left, got '" + lhs + "'");
        auto index_for = [&](char letter) -> std::size_t {
            for (std::size_t i = 0; i < coords.size(); ++i) {
                if (sym::coord_letter(coords[i]) == letter) return i;
            }
            fail(lineno, col0 + 2, std::string("'") + letter + "' is not a declared coordinate");
        };
        std::size_t a = index_for(lhs[2]);
        std::size_t b = index_for(lhs[3]);
        if (a < b) std::swap(a, b);
        if (entries.count({a, b})) fail(lineno, col0, "duplicate entry " + lhs);
        const std::size_t rhs_off = eq + 1;
        try {
            entries[{a, b}] = sym::parse(std::string_view(line).substr(rhs_off));
        } catch (const sym::ParseError& e) {
            fail(lineno, col0 + rhs_off + e.offset(), e.what());
        }
    }
    if (coords.empty()) throw MetricError("no [coordinates] section");
    Matrix g(coords.size(), std::vector<Expr>(coords.size()));
    for (const auto& [ab, e] : entries) {
        g[ab.first][ab.second] = e;
        g[ab.second][ab.first] = e;
    }
    return ChartMetric(std::move(coords), std::move(g), name);
}

ChartMetric load_metric_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MetricError("cannot open metric file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_metric(ss.str(), path);
}

}  // namespace s2kg::geom
