#include "s2kg/liesym/algebra.hpp"

#include "s2kg/symcore/linear.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace s2kg::lie {

using sym::Expr;
using sym::Rational;

namespace {

bool is_param(const Expr& a) { return a.kind() == sym::Kind::Param; }

std::vector<Expr> components(const VectorField& v) { return {v.xi[0], v.xi[1], v.xi[2], v.eta}; }

void add_unique(std::vector<std::string>& v, std::string s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

}  // namespace

SpanResolution resolve_in_span(const std::vector<VectorField>& basis, const VectorField& target) {
    std::vector<std::vector<Expr>> cols;
    for (const auto& f : basis) cols.push_back(components(f));
    auto sol = sym::solve_linear(cols, components(target), is_param);
    return {std::move(sol.x), std::move(sol.assumptions), std::move(sol.conditions)};
}

RankReport rank_of(const std::vector<VectorField>& fields) {
    std::vector<std::vector<Expr>> cols;
    for (const auto& f : fields) cols.push_back(components(f));
    auto sol = sym::solve_linear(cols, {}, is_param);
    return {sol.rank, std::move(sol.assumptions)};
}

bool AlgebraTable::rational() const {
    if (!closed) return false;
    for (const auto& a : constants) {
        for (const auto& b : a) {
            for (const auto& e : b) {
                if (!e.is_number()) return false;
            }
        }
    }
    return true;
}

Rational AlgebraTable::rational_constant(std::size_t i, std::size_t j, std::size_t k) const {
    const Expr& e = constants.at(i).at(j).at(k);
    if (!e.is_number()) throw std::logic_error("structure constant is not rational: " + e.str());
    return e.number();
}

bool AlgebraTable::antisymmetric() const {
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j) {
            for (std::size_t k = 0; k < dim(); ++k) {
                if (!(constants[i][j][k] + constants[j][i][k]).is_zero()) return false;
            }
        }
    }
    return true;
}

bool AlgebraTable::jacobi() const {
    const std::size_t n = dim();
    auto c = [&](std::size_t i, std::size_t j, std::size_t k) -> const Expr& { return constants[i][j][k]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t q = 0; q < n; ++q) {
                    Expr s;
                    for (std::size_t m = 0; m < n; ++m) {
                        s += c(i, j, m) * c(m, k, q) + c(j, k, m) * c(m, i, q) + c(k, i, m) * c(m, j, q);
                    }
                    if (!s.is_zero()) return false;
                }
            }
        }
    }
    return true;
}

std::vector<std::string> AlgebraTable::lines() const {
    std::vector<std::string> out;
    auto label = [&](std::size_t i) { return fields[i].name.empty() ? "X" + std::to_string(i) : fields[i].name; };
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = i + 1; j < dim(); ++j) {
            std::string rhs;
            const bool missing = std::find(unresolved.begin(), unresolved.end(), std::pair{i, j}) != unresolved.end();
            if (missing) {
                rhs = brackets[i][j].str() + " (outside the span)";
            } else {
                for (std::size_t k = 0; k < dim(); ++k) {
                    const Expr& e = constants[i][j][k];
                    if (e.is_zero()) continue;
                    std::string term;
                    if (e == Expr(1)) term = label(k);
                    else if (e == Expr(-1)) term = "-" + label(k);
                    else if (e.kind() == sym::Kind::Sum) term = "(" + e.str() + ")*" + label(k);
                    else term = e.str() + "*" + label(k);
                    if (!rhs.empty() && term.front() != '-') rhs += " + ";
                    else if (!rhs.empty()) rhs += " ";
                    rhs += term;
                }
                if (rhs.empty()) rhs = "0";
            }
            out.push_back("[" + label(i) + "," + label(j) + "] = " + rhs);
        }
    }
    return out;
}

AlgebraTable commutator_table(const std::vector<VectorField>& fields) {
    if (fields.empty()) throw std::invalid_argument("commutator_table needs at least one field");
    AlgebraTable t;
    t.fields = fields;
    const std::size_t n = fields.size();
    t.brackets.assign(n, std::vector<VectorField>(n));
    t.constants.assign(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            t.brackets[i][j] = lie_bracket(fields[i], fields[j]);
            if (t.brackets[i][j].is_zero()) continue;
            auto res = resolve_in_span(fields, t.brackets[i][j]);
            for (auto& a : res.assumptions) add_unique(t.assumptions, std::move(a));
            if (!res.coeffs) {
                t.closed = false;
                if (i < j) t.unresolved.emplace_back(i, j);
                continue;
            }
            t.constants[i][j] = std::move(*res.coeffs);
        }
    }
    return t;
}

std::vector<std::vector<Rational>> killing_form(const AlgebraTable& t) {
    if (!t.rational()) throw std::logic_error("killing_form needs a closed table with rational constants");
    const std::size_t n = t.dim();
    std::vector<std::vector<Rational>> K(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Rational s;
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) s = s + t.rational_constant(i, l, k) * t.rational_constant(j, k, l);
            }
            K[i][j] = s;
        }
    }
    return K;
}

namespace {

struct Inertia {
    std::size_t pos = 0, neg = 0, zero = 0;
};

// Symmetric congruence reduction to diagonal form over the rationals.
Inertia inertia(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Inertia in;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!done[i] && m[i][i] != Rational(0)) {
                p = i;
                break;
            }
        }
        if (p == n) {
            // zero diagonal: add a coupled row/column to create a nonzero pivot
            std::size_t a = n, b = n;
            for (std::size_t i = 0; i < n && a == n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (!done[i] && !done[j] && i != j && m[i][j] != Rational(0)) {
                        a = i;
                        b = j;
                        break;
                    }
                }
            }
            if (a == n) break;
            for (std::size_t k = 0; k < n; ++k) m[a][k] = m[a][k] + m[b][k];
            for (std::size_t k = 0; k < n; ++k) m[k][a] = m[k][a] + m[k][b];
            p = a;
        }
        const Rational d = m[p][p];
        (d > Rational(0) ? in.pos : in.neg)++;
        done[p] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || m[i][p] == Rational(0)) continue;
            const Rational f = m[i][p] / d;
            for (std::size_t k = 0; k < n; ++k) m[i][k] = m[i][k] - f * m[p][k];
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (!done[k]) m[p][k] = Rational(0);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!done[i]) m[i][p] = Rational(0);
        }
    }
    in.zero = n - in.pos - in.neg;
    return in;
}

std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == Rational(0)) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == Rational(0)) continue;
            const Rational f = m[i][c] / m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] = m[i][k] - f * m[r][k];
        }
        ++r;
    }
    return r;
}

std::string multiple(std::size_t k, const char* base) {
    return k == 1 ? std::string(base) : std::to_string(k) + base;
}

}  // namespace

bool negative_definite(const std::vector<std::vector<Rational>>& m) { return inertia(m).neg == m.size(); }

std::string identify(const AlgebraTable& t) {
    if (!t.rational()) return "unidentified";
    const std::size_t n = t.dim();
    // derived algebra: span of the bracket vectors
    std::vector<std::vector<Rational>> derived;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Rational> v(n);
            for (std::size_t k = 0; k < n; ++k) v[k] = t.rational_constant(i, j, k);
            derived.push_back(std::move(v));
        }
    }
    const std::size_t derived_dim = derived.empty() ? 0 : rational_rank(derived);
    if (derived_dim == 0) return multiple(n, "A1");
    // center: kernel of v -> ad v, rows indexed by (j, k)
    std::vector<std::vector<Rational>> ad_rows;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Rational> row(n);
            for (std::size_t i = 0; i < n; ++i) row[i] = t.rational_constant(i, j, k);
            ad_rows.push_back(std::move(row));
        }
    }
    const std::size_t center_dim = n - rational_rank(ad_rows);
    const Inertia kf = inertia(killing_form(t));
    if (derived_dim == 3 && center_dim + 3 == n && kf.neg == 3 && kf.pos == 0) {
        return center_dim == 0 ? "A3,9" : "A3,9+" + multiple(center_dim, "A1");
    }
    return "unidentified";
}

SubalgebraReport subalgebra_check(const std::string& name, const std::vector<VectorField>& candidate) {
    SubalgebraReport rep;
    rep.name = name;
    auto rank = rank_of(candidate);
    rep.rank = rank.rank;
    rep.assumptions = std::move(rank.assumptions);
    rep.table = commutator_table(candidate);
    for (const auto& a : rep.table.assumptions) add_unique(rep.assumptions, a);
    rep.closed = rep.table.closed;
    rep.tag = rep.closed ? identify(rep.table) : "not closed";
    return rep;
}

std::vector<NamedSubalgebra> listed_subalgebras() {
    const Expr a = Expr::param("a");
    const Expr b = Expr::param("b");
    const auto S0 = preset_generator("S0");
    const auto S1 = preset_generator("S1");
    const auto S2 = preset_generator("S2");
    const auto S3 = preset_generator("S3");
    const auto S4 = preset_generator("S4");
    auto named = [](VectorField v, std::string n) {
        v.name = std::move(n);
        return v;
    };
    const auto aS0_bS4 = named(a * S0 + b * S4, "aS0+bS4");
    return {
        {"L1", "S1", {named(S0 + a * S1, "S0+aS1")}, "A1"},
        {"L2", "S1", {S1}, "A1"},
        {"L1", "S2", {named(a * S0 + S1 + b * S4, "aS0+S1+bS4")}, "A1"},
        {"L2", "S2", {aS0_bS4}, "A1"},
        {"L3", "S2", {aS0_bS4, S1}, "2A1"},
        {"L4", "S2", {S0, S4}, "2A1"},
        {"L5", "S2", {S1, S2, S3}, "A3,9"},
        {"L6", "S2", {S0, S1, S4}, "3A1"},
        {"L7", "S2", {aS0_bS4, S1, S2, S3}, "A3,9+A1"},
    };
}

}  // namespace s2kg::lie
