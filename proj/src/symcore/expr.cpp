#include "s2kg/symcore/expr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>

#include "node.hpp"

namespace s2kg::sym {

namespace {

std::size_t mix(std::size_t h, std::size_t v) noexcept {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

// Position of each kind in the canonical order: constants, parameters,
// coordinates, trigonometric atoms, opaque functions, field derivatives,
// then composite nodes.
int kind_rank(Kind k) noexcept {
    switch (k) {
        case Kind::Number: return 0;
        case Kind::Param: return 1;
        case Kind::Coord: return 2;
        case Kind::Sin: return 3;
        case Kind::Cos: return 4;
        case Kind::Ln: return 5;
        case Kind::Func: return 6;
        case Kind::Jet: return 7;
        case Kind::Power: return 8;
        case Kind::Product: return 9;
        case Kind::Sum: return 10;
    }
    return 11;
}

int cmp_int(long a, long b) noexcept { return (a > b) - (a < b); }

int compare_index(const FuncIndex& a, const FuncIndex& b) noexcept {
    const int order_a = a[0] + a[1] + a[2] + a[3];
    const int order_b = b[0] + b[1] + b[2] + b[3];
    if (order_a != order_b) return cmp_int(order_a, order_b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        // t before x before y: u_tt sorts ahead of u_xx.
        if (a[i] != b[i]) return cmp_int(b[i], a[i]);
    }
    return 0;
}

Expr leaf(Node n) {
    n.canonical = true;
    return Expr(finish(std::move(n)));
}

}  // namespace

std::shared_ptr<const Node> finish(Node n) {
    std::size_t h = static_cast<std::size_t>(n.kind) * 1315423911u;
    switch (n.kind) {
        case Kind::Number:
            h = mix(h, std::hash<std::int64_t>{}(n.number.num()));
            h = mix(h, std::hash<std::int64_t>{}(n.number.den()));
            break;
        case Kind::Coord: h = mix(h, static_cast<std::size_t>(n.coord)); break;
        case Kind::Param: h = mix(h, std::hash<std::string>{}(n.name)); break;
        case Kind::Jet:
        case Kind::Func:
            h = mix(h, std::hash<std::string>{}(n.name));
            for (auto v : n.index) h = mix(h, v);
            h = mix(h, n.deps);
            break;
        case Kind::Power: h = mix(h, static_cast<std::size_t>(n.exponent + 1000)); break;
        default: break;
    }
    for (const auto& c : n.children) h = mix(h, c.hash());
    n.hash = h;
    return std::make_shared<const Node>(std::move(n));
}

int compare(const Expr& a, const Expr& b) noexcept {
    const Node& na = a.node();
    const Node& nb = b.node();
    if (&na == &nb) return 0;
    if (na.kind != nb.kind) return cmp_int(kind_rank(na.kind), kind_rank(nb.kind));
    switch (na.kind) {
        case Kind::Number: {
            auto c = na.number <=> nb.number;
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        case Kind::Coord: return cmp_int(static_cast<int>(na.coord), static_cast<int>(nb.coord));
        case Kind::Param: return na.name.compare(nb.name) < 0 ? -1 : (na.name == nb.name ? 0 : 1);
        case Kind::Jet:
        case Kind::Func: {
            if (na.name != nb.name) return na.name < nb.name ? -1 : 1;
            if (na.deps != nb.deps) return cmp_int(na.deps, nb.deps);
            return compare_index(na.index, nb.index);
        }
        case Kind::Power: {
            const int c = compare(na.children[0], nb.children[0]);
            if (c != 0) return c;
            return cmp_int(na.exponent, nb.exponent);
        }
        default: break;
    }
    const auto& ca = na.children;
    const auto& cb = nb.children;
    const std::size_t n = std::min(ca.size(), cb.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = compare(ca[i], cb[i]);
        if (c != 0) return c;
    }
    return cmp_int(static_cast<long>(ca.size()), static_cast<long>(cb.size()));
}

// ---------------------------------------------------------------------------
// Expr construction and accessors

char coord_letter(Coord c) noexcept { return "txy"[static_cast<int>(c)]; }

Expr::Expr() : Expr(Rational(0)) {}

Expr::Expr(Rational r) {
    Node n;
    n.kind = Kind::Number;
    n.number = r;
    n.canonical = true;
    node_ = finish(std::move(n));
}

Expr::Expr(std::int64_t n) : Expr(Rational(n)) {}
Expr::Expr(int n) : Expr(Rational(n)) {}

Expr Expr::coord(Coord c) {
    Node n;
    n.kind = Kind::Coord;
    n.coord = c;
    return leaf(std::move(n));
}

Expr Expr::jet(const std::string& field, JetIndex idx) {
    Node n;
    n.kind = Kind::Jet;
    n.name = field;
    n.index = {idx[0], idx[1], idx[2], 0};
    return leaf(std::move(n));
}

Expr Expr::func(const std::string& name, DepMask deps, FuncIndex idx) {
    for (int i = 0; i < 4; ++i) {
        if (idx[i] != 0 && !(deps & (1u << i))) {
            throw std::invalid_argument("derivative of " + name + " in a variable it does not depend on");
        }
    }
    Node n;
    n.kind = Kind::Func;
    n.name = name;
    n.deps = deps;
    n.index = idx;
    return leaf(std::move(n));
}

Expr Expr::param(const std::string& name) {
    Node n;
    n.kind = Kind::Param;
    n.name = name;
    return leaf(std::move(n));
}

Expr Expr::raw_sum(std::vector<Expr> terms) {
    if (terms.empty()) return Expr(0);
    if (terms.size() == 1) return terms.front();
    Node n;
    n.kind = Kind::Sum;
    n.children = std::move(terms);
    return Expr(finish(std::move(n)));
}

Expr Expr::raw_product(std::vector<Expr> factors) {
    if (factors.empty()) return Expr(1);
    if (factors.size() == 1) return factors.front();
    Node n;
    n.kind = Kind::Product;
    n.children = std::move(factors);
    return Expr(finish(std::move(n)));
}

Expr Expr::raw_pow(const Expr& base, int exponent) {
    Node n;
    n.kind = Kind::Power;
    n.exponent = exponent;
    n.children = {base};
    return Expr(finish(std::move(n)));
}

namespace {
Expr raw_unary(Kind k, const Expr& arg) {
    Node n;
    n.kind = k;
    n.children = {arg};
    return Expr(finish(std::move(n)));
}
}  // namespace

Expr Expr::raw_sin(const Expr& arg) { return raw_unary(Kind::Sin, arg); }
Expr Expr::raw_cos(const Expr& arg) { return raw_unary(Kind::Cos, arg); }
Expr Expr::raw_ln(const Expr& arg) { return raw_unary(Kind::Ln, arg); }

Expr Expr::sin(const Expr& arg) { return simplify(raw_sin(arg)); }
Expr Expr::cos(const Expr& arg) { return simplify(raw_cos(arg)); }
Expr Expr::ln(const Expr& arg) { return simplify(raw_ln(arg)); }
Expr Expr::pow(const Expr& base, int exponent) { return simplify(raw_pow(base, exponent)); }

Kind Expr::kind() const noexcept { return node_->kind; }
bool Expr::is_zero() const noexcept { return node_->kind == Kind::Number && node_->number.is_zero(); }
bool Expr::is_one() const noexcept { return node_->kind == Kind::Number && node_->number.is_one(); }
bool Expr::is_leaf() const noexcept {
    const Kind k = node_->kind;
    return k == Kind::Coord || k == Kind::Jet || k == Kind::Func || k == Kind::Param;
}
bool Expr::is_atom() const noexcept {
    const Kind k = node_->kind;
    return is_leaf() || k == Kind::Sin || k == Kind::Cos || k == Kind::Ln;
}
bool Expr::is_canonical() const noexcept { return node_->canonical; }

const Rational& Expr::number() const {
    if (node_->kind != Kind::Number) throw std::logic_error("not a number: " + str());
    return node_->number;
}
Coord Expr::coord_id() const {
    if (node_->kind != Kind::Coord) throw std::logic_error("not a coordinate: " + str());
    return node_->coord;
}
const std::string& Expr::name() const { return node_->name; }
JetIndex Expr::jet_index() const { return {node_->index[0], node_->index[1], node_->index[2]}; }
FuncIndex Expr::func_index() const { return node_->index; }
DepMask Expr::deps() const { return node_->deps; }
int Expr::exponent() const { return node_->exponent; }
std::span<const Expr> Expr::children() const { return node_->children; }
std::size_t Expr::hash() const noexcept { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash()) return false;
    return compare(a, b) == 0;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) noexcept {
    const int c = compare(a, b);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Expr operator+(const Expr& a, const Expr& b) {
    auto p = detail::to_poly(a);
    p.add(detail::to_poly(b));
    return detail::to_expr(p);
}

Expr operator-(const Expr& a, const Expr& b) {
    auto p = detail::to_poly(a);
    p.add(detail::to_poly(b), Rational(-1));
    return detail::to_expr(p);
}

Expr operator*(const Expr& a, const Expr& b) {
    return detail::to_expr(detail::to_poly(a) * detail::to_poly(b));
}

Expr operator/(const Expr& a, const Expr& b) {
    return detail::to_expr(detail::to_poly(a) * detail::to_poly(b).pow(-1));
}

Expr operator-(const Expr& a) { return detail::to_expr(detail::to_poly(a).scaled(Rational(-1))); }

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.str(); }

Expr t_() { return Expr::coord(Coord::t); }
Expr x_() { return Expr::coord(Coord::x); }
Expr y_() { return Expr::coord(Coord::y); }

JetIndex jet_index_from(const std::string& derivs) {
    JetIndex idx{};
    for (char ch : derivs) {
        switch (ch) {
            case 't': ++idx[0]; break;
            case 'x': ++idx[1]; break;
            case 'y': ++idx[2]; break;
            default: throw std::invalid_argument(std::string("bad derivative letter '") + ch + "'");
        }
    }
    return idx;
}

Expr u_(const std::string& derivs) { return Expr::jet("u", jet_index_from(derivs)); }

UnboundAtomError::UnboundAtomError(const Expr& atom)
    : std::runtime_error("unbound atom: " + atom.str()), atom_(atom) {}

// ---------------------------------------------------------------------------
// Polynomial layer

namespace detail {

int compare_monomials(const Monomial& a, const Monomial& b) noexcept {
    // Lower total degree first keeps constants and linear terms in front.
    long deg_a = 0;
    long deg_b = 0;
    for (const auto& f : a) deg_a += std::abs(f.exp);
    for (const auto& f : b) deg_b += std::abs(f.exp);
    if (deg_a != deg_b) return cmp_int(deg_a, deg_b);
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = compare(a[i].base, b[i].base);
        if (c != 0) return c;
        if (a[i].exp != b[i].exp) return cmp_int(b[i].exp, a[i].exp);
    }
    return cmp_int(static_cast<long>(a.size()), static_cast<long>(b.size()));
}

Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && compare(a[i].base, b[j].base) < 0)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || compare(b[j].base, a[i].base) < 0) {
            out.push_back(b[j++]);
        } else {
            const int e = a[i].exp + b[j].exp;
            if (e != 0) out.push_back({a[i].base, e});
            ++i;
            ++j;
        }
    }
    return out;
}

Poly Poly::constant(const Rational& r) {
    Poly p;
    if (!r.is_zero()) p.terms_.emplace(Monomial{}, r);
    return p;
}

Poly Poly::atom(const Expr& a, int exp) {
    Poly p;
    p.insert(Monomial{{a, exp}}, Rational(1));
    return p;
}

void Poly::insert(Monomial m, const Rational& c) {
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Factor& f = m[i];
        if (f.base.kind() == Kind::Cos && f.exp >= 2) {
            // cos(a)^2 -> 1 - sin(a)^2
            const Expr sin_atom = to_expr(trig_poly(to_poly(f.base.children()[0]), true));
            Monomial reduced = m;
            reduced[i].exp -= 2;
            if (reduced[i].exp == 0) reduced.erase(reduced.begin() + static_cast<long>(i));
            insert(reduced, c);
            insert(multiply(reduced, Monomial{{sin_atom, 2}}), -c);
            return;
        }
        if (f.base.kind() == Kind::Sum && f.exp > 0) {
            const Poly expanded = to_poly(f.base);
            Monomial rest = m;
            rest[i].exp -= 1;
            if (rest[i].exp == 0) rest.erase(rest.begin() + static_cast<long>(i));
            for (const auto& [tm, tc] : expanded.terms_) insert(multiply(rest, tm), c * tc);
            return;
        }
    }
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Poly::add(const Poly& o, const Rational& scale) {
    if (scale.is_zero()) return;
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(m, c * scale);
        if (!inserted) {
            it->second += c * scale;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
}

Poly Poly::operator*(const Poly& o) const {
    Poly out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) out.insert(multiply(ma, mb), ca * cb);
    }
    return out;
}

Poly Poly::scaled(const Rational& r) const {
    Poly out;
    if (r.is_zero()) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * r);
    return out;
}

Poly Poly::pow(int n) const {
    if (n == 0) return constant(Rational(1));
    if (n > 0) {
        Poly result = constant(Rational(1));
        Poly base = *this;
        int e = n;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return result;
    }
    if (is_zero()) throw std::domain_error("division by zero");
    if (terms_.size() == 1) {
        const auto& [m, c] = *terms_.begin();
        Monomial inv;
        for (const auto& f : m) inv.push_back({f.base, f.exp * n});
        Poly out;
        out.insert(std::move(inv), c.pow(n));
        return out;
    }
    // Multi-term base: normalize so the leading coefficient is 1, keep the
    // sum as an atom with negative exponent.
    const Rational lead = terms_.begin()->second;
    const Expr base = to_expr(scaled(lead.inverse()));
    Poly out;
    out.insert(Monomial{{base, n}}, lead.pow(n));
    return out;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_.begin()->second;
}

namespace {

Poly trig_atom(const Expr& arg, bool is_sin) {
    Node n;
    n.kind = is_sin ? Kind::Sin : Kind::Cos;
    n.children = {arg};
    n.canonical = true;
    return Poly::atom(Expr(finish(std::move(n))));
}

// sin/cos of c*m for a single monomial m and rational c > 0.
std::pair<Poly, Poly> sin_cos_of_term(const Rational& c, const Monomial& m) {
    if (c.is_integer() && c.num() >= 2 && !m.empty()) {
        const Expr base = monomial_expr(Rational(1), m);
        const Poly s1 = trig_atom(base, true);
        const Poly c1 = trig_atom(base, false);
        Poly s = s1;
        Poly co = c1;
        for (std::int64_t k = 2; k <= c.num(); ++k) {
            // sin((k)a) = sin a cos((k-1)a) + cos a sin((k-1)a)
            Poly s_next = s1 * co;
            s_next.add(c1 * s);
            Poly c_next = c1 * co;
            c_next.add(s1 * s, Rational(-1));
            s = std::move(s_next);
            co = std::move(c_next);
        }
        return {s, co};
    }
    const Expr arg = monomial_expr(c, m);
    return {trig_atom(arg, true), trig_atom(arg, false)};
}

}  // namespace

Poly trig_poly(const Poly& arg, bool is_sin) {
    if (arg.is_zero()) return is_sin ? Poly() : Poly::constant(Rational(1));
    // sin(sum) expands term by term through the addition formulas.
    Poly s = Poly();
    Poly co = Poly::constant(Rational(1));
    for (const auto& [m, c] : arg.terms()) {
        const bool negative = c.is_negative();
        auto [st, ct] = sin_cos_of_term(c.abs(), m);
        if (negative) st = st.scaled(Rational(-1));
        Poly s_next = s * ct;
        s_next.add(co * st);
        Poly c_next = co * ct;
        c_next.add(s * st, Rational(-1));
        s = std::move(s_next);
        co = std::move(c_next);
    }
    return is_sin ? s : co;
}

Poly to_poly(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
        case Kind::Number: return Poly::constant(n.number);
        case Kind::Coord:
        case Kind::Jet:
        case Kind::Func:
        case Kind::Param: return Poly::atom(e);
        case Kind::Sin:
        case Kind::Cos:
            if (n.canonical) return Poly::atom(e);
            return trig_poly(to_poly(n.children[0]), n.kind == Kind::Sin);
        case Kind::Ln: {
            const Poly arg = to_poly(n.children[0]);
            if (arg.is_constant() && arg.constant_value().is_one()) return Poly();
            if (arg.is_zero()) throw std::domain_error("ln(0)");
            Node ln;
            ln.kind = Kind::Ln;
            ln.children = {to_expr(arg)};
            ln.canonical = true;
            return Poly::atom(Expr(finish(std::move(ln))));
        }
        case Kind::Power: {
            if (n.canonical && n.children[0].kind() != Kind::Sum) {
                return Poly::atom(n.children[0], n.exponent);
            }
            if (n.canonical) {
                Poly p;
                p.insert(Monomial{{n.children[0], n.exponent}}, Rational(1));
                return p;
            }
            return to_poly(n.children[0]).pow(n.exponent);
        }
        case Kind::Product: {
            Poly p = Poly::constant(Rational(1));
            for (const auto& c : n.children) p = p * to_poly(c);
            return p;
        }
        case Kind::Sum: {
            Poly p;
            for (const auto& c : n.children) p.add(to_poly(c));
            return p;
        }
    }
    return Poly();
}

Expr monomial_expr(const Rational& c, const Monomial& m) {
    if (c.is_zero()) return Expr(0);
    std::vector<Expr> factors;
    if (!c.is_one() || m.empty()) factors.emplace_back(c);
    for (const auto& f : m) {
        if (f.exp == 1) {
            factors.push_back(f.base);
        } else {
            Node p;
            p.kind = Kind::Power;
            p.exponent = f.exp;
            p.children = {f.base};
            p.canonical = true;
            factors.emplace_back(finish(std::move(p)));
        }
    }
    if (factors.size() == 1) return factors.front();
    Node prod;
    prod.kind = Kind::Product;
    prod.children = std::move(factors);
    prod.canonical = true;
    return Expr(finish(std::move(prod)));
}

Expr to_expr(const Poly& p) {
    if (p.is_zero()) return Expr(0);
    if (p.terms().size() == 1) {
        const auto& [m, c] = *p.terms().begin();
        return monomial_expr(c, m);
    }
    Node sum;
    sum.kind = Kind::Sum;
    sum.canonical = true;
    sum.children.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) sum.children.push_back(monomial_expr(c, m));
    return Expr(finish(std::move(sum)));
}

Poly derive(const Poly& p, const AtomDerivative& d) {
    Poly out;
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            const Poly db = m[i].base.kind() == Kind::Sum ? derive(to_poly(m[i].base), d) : d(m[i].base);
            if (db.is_zero()) continue;
            Monomial rest = m;
            rest[i].exp -= 1;
            if (rest[i].exp == 0) rest.erase(rest.begin() + static_cast<long>(i));
            Poly lead;
            lead.insert(std::move(rest), c * Rational(m[i].exp));
            out.add(lead * db);
        }
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Operations

using detail::Poly;
using detail::to_expr;
using detail::to_poly;

Expr simplify(const Expr& e) {
    if (e.is_canonical()) return e;
    return to_expr(to_poly(e));
}

namespace {

Poly derive_with(const Expr& e, const detail::AtomDerivative& leaf_rule);

// Chain rule through function-application atoms; leaves use `leaf_rule`.
detail::AtomDerivative chain(const detail::AtomDerivative& leaf_rule) {
    return [leaf_rule](const Expr& atom) -> Poly {
        switch (atom.kind()) {
            case Kind::Sin: {
                const Expr& arg = atom.children()[0];
                return detail::trig_poly(to_poly(arg), false) * derive_with(arg, leaf_rule);
            }
            case Kind::Cos: {
                const Expr& arg = atom.children()[0];
                return (detail::trig_poly(to_poly(arg), true) * derive_with(arg, leaf_rule))
                    .scaled(Rational(-1));
            }
            case Kind::Ln: {
                const Expr& arg = atom.children()[0];
                return derive_with(arg, leaf_rule) * to_poly(arg).pow(-1);
            }
            default: return leaf_rule(atom);
        }
    };
}

Poly derive_with(const Expr& e, const detail::AtomDerivative& leaf_rule) {
    return detail::derive(to_poly(e), chain(leaf_rule));
}

Expr bump(const Expr& atom, int slot) {
    if (atom.kind() == Kind::Jet) {
        JetIndex idx = atom.jet_index();
        ++idx[static_cast<std::size_t>(slot)];
        return Expr::jet(atom.name(), idx);
    }
    FuncIndex idx = atom.func_index();
    ++idx[static_cast<std::size_t>(slot)];
    return Expr::func(atom.name(), atom.deps(), idx);
}

}  // namespace

Expr diff(const Expr& e, Coord v) {
    const int slot = index_of(v);
    auto rule = [slot, v](const Expr& atom) -> Poly {
        switch (atom.kind()) {
            case Kind::Coord: return atom.coord_id() == v ? Poly::constant(Rational(1)) : Poly();
            case Kind::Jet: return Poly::atom(bump(atom, slot));
            case Kind::Func: {
                Poly out;
                if (atom.deps() & (1u << slot)) out.add(Poly::atom(bump(atom, slot)));
                if (atom.deps() & kDepU) {
                    JetIndex du{};
                    du[static_cast<std::size_t>(slot)] = 1;
                    out.add(Poly::atom(bump(atom, 3)) * Poly::atom(Expr::jet("u", du)));
                }
                return out;
            }
            default: return Poly();
        }
    };
    return to_expr(derive_with(e, rule));
}

Expr partial(const Expr& e, const Expr& var) {
    if (!var.is_leaf()) throw std::invalid_argument("partial: variable must be a leaf atom: " + var.str());
    const bool var_is_u = var.kind() == Kind::Jet && var.name() == "u" && var.jet_index() == JetIndex{};
    auto rule = [&var, var_is_u](const Expr& atom) -> Poly {
        if (atom == var) return Poly::constant(Rational(1));
        if (atom.kind() == Kind::Func) {
            if (var.kind() == Kind::Coord) {
                const int slot = index_of(var.coord_id());
                if (atom.deps() & (1u << slot)) return Poly::atom(bump(atom, slot));
            } else if (var_is_u && (atom.deps() & kDepU)) {
                return Poly::atom(bump(atom, 3));
            }
        }
        return Poly();
    };
    return to_expr(derive_with(e, rule));
}

namespace {

struct Substituter {
    const Bindings& bindings;
    std::map<Expr, Poly> memo;

    Poly atom(const Expr& a) {
        if (auto it = memo.find(a); it != memo.end()) return it->second;
        Poly result;
        if (auto b = bindings.find(a); b != bindings.end()) {
            result = to_poly(b->second);
        } else {
            switch (a.kind()) {
                case Kind::Sin:
                case Kind::Cos:
                    result = detail::trig_poly(poly(to_poly(a.children()[0])), a.kind() == Kind::Sin);
                    break;
                case Kind::Ln:
                    result = to_poly(Expr::raw_ln(to_expr(poly(to_poly(a.children()[0])))));
                    break;
                case Kind::Sum: result = poly(to_poly(a)); break;
                default: result = Poly::atom(a); break;
            }
        }
        memo.emplace(a, result);
        return result;
    }

    Poly poly(const Poly& p) {
        Poly out;
        for (const auto& [m, c] : p.terms()) {
            Poly term = Poly::constant(c);
            for (const auto& f : m) term = term * atom(f.base).pow(f.exp);
            out.add(term);
        }
        return out;
    }
};

}  // namespace

Expr substitute(const Expr& e, const Bindings& b) {
    if (b.empty()) return simplify(e);
    Substituter s{b, {}};
    return to_expr(s.poly(to_poly(e)));
}

Expr instantiate_function(const Expr& e, const std::string& name, const Expr& value) {
    Bindings b;
    const Expr u = Expr::jet("u", {});
    for (const auto& a : leaf_atoms(e)) {
        if (a.kind() != Kind::Func || a.name() != name) continue;
        Expr d = value;
        const FuncIndex idx = a.func_index();
        for (int slot = 0; slot < 3; ++slot) {
            for (int k = 0; k < idx[static_cast<std::size_t>(slot)]; ++k) d = partial(d, Expr::coord(static_cast<Coord>(slot)));
        }
        for (int k = 0; k < idx[3]; ++k) d = partial(d, u);
        b.emplace(a, d);
    }
    return substitute(e, b);
}

double eval_numeric(const Expr& e, const NumericBindings& point) {
    const Node& n = e.node();
    auto checked = [](double v) {
        if (!std::isfinite(v)) throw SingularEvaluationError("non-finite value during evaluation");
        return v;
    };
    switch (n.kind) {
        case Kind::Number: return n.number.to_double();
        case Kind::Coord:
        case Kind::Jet:
        case Kind::Func:
        case Kind::Param: {
            if (auto it = point.find(e); it != point.end()) return it->second;
            if (n.kind == Kind::Param && n.name == "pi") return std::numbers::pi;
            throw UnboundAtomError(e);
        }
        case Kind::Sin: return std::sin(eval_numeric(n.children[0], point));
        case Kind::Cos: return std::cos(eval_numeric(n.children[0], point));
        case Kind::Ln: {
            const double a = eval_numeric(n.children[0], point);
            if (!(a > 0.0)) throw SingularEvaluationError("ln of non-positive value");
            return std::log(a);
        }
        case Kind::Power: {
            const double b = eval_numeric(n.children[0], point);
            if (n.exponent < 0 && b == 0.0) throw SingularEvaluationError("division by zero");
            return checked(std::pow(b, n.exponent));
        }
        case Kind::Product: {
            double p = 1.0;
            for (const auto& c : n.children) p *= eval_numeric(c, point);
            return checked(p);
        }
        case Kind::Sum: {
            double s = 0.0;
            for (const auto& c : n.children) s += eval_numeric(c, point);
            return checked(s);
        }
    }
    return 0.0;
}

namespace {
void gather_leaves(const Expr& e, std::set<Expr>& out) {
    if (e.is_leaf()) {
        out.insert(e);
        return;
    }
    for (const auto& c : e.children()) gather_leaves(c, out);
}
}  // namespace

std::vector<Expr> leaf_atoms(const Expr& e) {
    std::set<Expr> s;
    gather_leaves(e, s);
    return {s.begin(), s.end()};
}

bool depends_on(const Expr& e, const std::function<bool(const Expr&)>& pred) {
    if (e.is_leaf()) return pred(e);
    for (const auto& c : e.children()) {
        if (depends_on(c, pred)) return true;
    }
    return false;
}

bool depends_on(const Expr& e, const Expr& atom) {
    return depends_on(e, [&atom](const Expr& a) { return a == atom; });
}

std::vector<Term> terms_of(const Expr& e) {
    std::vector<Term> out;
    const Poly poly = to_poly(e);
    for (const auto& [m, c] : poly.terms()) {
        Term t{c, {}};
        for (const auto& f : m) t.factors.emplace_back(f.base, f.exp);
        out.push_back(std::move(t));
    }
    return out;
}

Expr from_term(const Term& t) {
    detail::Monomial m;
    for (const auto& [b, k] : t.factors) m.push_back({b, k});
    Poly p;
    p.insert(std::move(m), t.coeff);
    return to_expr(p);
}

std::vector<std::pair<Expr, Expr>> collect(const Expr& e,
                                           const std::function<bool(const Expr& atom)>& select) {
    std::map<detail::Monomial, Poly, detail::MonomialLess> groups;
    const Poly poly = to_poly(e);
    for (const auto& [m, c] : poly.terms()) {
        detail::Monomial key;
        detail::Monomial rest;
        for (const auto& f : m) (select(f.base) ? key : rest).push_back(f);
        groups[key].insert(std::move(rest), c);
    }
    std::vector<std::pair<Expr, Expr>> out;
    for (const auto& [k, p] : groups) {
        if (p.is_zero()) continue;
        out.emplace_back(detail::monomial_expr(Rational(1), k), to_expr(p));
    }
    return out;
}

}  // namespace s2kg::sym
