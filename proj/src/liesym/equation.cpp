#include "s2kg/liesym/equation.hpp"

#include <stdexcept>

#include "s2kg/symcore/parse.hpp"

namespace s2kg::lie {

using sym::Expr;

namespace {

Expr jet_of(const std::string& field, const char* derivs) { return Expr::jet(field, sym::jet_index_from(derivs)); }

Expr cot_x() { return Expr::cos(sym::x_()) * Expr::pow(Expr::sin(sym::x_()), -1); }

Expr inv_sin2_x() { return Expr::pow(Expr::sin(sym::x_()), -2); }

// b(t,x,y) differentiated t, x, y times
Expr bj(std::uint8_t t, std::uint8_t x, std::uint8_t y) { return Expr::func("b", sym::kDepCoords, {t, x, y, 0}); }

bool mentions_u(const Expr& e) {
    return sym::depends_on(e, [](const Expr& a) {
        return a.kind() == sym::Kind::Jet || (a.kind() == sym::Kind::Func && (a.deps() & sym::kDepU));
    });
}

}  // namespace

Expr FSpec::f() const {
    switch (kind) {
        case Kind::Arbitrary: return Expr::func("f", sym::kDepU);
        case Kind::Zero: return Expr();
        case Kind::Linear: return coeff * sym::u_();
        case Kind::Constant:
        case Kind::Explicit: return coeff;
    }
    return Expr();
}

Expr FSpec::F() const {
    const Expr u = sym::u_();
    switch (kind) {
        case Kind::Arbitrary: return Expr::func("F", sym::kDepU);
        case Kind::Zero: return Expr();
        case Kind::Linear: return sym::Rational(1, 2) * coeff * u * u;
        case Kind::Constant: return coeff * u;
        case Kind::Explicit: break;
    }
    // term-by-term antiderivative of a polynomial in u
    Expr out;
    for (auto term : sym::terms_of(coeff)) {
        int p = 0;
        std::vector<std::pair<Expr, int>> rest;
        for (const auto& [atom, k] : term.factors) {
            if (atom == u) {
                p = k;
            } else {
                if (mentions_u(atom)) throw std::invalid_argument("potential of f = " + coeff.str() + " is not polynomial in u");
                rest.emplace_back(atom, k);
            }
        }
        if (p < 0) throw std::invalid_argument("potential of f = " + coeff.str() + " is not polynomial in u");
        rest.emplace_back(u, p + 1);
        term.factors = std::move(rest);
        term.coeff = term.coeff / sym::Rational(p + 1);
        out += sym::from_term(term);
    }
    return out;
}

bool FSpec::is_linear() const {
    switch (kind) {
        case Kind::Zero:
        case Kind::Linear: return true;
        case Kind::Arbitrary:
        case Kind::Constant: return false;
        case Kind::Explicit: {
            const Expr c = sym::partial(coeff, sym::u_());
            return !mentions_u(c) && (coeff - c * sym::u_()).is_zero();
        }
    }
    return false;
}

Expr FSpec::linear_coefficient() const {
    if (!is_linear()) throw std::logic_error("f = " + f().str() + " is not linear in u");
    if (kind == Kind::Zero) return Expr();
    if (kind == Kind::Linear) return coeff;
    return sym::partial(coeff, sym::u_());
}

std::string FSpec::str() const {
    switch (kind) {
        case Kind::Arbitrary: return "arbitrary";
        case Kind::Zero: return "0";
        default: return f().str();
    }
}

FSpec parse_fspec(std::string_view text) {
    if (text == "arbitrary" || text == "f" || text == "f(u)") return FSpec::arbitrary();
    if (text == "zero") return FSpec::zero();
    if (text == "linear") return FSpec::linear();
    if (text == "constant") return FSpec::constant();
    const Expr e = sym::parse(text);
    for (const auto& a : sym::leaf_atoms(e)) {
        const bool ok = a.kind() == sym::Kind::Param || (a.kind() == sym::Kind::Jet && a == sym::u_());
        if (!ok) throw std::invalid_argument("f must depend only on u and parameters, found " + a.str());
    }
    if (e.is_zero()) return FSpec::zero();
    if (!mentions_u(e)) return FSpec::constant(e);
    const Expr c = sym::partial(e, sym::u_());
    if (!mentions_u(c) && (e - c * sym::u_()).is_zero()) return FSpec::linear(c);
    return FSpec::explicit_f(e);
}

Expr wire_potential(const Expr& e) {
    sym::Bindings b;
    for (const auto& a : sym::leaf_atoms(e)) {
        if (a.kind() != sym::Kind::Func || a.name() != "F" || a.deps() != sym::kDepU) continue;
        auto idx = a.func_index();
        if (idx[3] == 0) continue;
        --idx[3];
        b.emplace(a, Expr::func("f", sym::kDepU, idx));
    }
    return b.empty() ? e : sym::substitute(e, b);
}

Expr wave_operator(const std::string& field) {
    return jet_of(field, "tt") - jet_of(field, "xx") - cot_x() * jet_of(field, "x") - inv_sin2_x() * jet_of(field, "yy");
}

Expr equation_residual(const FSpec& f) { return wave_operator("u") - f.f(); }

sym::Bindings on_shell(const FSpec& f, SourceSign sign) {
    const Expr spatial = sym::u_("xx") + cot_x() * sym::u_("x") + inv_sin2_x() * sym::u_("yy");
    return {{sym::u_("tt"), sign == SourceSign::AsWritten ? spatial + f.f() : spatial - f.f()}};
}

Expr gauge_condition(const Expr& c) {
    return bj(2, 0, 0) - bj(0, 2, 0) - cot_x() * bj(0, 1, 0) - inv_sin2_x() * bj(0, 0, 2) - c * bj(0, 0, 0);
}

sym::Bindings gauge_on_shell(const Expr& c) {
    return {{bj(2, 0, 0), bj(0, 2, 0) + cot_x() * bj(0, 1, 0) + inv_sin2_x() * bj(0, 0, 2) + c * bj(0, 0, 0)}};
}

int jet_order(const Expr& jet) {
    const auto idx = jet.jet_index();
    return idx[0] + idx[1] + idx[2];
}

}  // namespace s2kg::lie
