#include "s2kg/noether/lagrangian.hpp"

#include "s2kg/liesym/prolong.hpp"
#include "s2kg/symcore/linear.hpp"

namespace s2kg::noether {

using sym::Expr;

namespace {

Expr coord_jet(sym::Coord c) {
    sym::JetIndex idx{};
    ++idx[static_cast<std::size_t>(sym::index_of(c))];
    return Expr::jet("u", idx);
}

bool mentions_b(const Expr& e) {
    return sym::depends_on(e, [](const Expr& a) { return a.kind() == sym::Kind::Func && a.name() == "b"; });
}

}  // namespace

Lagrangian lagrangian(const geom::ChartMetric& m, const lie::FSpec& f) {
    Expr quad;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (!m.inv(i, j).is_zero()) quad += m.inv(i, j) * coord_jet(m.coords()[i]) * coord_jet(m.coords()[j]);
        }
    }
    return {m.sqrt_abs_det() * (sym::Rational(1, 2) * quad + f.F()), f};
}

Lagrangian lagrangian(const lie::FSpec& f) { return lagrangian(geom::preset_metric("s2xr"), f); }

Expr euler_lagrange(const Expr& density) {
    Expr e = sym::partial(density, sym::u_());
    for (auto c : sym::kAllCoords) e -= sym::diff(sym::partial(density, coord_jet(c)), c);
    return lie::wire_potential(e);
}

Expr specialize(const Expr& e, const lie::FSpec& f) {
    if (f.kind == lie::FSpec::Kind::Arbitrary) return e;
    return sym::instantiate_function(sym::instantiate_function(e, "F", f.F()), "f", f.f());
}

std::string to_string(VariationalKind k) {
    switch (k) {
        case VariationalKind::ExactZero: return "EXACT_ZERO";
        case VariationalKind::Divergence: return "DIVERGENCE";
        case VariationalKind::Residual: return "RESIDUAL";
    }
    return "RESIDUAL";
}

VariationalReport variational_check(const lie::VectorField& X, const Lagrangian& L, std::mt19937_64& rng) {
    const auto P = lie::prolong(X, 1);
    Expr total_div_xi;
    for (std::size_t i = 0; i < 3; ++i) total_div_xi += sym::diff(X.xi[i], sym::kAllCoords[i]);
    Expr r = lie::wire_potential(P.apply(L.density) + L.density * total_div_xi);

    sym::Bindings gauge;
    const bool has_b = mentions_b(r);
    if (has_b && L.f.is_linear()) gauge = lie::gauge_on_shell(L.f.linear_coefficient());
    auto reduce = [&](const Expr& e) { return gauge.empty() ? e : sym::substitute(e, gauge); };
    r = reduce(r);

    VariationalReport rep;
    rep.residual = r;
    rep.zero = sym::is_zero(r, rng);
    if (rep.zero.verdict == sym::ZeroVerdict::ProvenZero) {
        rep.kind = VariationalKind::ExactZero;
        return rep;
    }

    const Expr sx = Expr::sin(sym::x_());
    const std::vector<Expr> weights{Expr(1), sx, Expr::pow(sx, -1), Expr::cos(sym::x_())};
    std::vector<Expr> betas{sym::u_()};
    if (has_b) {
        for (sym::FuncIndex idx : {sym::FuncIndex{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}) {
            betas.push_back(Expr::func("b", sym::kDepCoords, idx));
        }
    }
    struct Slot {
        std::size_t k;
        Expr term;
    };
    std::vector<Slot> slots;
    std::vector<std::vector<Expr>> columns;
    for (std::size_t k = 0; k < 3; ++k) {
        for (const auto& w : weights) {
            for (const auto& beta : betas) {
                const Expr term = sym::u_() * w * beta;
                slots.push_back({k, term});
                columns.push_back({reduce(sym::diff(term, sym::kAllCoords[k]))});
            }
        }
    }
    const auto sol = sym::solve_linear(columns, {r}, [](const Expr& a) { return a.kind() == sym::Kind::Param; });
    if (!sol.x) return rep;
    for (std::size_t s = 0; s < slots.size(); ++s) rep.flux[slots[s].k] += (*sol.x)[s] * slots[s].term;
    rep.kind = VariationalKind::Divergence;
    return rep;
}

}  // namespace s2kg::noether
