#include "s2kg/liesym/symmetry.hpp"

namespace s2kg::lie {

using sym::Expr;

SymmetryReport symmetry_check(const VectorField& X, const FSpec& f, std::mt19937_64& rng, const sym::Bindings& extra) {
    const Expr delta = equation_residual(f);
    const auto P = prolong(X, 2);
    Expr r = sym::substitute(P.apply(delta), on_shell(f));
    if (!extra.empty()) r = sym::substitute(r, extra);
    SymmetryReport rep;
    rep.residual = r;
    rep.zero = sym::is_zero(r, rng);
    return rep;
}

VectorField symmetry_ansatz() {
    return {"ansatz", Expr::func("xi0", sym::kDepPoint), Expr::func("xi1", sym::kDepPoint),
            Expr::func("xi2", sym::kDepPoint), Expr::func("eta", sym::kDepPoint)};
}

std::vector<DeterminingEquation> determining_system(const FSpec& f) {
    const auto P = prolong(symmetry_ansatz(), 2);
    const Expr condition = sym::substitute(P.apply(equation_residual(f)), on_shell(f));
    const auto groups = sym::collect(condition, [](const Expr& a) {
        return a.kind() == sym::Kind::Jet && jet_order(a) >= 1;
    });
    std::vector<DeterminingEquation> out;
    out.reserve(groups.size());
    for (const auto& [m, c] : groups) out.push_back({m, c});
    return out;
}

std::vector<Expr> evaluate_determining_system(const std::vector<DeterminingEquation>& system, const VectorField& X) {
    static const char* kNames[] = {"xi0", "xi1", "xi2", "eta"};
    std::vector<Expr> out;
    out.reserve(system.size());
    for (const auto& eq : system) {
        Expr e = eq.equation;
        for (std::size_t a = 0; a < 4; ++a) e = sym::instantiate_function(e, kNames[a], X.component(a));
        out.push_back(e);
    }
    return out;
}

ShiftReductionReport shift_reduction_check(const Expr& k) {
    const Expr shift = sym::Rational(1, 2) * k * sym::t_() * sym::t_();
    const Expr with_source = equation_residual(FSpec::constant(k));
    // every u-jet is replaced by the matching v-jet plus the derivative of the shift
    sym::Bindings b;
    for (const auto& a : sym::leaf_atoms(with_source)) {
        if (a.kind() != sym::Kind::Jet || a.name() != "u") continue;
        const auto idx = a.jet_index();
        Expr d = shift;
        for (std::size_t c = 0; c < 3; ++c) {
            for (int r = 0; r < idx[c]; ++r) d = sym::diff(d, sym::kAllCoords[c]);
        }
        b.emplace(a, Expr::jet("v", idx) + d);
    }
    ShiftReductionReport rep;
    rep.transformed = sym::substitute(with_source, b);
    rep.difference = rep.transformed - wave_operator("v");
    rep.proven = rep.difference.is_zero();
    return rep;
}

}  // namespace s2kg::lie
