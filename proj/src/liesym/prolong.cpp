#include "s2kg/liesym/prolong.hpp"

#include <stdexcept>

namespace s2kg::lie {

using sym::Coord;
using sym::Expr;

Expr partial_point(const Expr& e, std::size_t a) {
    switch (a) {
        case 0: return sym::partial(e, sym::t_());
        case 1: return sym::partial(e, sym::x_());
        case 2: return sym::partial(e, sym::y_());
        case 3: return sym::partial(e, sym::u_());
        default: throw std::out_of_range("point coordinate index");
    }
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    std::array<Expr, 4> c;
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            if (!X.component(b).is_zero()) c[a] += X.component(b) * partial_point(Y.component(a), b);
            if (!Y.component(b).is_zero()) c[a] -= Y.component(b) * partial_point(X.component(a), b);
        }
    }
    std::string name;
    if (!X.name.empty() && !Y.name.empty()) name = "[" + X.name + "," + Y.name + "]";
    return {name, c[0], c[1], c[2], c[3]};
}

ProlongedGenerator prolong(const VectorField& X, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("prolongation order must be 1 or 2");
    ProlongedGenerator P;
    P.base = X;
    P.order = order;
    // D_i xi^j, reused by both orders
    std::array<std::array<Expr, 3>, 3> dxi;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) dxi[i][j] = sym::diff(X.xi[j], sym::kAllCoords[i]);
    }
    auto jet = [](std::initializer_list<std::size_t> dirs) {
        sym::JetIndex idx{};
        for (auto d : dirs) ++idx[d];
        return Expr::jet("u", idx);
    };
    for (std::size_t i = 0; i < 3; ++i) {
        Expr v = sym::diff(X.eta, sym::kAllCoords[i]);
        for (std::size_t j = 0; j < 3; ++j) {
            if (!dxi[i][j].is_zero()) v -= dxi[i][j] * jet({j});
        }
        P.eta1[i] = v;
    }
    if (order == 2) {
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i; j < 3; ++j) {
                Expr v = sym::diff(P.eta1[i], sym::kAllCoords[j]);
                for (std::size_t k = 0; k < 3; ++k) {
                    if (!dxi[j][k].is_zero()) v -= dxi[j][k] * jet({i, k});
                }
                P.eta2[i][j] = v;
                P.eta2[j][i] = v;
            }
        }
    }
    return P;
}

Expr ProlongedGenerator::apply(const Expr& e) const {
    Expr out;
    for (std::size_t a = 0; a < 4; ++a) {
        if (!base.component(a).is_zero()) out += base.component(a) * partial_point(e, a);
    }
    for (const auto& atom : sym::leaf_atoms(e)) {
        if (atom.kind() != sym::Kind::Jet || atom.name() != "u") continue;
        const auto idx = atom.jet_index();
        const int ord = idx[0] + idx[1] + idx[2];
        if (ord == 0) continue;
        if (ord > order) throw std::invalid_argument("prolongation order too low for " + atom.str());
        std::size_t dirs[2] = {0, 0};
        std::size_t n = 0;
        for (std::size_t c = 0; c < 3; ++c) {
            for (int r = 0; r < idx[c]; ++r) dirs[n++] = c;
        }
        const Expr& coeff = ord == 1 ? eta1[dirs[0]] : eta2[dirs[0]][dirs[1]];
        if (!coeff.is_zero()) out += coeff * sym::partial(e, atom);
    }
    return out;
}

}  // namespace s2kg::lie
