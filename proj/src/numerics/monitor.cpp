#include "s2kg/numerics/monitor.hpp"

#include <algorithm>
#include <cmath>

namespace s2kg::num {

using sym::Expr;

namespace {

Expr field_b(sym::FuncIndex idx = {}) { return Expr::func("b", sym::kDepCoords, idx); }

std::vector<Expr> jet_slots() {
    return {sym::t_(), sym::x_(), sym::y_(), sym::u_(), sym::u_("t"), sym::u_("x"), sym::u_("y")};
}

// derivative of an analytic expression matching a jet or function index
Expr derivative(const Expr& e, const std::array<int, 3>& counts) {
    Expr out = e;
    const Expr coords[3] = {sym::t_(), sym::x_(), sym::y_()};
    for (std::size_t a = 0; a < 3; ++a) {
        for (int n = 0; n < counts[a]; ++n) out = sym::partial(out, coords[a]);
    }
    return out;
}

}  // namespace

CurrentMonitor::CurrentMonitor(std::string name, const noether::ConservedCurrent& A, const lie::FSpec& f,
                               const sym::NumericBindings& params, const std::optional<Expr>& b)
    : name_(std::move(name)) {
    sym::Bindings bsub;
    if (b) {
        bsub[field_b()] = *b;
        for (std::size_t a = 0; a < 3; ++a) {
            sym::FuncIndex idx{};
            ++idx[a];
            std::array<int, 3> counts{};
            ++counts[a];
            bsub[field_b(idx)] = derivative(*b, counts);
        }
    }
    auto slots = jet_slots();
    for (const auto& [atom, value] : params) {
        slots.push_back(atom);
        fixed_.push_back(value);
    }
    for (std::size_t k = 0; k < 3; ++k) {
        Expr e = noether::specialize(A.A[k], f);
        if (b) e = sym::substitute(e, bsub);
        c_[k] = sym::CompiledExpr(e, slots);
    }
}

double CurrentMonitor::component(std::size_t k, double t, double x, double y, double u, double ut, double ux,
                                 double uy) const {
    std::array<double, 24> v{t, x, y, u, ut, ux, uy};
    std::copy(fixed_.begin(), fixed_.end(), v.begin() + 7);
    return c_[k](std::span<const double>(v.data(), 7 + fixed_.size()));
}

double CurrentMonitor::integral(const Grid& g, const Field& older, const Field& mid, const Field& newer, double t,
                                double dt) const {
    const double dx = g.dx(), dy = g.dy();
    double total = 0;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.nx); ++i) {
        double row = 0;
        const double x = g.x(i);
        for (std::size_t j = 0; j < g.ny; ++j) {
            const auto jj = static_cast<std::ptrdiff_t>(j);
            const double ut = (newer.at(i, j) - older.at(i, j)) / (2 * dt);
            const double ux = (mid.at(i + 1, j) - mid.at(i - 1, j)) / (2 * dx);
            const double uy = (mid.wrap(i, jj + 1) - mid.wrap(i, jj - 1)) / (2 * dy);
            row += component(0, t, x, g.y(j), mid.at(i, j), ut, ux, uy);
        }
        total += row;
    }
    return total * dx * dy;
}

double CurrentMonitor::wall_flux(const Grid& g, const Field& older, const Field& mid, const Field& newer, double t,
                                 double dt) const {
    const double dx = g.dx(), dy = g.dy();
    // wall between rows a (inside) and b (ghost); orientation +1 at x_max, -1 at x_min
    auto line = [&](std::ptrdiff_t a, std::ptrdiff_t b, double xw) {
        double s = 0;
        for (std::size_t j = 0; j < g.ny; ++j) {
            const auto jj = static_cast<std::ptrdiff_t>(j);
            const double u = 0.5 * (mid.at(a, j) + mid.at(b, j));
            const double ut = 0.5 * ((newer.at(a, j) - older.at(a, j)) + (newer.at(b, j) - older.at(b, j))) / (2 * dt);
            const double ux = (mid.at(std::max(a, b), j) - mid.at(std::min(a, b), j)) / dx;
            const double uy = 0.5 * ((mid.wrap(a, jj + 1) - mid.wrap(a, jj - 1)) + (mid.wrap(b, jj + 1) - mid.wrap(b, jj - 1))) /
                              (2 * dy);
            s += component(1, t, xw, g.y(j), u, ut, ux, uy);
        }
        return s * dy;
    };
    const auto n = static_cast<std::ptrdiff_t>(g.nx);
    return line(n - 1, n, g.x_max) - line(0, -1, g.x_min);
}

double MonitorSeries::drift() const {
    if (integral.empty()) return 0.0;
    return integral.back() - integral.front() + cumulative_flux.back();
}

double MonitorSeries::relative_drift() const {
    if (integral.empty()) return 0.0;
    return std::abs(drift()) / std::max(std::abs(integral.front()), 1e-300);
}

double MonitorSeries::raw_relative_drift() const {
    if (integral.empty()) return 0.0;
    return std::abs(integral.back() - integral.front()) / std::max(std::abs(integral.front()), 1e-300);
}

ResidualReport divergence_residual(const Expr& field, const noether::ConservedCurrent& A, const lie::FSpec& f,
                                   const Grid& g, double t0, const sym::NumericBindings& params) {
    // symbolic side: off-shell divergence with the exact jets of the field
    const Expr identity = noether::total_divergence(A, f);
    sym::Bindings jets;
    for (const auto& atom : sym::leaf_atoms(identity)) {
        if (atom.kind() != sym::Kind::Jet) continue;
        const auto idx = atom.jet_index();
        jets[atom] = derivative(field, {idx[0], idx[1], idx[2]});
    }
    const TxyFunction exact_identity(sym::substitute(identity, jets), params);
    const TxyFunction u(field, params);
    const CurrentMonitor mon("residual", A, f, params);

    const double ht = g.max_dt(), hx = g.dx(), hy = g.dy();
    auto comp = [&](std::size_t k, double t, double x, double y) {
        const double ut = (u(t + ht, x, y) - u(t - ht, x, y)) / (2 * ht);
        const double ux = (u(t, x + hx, y) - u(t, x - hx, y)) / (2 * hx);
        const double uy = (u(t, x, y + hy) - u(t, x, y - hy)) / (2 * hy);
        return mon.component(k, t, x, y, u(t, x, y), ut, ux, uy);
    };
    ResidualReport rep;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.nx); ++i) {
        const double x = g.x(i);
        for (std::size_t j = 0; j < g.ny; ++j) {
            const double y = g.y(j);
            const double fd = (comp(0, t0 + ht, x, y) - comp(0, t0 - ht, x, y)) / (2 * ht) +
                              (comp(1, t0, x + hx, y) - comp(1, t0, x - hx, y)) / (2 * hx) +
                              (comp(2, t0, x, y + hy) - comp(2, t0, x, y - hy)) / (2 * hy);
            const double sym_value = exact_identity(t0, x, y);
            rep.max_error = std::max(rep.max_error, std::abs(fd - sym_value));
            rep.max_identity = std::max(rep.max_identity, std::abs(sym_value));
        }
    }
    return rep;
}

}  // namespace s2kg::num
