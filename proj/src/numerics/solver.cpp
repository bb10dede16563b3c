#include "s2kg/numerics/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

namespace s2kg::num {

using sym::Expr;

std::string to_string(Boundary b) { return b == Boundary::Neumann ? "neumann" : "exact"; }

Boundary boundary_from_string(const std::string& s) {
    if (s == "neumann") return Boundary::Neumann;
    if (s == "exact") return Boundary::Exact;
    throw ConfigError("unknown boundary policy '" + s + "' (expected neumann or exact)");
}

double Grid::max_dt() const { return cfl * std::min(dx(), std::sin(x_min) * dy()); }

void Grid::validate() const {
    if (nx < 4 || ny < 4) throw ConfigError("grid needs nx >= 4 and ny >= 4");
    if (ny % 2 != 0) throw ConfigError("ny must be even");
    if (!(x_min > 0 && x_max < std::numbers::pi && x_min < x_max)) {
        throw ConfigError("need 0 < x_min < x_max < pi");
    }
    if (!(cfl > 0 && cfl <= 1)) throw ConfigError("cfl must lie in (0, 1]");
}

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.nx()); ++i) {
        for (std::size_t j = 0; j < a.ny(); ++j) m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
    }
    return m;
}

double max_abs(const Field& a) {
    double m = 0;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.nx()); ++i) {
        for (std::size_t j = 0; j < a.ny(); ++j) m = std::max(m, std::abs(a.at(i, j)));
    }
    return m;
}

Expr manufactured_source(const Expr& exact, const lie::FSpec& f) {
    const Expr t = sym::t_(), x = sym::x_(), y = sym::y_();
    auto d = [](const Expr& e, const Expr& v) { return sym::partial(e, v); };
    const Expr lap = d(d(exact, x), x) + Expr::cos(x) * Expr::pow(Expr::sin(x), -1) * d(exact, x) +
                     Expr::pow(Expr::sin(x), -2) * d(d(exact, y), y);
    const Expr fu = sym::substitute(f.f(), {{sym::u_(), exact}});
    return d(d(exact, t), t) - lap - fu;
}

TxyFunction::TxyFunction(const Expr& e, const sym::NumericBindings& params) {
    std::vector<Expr> slots{sym::t_(), sym::x_(), sym::y_(), sym::u_()};
    for (const auto& [atom, value] : params) {
        slots.push_back(atom);
        fixed_.push_back(value);
    }
    if (slots.size() > 16) throw ConfigError("too many numeric parameters");
    c_ = sym::CompiledExpr(e, std::move(slots));
}

double TxyFunction::operator()(double t, double x, double y, double u) const {
    std::array<double, 16> v{t, x, y, u};
    std::copy(fixed_.begin(), fixed_.end(), v.begin() + 4);
    return c_(std::span<const double>(v.data(), fixed_.size() + 4));
}

Solver::Solver(Grid grid, Problem problem, double dt, unsigned threads)
    : grid_(grid), problem_(std::move(problem)), dt_(dt), threads_(std::max(1u, threads)) {
    grid_.validate();
    if (!(dt > 0) || dt > grid_.max_dt() * (1 + 1e-12)) {
        throw ConfigError("dt = " + std::to_string(dt) + " violates the CFL bound " + std::to_string(grid_.max_dt()));
    }
    if (problem_.f.kind == lie::FSpec::Kind::Arbitrary) throw ConfigError("the solver needs an explicit f");
    f_ = TxyFunction(problem_.f.f(), problem_.params);
    source_ = TxyFunction(problem_.source.value_or(Expr()), problem_.params);
    if (grid_.boundary == Boundary::Exact) {
        if (!problem_.exact) throw ConfigError("exact boundary needs an exact solution");
        exact_ = TxyFunction(*problem_.exact, problem_.params);
    }
    older_ = prev_ = cur_ = Field(grid_);
}

template <class RowFn>
void Solver::for_rows(RowFn fn) const {
    const auto nx = static_cast<std::ptrdiff_t>(grid_.nx);
    const auto nt = static_cast<std::ptrdiff_t>(std::min<std::size_t>(threads_, grid_.nx));
    if (nt <= 1) {
        for (std::ptrdiff_t i = 0; i < nx; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (std::ptrdiff_t k = 0; k < nt; ++k) {
        pool.emplace_back([&, k] {
            for (std::ptrdiff_t i = nx * k / nt; i < nx * (k + 1) / nt; ++i) fn(i);
        });
    }
}

Field Solver::sample(const Expr& u, double t) const {
    const TxyFunction c(u, problem_.params);
    Field out(grid_);
    for (std::ptrdiff_t i = -1; i <= static_cast<std::ptrdiff_t>(grid_.nx); ++i) {
        for (std::size_t j = 0; j < grid_.ny; ++j) out.at(i, j) = c(t, grid_.x(i), grid_.y(j));
    }
    return out;
}

void Solver::fill_ghosts(Field& u, double t) const {
    const auto last = static_cast<std::ptrdiff_t>(grid_.nx) - 1;
    for (std::size_t j = 0; j < grid_.ny; ++j) {
        if (grid_.boundary == Boundary::Neumann) {
            u.at(-1, j) = u.at(0, j);
            u.at(last + 1, j) = u.at(last, j);
        } else {
            u.at(-1, j) = exact_(t, grid_.x(-1), grid_.y(j));
            u.at(last + 1, j) = exact_(t, grid_.x(last + 1), grid_.y(j));
        }
    }
}

void Solver::check_finite(const Field& u) const {
    for (double v : u.raw()) {
        if (!std::isfinite(v)) {
            throw NumericalError("non-finite value after step " + std::to_string(steps_) + " (t = " +
                                 std::to_string(t_) + ")");
        }
    }
}

Field Solver::spatial_operator(const Field& u) const {
    Field out(grid_);
    const double dx = grid_.dx(), dy = grid_.dy();
    for_rows([&](std::ptrdiff_t i) {
        const double x = grid_.x(i);
        const double cot = std::cos(x) / std::sin(x);
        const double w = 1 / (std::sin(x) * std::sin(x));
        for (std::size_t j = 0; j < grid_.ny; ++j) {
            const auto jj = static_cast<std::ptrdiff_t>(j);
            const double c = u.at(i, j);
            const double uxx = (u.at(i + 1, j) - 2 * c + u.at(i - 1, j)) / (dx * dx);
            const double ux = (u.at(i + 1, j) - u.at(i - 1, j)) / (2 * dx);
            const double uyy = (u.wrap(i, jj + 1) - 2 * c + u.wrap(i, jj - 1)) / (dy * dy);
            out.at(i, j) = uxx + cot * ux + w * uyy;
        }
    });
    return out;
}

void Solver::initialize(const Expr& u0, const Expr& v0) {
    prev_ = sample(u0, 0.0);
    fill_ghosts(prev_, 0.0);
    const Field v = sample(v0, 0.0);
    const Field lap = spatial_operator(prev_);
    cur_ = Field(grid_);
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid_.nx); ++i) {
        for (std::size_t j = 0; j < grid_.ny; ++j) {
            const double u = prev_.at(i, j);
            const double x = grid_.x(i), y = grid_.y(j);
            const double rhs = lap.at(i, j) + f_(0.0, x, y, u) + source_(0.0, x, y);
            cur_.at(i, j) = u + dt_ * v.at(i, j) + 0.5 * dt_ * dt_ * rhs;
        }
    }
    t_ = dt_;
    fill_ghosts(cur_, t_);
    check_finite(cur_);
    steps_ = 1;
    levels_ = 2;
}

void Solver::initialize_exact(const Expr& u) {
    prev_ = sample(u, 0.0);
    cur_ = sample(u, dt_);
    if (grid_.boundary == Boundary::Neumann) {
        fill_ghosts(prev_, 0.0);
        fill_ghosts(cur_, dt_);
    }
    t_ = dt_;
    steps_ = 1;
    levels_ = 2;
}

void Solver::step() {
    Field next(grid_);
    const Field lap = spatial_operator(cur_);
    const double dt2 = dt_ * dt_;
    for_rows([&](std::ptrdiff_t i) {
        for (std::size_t j = 0; j < grid_.ny; ++j) {
            const double u = cur_.at(i, j);
            const double x = grid_.x(i), y = grid_.y(j);
            const double rhs = lap.at(i, j) + f_(t_, x, y, u) + source_(t_, x, y);
            next.at(i, j) = 2 * u - prev_.at(i, j) + dt2 * rhs;
        }
    });
    t_ += dt_;
    fill_ghosts(next, t_);
    older_ = std::move(prev_);
    prev_ = std::move(cur_);
    cur_ = std::move(next);
    ++steps_;
    ++levels_;
    check_finite(cur_);
}

void Solver::reverse() {
    std::swap(prev_, cur_);
    t_ -= dt_;
    dt_ = -dt_;
    levels_ = 2;
}

}  // namespace s2kg::num
