#include "s2kg/geom/curvature.hpp"

#include <cmath>

namespace s2kg::geom {

using sym::Expr;

namespace {

Expr d(const ChartMetric& m, const Expr& e, std::size_t i) { return sym::partial(e, m.coord_atom(i)); }

}  // namespace

Christoffel christoffel(const ChartMetric& m) {
    const std::size_t n = m.dim();
    // dg[l][i][j] = d_l g_ij
    std::vector<Matrix> dg(n, Matrix(n, std::vector<Expr>(n)));
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) dg[l][i][j] = d(m, m.g(i, j), l);
        }
    }
    Christoffel gamma(n, Matrix(n, std::vector<Expr>(n)));
    const Expr half(sym::Rational(1, 2));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                Expr s;
                for (std::size_t l = 0; l < n; ++l) {
                    if (m.inv(k, l).is_zero()) continue;
                    s += m.inv(k, l) * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
                }
                gamma[k][i][j] = half * s;
                gamma[k][j][i] = gamma[k][i][j];
            }
        }
    }
    return gamma;
}

Rank4 riemann(const ChartMetric& m, const Christoffel& gamma) {
    const std::size_t n = m.dim();
    Rank4 r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t s = 0; s < n; ++s) {
                    Expr v = d(m, gamma[i][s][j], k) - d(m, gamma[i][k][j], s);
                    for (std::size_t l = 0; l < n; ++l) {
                        v += gamma[i][k][l] * gamma[l][s][j] - gamma[i][s][l] * gamma[l][k][j];
                    }
                    r.at(i, j, k, s) = v;
                }
            }
        }
    }
    return r;
}

Matrix ricci(const Rank4& riem) {
    const std::size_t n = riem.dim();
    Matrix out(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) out[i][j] += riem.at(k, i, k, j);
        }
    }
    return out;
}

Expr scalar_curvature(const ChartMetric& m, const Matrix& ric) {
    Expr r;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) r += m.inv(i, j) * ric[i][j];
    }
    return r;
}

CurvatureBundle curvature(const ChartMetric& m) {
    CurvatureBundle b;
    b.gamma = christoffel(m);
    b.riemann = riemann(m, b.gamma);
    b.ricci = ricci(b.riemann);
    b.scalar = scalar_curvature(m, b.ricci);
    return b;
}

double sectional_curvature(const ChartMetric& m, const CurvatureBundle& curv, const sym::NumericBindings& point,
                           std::span<const double> X, std::span<const double> Y) {
    const std::size_t n = m.dim();
    if (X.size() != n || Y.size() != n) throw std::invalid_argument("sectional_curvature: vector size mismatch");
    const auto g = m.evaluate(point);
    auto inner = [&](std::span<const double> a, std::span<const double> b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) s += g[i][j] * a[i] * b[j];
        }
        return s;
    };
    const double denom = inner(X, X) * inner(Y, Y) - inner(X, Y) * inner(X, Y);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max({scale, std::abs(X[i]), std::abs(Y[i])});
    if (std::abs(denom) <= 1e-12 * std::max(1.0, scale * scale * scale * scale)) {
        throw DegeneratePlaneError("sectional_curvature: the plane spanned by X and Y is degenerate");
    }
    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t mm = 0; mm < n; ++mm) {
            if (g[i][mm] == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    for (std::size_t l = 0; l < n; ++l) {
                        const double w = X[i] * Y[j] * X[k] * Y[l];
                        if (w == 0.0) continue;
                        const Expr& r = curv.riemann.at(mm, j, k, l);
                        if (r.is_zero()) continue;
                        num += g[i][mm] * sym::eval_numeric(r, point) * w;
                    }
                }
            }
        }
    }
    return num / denom;
}

Expr laplace_beltrami(const ChartMetric& m, const std::string& field) {
    const Expr& root = m.sqrt_abs_det();
    const std::size_t n = m.dim();
    Expr total;
    for (std::size_t i = 0; i < n; ++i) {
        Expr flux;
        for (std::size_t j = 0; j < n; ++j) {
            if (m.inv(i, j).is_zero()) continue;
            sym::JetIndex idx{};
            idx[static_cast<std::size_t>(sym::index_of(m.coords()[j]))] = 1;
            flux += root * m.inv(i, j) * Expr::jet(field, idx);
        }
        total += sym::diff(flux, m.coords()[i]);
    }
    return total / root;
}

Matrix lie_derivative_metric(const ChartMetric& m, const lie::VectorField& X) {
    const std::size_t n = m.dim();
    std::vector<Expr> xi(n);
    for (std::size_t s = 0; s < n; ++s) xi[s] = X.xi[static_cast<std::size_t>(sym::index_of(m.coords()[s]))];
    Matrix out(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Expr v;
            for (std::size_t s = 0; s < n; ++s) v += xi[s] * d(m, m.g(i, j), s);
            for (std::size_t k = 0; k < n; ++k) {
                v += m.g(k, j) * d(m, xi[k], i) + m.g(i, k) * d(m, xi[k], j);
            }
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    return out;
}

KillingReport killing_check(const ChartMetric& m, const lie::VectorField& X, std::mt19937_64& rng) {
    KillingReport rep;
    const Matrix lg = lie_derivative_metric(m, X);
    rep.killing = true;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = i; j < m.dim(); ++j) {
            KillingComponent c{i, j, lg[i][j], sym::is_zero(lg[i][j], rng)};
            if (c.zero.verdict != sym::ZeroVerdict::ProvenZero) rep.killing = false;
            if (c.zero.verdict == sym::ZeroVerdict::Undecided) rep.undecided = true;
            rep.components.push_back(std::move(c));
        }
    }
    return rep;
}

}  // namespace s2kg::geom
