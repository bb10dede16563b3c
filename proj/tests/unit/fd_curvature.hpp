#pragma once

// Finite-difference curvature oracle, independent of the symbolic engine:
// the metric is a plain numeric function of the point, Christoffel symbols
// come from 4th-order central differences of g, and the Riemann tensor from
// central differences of those.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fdcurv {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;
using MetricFn = std::function<Mat(const Vec&)>;

inline Mat invert(Mat a) {
    const std::size_t n = a.size();
    Mat inv(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        }
        if (std::abs(a[p][c]) < 1e-14) throw std::runtime_error("singular metric");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        const double d = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

// 4th-order central difference of a vector-valued function along axis k.
template <class F>
auto d4(const F& fn, const Vec& p, std::size_t k, double h) {
    auto shifted = [&](double s) {
        Vec q = p;
        q[k] += s * h;
        return fn(q);
    };
    auto a = shifted(-2), b = shifted(-1), c = shifted(1), d = shifted(2);
    auto out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a[i] - 8 * b[i] + 8 * c[i] - d[i]) / (12 * h);
    return out;
}

// Christoffel symbols flattened as G[(k*n + i)*n + j].
inline Vec christoffel(const MetricFn& g, const Vec& p, double h = 1e-3) {
    const std::size_t n = p.size();
    auto flat = [&](const Vec& q) {
        const Mat m = g(q);
        Vec out;
        for (const auto& r : m) out.insert(out.end(), r.begin(), r.end());
        return out;
    };
    std::vector<Vec> dg(n);
    for (std::size_t l = 0; l < n; ++l) dg[l] = d4(flat, p, l, h);
    const Mat inv = invert(g(p));
    Vec G(n * n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t l = 0; l < n; ++l) {
                    s += inv[k][l] * (dg[i][l * n + j] + dg[j][l * n + i] - dg[l][i * n + j]);
                }
                G[(k * n + i) * n + j] = 0.5 * s;
            }
        }
    }
    return G;
}

struct Curvature {
    Vec riemann;  // R[((i*n + j)*n + k)*n + s] = R^i_jks
    Mat ricci;
    double scalar = 0.0;
};

inline Curvature curvature(const MetricFn& g, const Vec& p, double h_in = 1e-3, double h_out = 5e-3) {
    const std::size_t n = p.size();
    auto G = [&](const Vec& q) { return christoffel(g, q, h_in); };
    const Vec G0 = G(p);
    std::vector<Vec> dG(n);
    for (std::size_t k = 0; k < n; ++k) dG[k] = d4(G, p, k, h_out);
    auto gam = [&](std::size_t a, std::size_t b, std::size_t c) { return G0[(a * n + b) * n + c]; };
    Curvature out;
    out.riemann.assign(n * n * n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t s = 0; s < n; ++s) {
                    double v = dG[k][(i * n + s) * n + j] - dG[s][(i * n + k) * n + j];
                    for (std::size_t l = 0; l < n; ++l) v += gam(i, k, l) * gam(l, s, j) - gam(i, s, l) * gam(l, k, j);
                    out.riemann[((i * n + j) * n + k) * n + s] = v;
                }
            }
        }
    }
    out.ricci.assign(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) out.ricci[i][j] += out.riemann[((k * n + i) * n + k) * n + j];
        }
    }
    const Mat inv = invert(g(p));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.scalar += inv[i][j] * out.ricci[i][j];
    }
    return out;
}

}  // namespace fdcurv
