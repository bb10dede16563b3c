#include "s2kg/noether/current.hpp"

#include <stdexcept>

#include "s2kg/symcore/parse.hpp"

namespace s2kg::noether {

using sym::Expr;

namespace {

Expr coord_jet(sym::Coord c) {
    sym::JetIndex idx{};
    ++idx[static_cast<std::size_t>(sym::index_of(c))];
    return Expr::jet("u", idx);
}

Expr b_along(sym::Coord c) {
    sym::FuncIndex idx{};
    ++idx[static_cast<std::size_t>(sym::index_of(c))];
    return Expr::func("b", sym::kDepCoords, idx);
}

void require_txy(const geom::ChartMetric& m) {
    if (m.coords() != std::vector<sym::Coord>{sym::Coord::t, sym::Coord::x, sym::Coord::y}) {
        throw std::invalid_argument("currents need a chart with coordinates (t, x, y)");
    }
}

}  // namespace

ConservedCurrent current_from_isometry(const geom::ChartMetric& m, const lie::VectorField& xi, const lie::FSpec& f,
                                       PotentialSign sign) {
    require_txy(m);
    const Expr& root = m.sqrt_abs_det();
    const Expr F = f.F();
    ConservedCurrent c;
    c.name = xi.name.empty() ? "isometry current" : xi.name + " current";
    c.provenance = sign == PotentialSign::Standard ? "isometry" : "isometry/lagrangian-sign";
    c.generator = xi.name;
    for (std::size_t k = 0; k < 3; ++k) {
        Expr quad;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                const Expr w = sym::Rational(1, 2) * m.inv(i, j) * xi.xi[k] - m.inv(k, j) * xi.xi[i];
                if (!w.is_zero()) quad += w * coord_jet(m.coords()[i]) * coord_jet(m.coords()[j]);
            }
        }
        const Expr pot = root * xi.xi[k] * F;
        c.A[k] = root * quad + (sign == PotentialSign::Standard ? -pot : pot);
    }
    return c;
}

ConservedCurrent current_from_gauge(const geom::ChartMetric& m) {
    require_txy(m);
    const Expr b = Expr::func("b", sym::kDepCoords);
    const Expr u = sym::u_();
    ConservedCurrent c;
    c.name = "Sinf current";
    c.provenance = "gauge";
    c.generator = "Sinf";
    for (std::size_t k = 0; k < 3; ++k) {
        Expr a;
        for (std::size_t j = 0; j < 3; ++j) {
            if (m.inv(j, k).is_zero()) continue;
            const auto cj = m.coords()[j];
            a += m.inv(j, k) * (b * coord_jet(cj) - b_along(cj) * u);
        }
        c.A[k] = m.sqrt_abs_det() * a;
    }
    return c;
}

std::vector<std::string> reference_generators() { return {"S0", "S1", "S2", "S3", "Sinf"}; }

ConservedCurrent reference_current(const std::string& generator) {
    struct Typed {
        const char* gen;
        const char* a0;
        const char* a1;
        const char* a2;
    };
    static const Typed kTyped[] = {
        {"S0", "-sin(x)/2*u_t^2 - sin(x)/2*u_x^2 - u_y^2/(2*sin(x)) - sin(x)*F(u)", "sin(x)*u_t*u_x",
         "u_t*u_y/sin(x)"},
        {"S1", "-sin(x)*u_t*u_y", "sin(x)*u_x*u_y",
         "sin(x)/2*u_t^2 - sin(x)/2*u_x^2 + u_y^2/(2*sin(x)) - sin(x)*F(u)"},
        {"S2", "-sin(x)*sin(y)*u_t*u_x - cos(x)*cos(y)*u_t*u_y",
         "sin(x)*sin(y)/2*u_t^2 + sin(x)*sin(y)/2*u_x^2 - sin(y)/(2*sin(x))*u_y^2 + cos(x)*cos(y)*u_x*u_y"
         " - sin(x)*sin(y)*F(u)",
         "cos(x)*cos(y)/2*u_t^2 - cos(x)*cos(y)/2*u_x^2 + cos(x)*cos(y)/(2*sin(x)^2)*u_y^2"
         " + sin(y)/sin(x)*u_x*u_y - cos(x)*cos(y)*F(u)"},
        {"S3", "-sin(x)*cos(y)*u_t*u_x + cos(x)*sin(y)*u_t*u_y",
         "sin(x)*cos(y)/2*u_t^2 + sin(x)*cos(y)/2*u_x^2 - cos(y)/(2*sin(x))*u_y^2 - cos(x)*sin(y)*u_x*u_y"
         " - sin(x)*cos(y)*F(u)",
         "-cos(x)*sin(y)/2*u_t^2 + cos(x)*sin(y)/2*u_x^2 - cos(x)*sin(y)/(2*sin(x)^2)*u_y^2"
         " + cos(y)/(2*sin(x))*u_x*u_y + cos(x)*sin(x)*F(u)"},
        {"Sinf", "sin(x)*(b*u_t - b_t*u)", "sin(x)*(b_x*u - b*u_x)", "(b*u_t - b_t*u)/sin(x)"},
    };
    for (const auto& t : kTyped) {
        if (generator != t.gen) continue;
        ConservedCurrent c;
        c.name = generator + " reference current";
        c.provenance = "reference";
        c.generator = generator;
        c.A = {sym::parse(t.a0), sym::parse(t.a1), sym::parse(t.a2)};
        return c;
    }
    throw std::invalid_argument("no reference current for '" + generator + "'");
}

Expr total_divergence(const ConservedCurrent& A, const lie::FSpec& f) {
    Expr div;
    for (std::size_t k = 0; k < 3; ++k) div += sym::diff(specialize(A.A[k], f), sym::kAllCoords[k]);
    return lie::wire_potential(div);
}

DivergenceReport divergence_check(const ConservedCurrent& A, const lie::FSpec& f, std::mt19937_64& rng,
                                  const DivergenceOptions& opts) {
    DivergenceReport rep;
    rep.off_shell = total_divergence(A, f);
    Expr on = sym::substitute(rep.off_shell, lie::on_shell(f, opts.sign));
    if (opts.gauge_c) on = sym::substitute(on, lie::gauge_on_shell(*opts.gauge_c));
    rep.on_shell = on;
    rep.zero = sym::is_zero(on, rng);
    return rep;
}

Expr noether_consistency(const ConservedCurrent& A, const lie::VectorField& X, const Lagrangian& L) {
    Expr div;
    for (std::size_t k = 0; k < 3; ++k) div += sym::diff(specialize(A.A[k], L.f), sym::kAllCoords[k]);
    Expr characteristic = X.eta;
    for (std::size_t j = 0; j < 3; ++j) characteristic -= X.xi[j] * coord_jet(sym::kAllCoords[j]);
    return lie::wire_potential(div + euler_lagrange(L.density) * characteristic);
}

std::vector<ComponentComparison> compare_currents(const ConservedCurrent& generated, const ConservedCurrent& reference) {
    std::vector<ComponentComparison> out;
    for (std::size_t k = 0; k < 3; ++k) {
        out.push_back({k, generated.A[k], reference.A[k], generated.A[k] - reference.A[k]});
    }
    return out;
}

}  // namespace s2kg::noether
