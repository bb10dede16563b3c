#pragma once

#include <array>
#include <string>
#include <vector>

#include "s2kg/symcore/expr.hpp"

namespace s2kg::lie {

/// Point generator xi^t d_t + xi^x d_x + xi^y d_y + eta d_u with coefficients
/// over (t, x, y, u). Coefficients are kept canonical.
struct VectorField {
    std::string name;
    std::array<sym::Expr, 3> xi{};
    sym::Expr eta;

    VectorField() = default;
    VectorField(std::string n, sym::Expr xi_t, sym::Expr xi_x, sym::Expr xi_y, sym::Expr eta_u);

    /// Component a of the generator over (t, x, y, u); a = 3 is eta.
    [[nodiscard]] const sym::Expr& component(std::size_t a) const { return a < 3 ? xi[a] : eta; }
    [[nodiscard]] bool is_zero() const;
    /// "sin(y)*d_x + cos(x)*sin(x)^-1*cos(y)*d_y"
    [[nodiscard]] std::string str() const;

    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator-(const VectorField& a, const VectorField& b);
    friend VectorField operator*(const sym::Expr& s, const VectorField& v);
    friend bool operator==(const VectorField& a, const VectorField& b);
};

/// Bundled generators: S0 = d_t, S1 = d_y, S2, S3 (rotations), S4 = u d_u,
/// Sinf = b(t,x,y) d_u.
[[nodiscard]] VectorField preset_generator(const std::string& name);
[[nodiscard]] std::vector<std::string> preset_generator_names();
/// S0..S3: the isometry algebra.
[[nodiscard]] std::vector<VectorField> isometry_generators();

}  // namespace s2kg::lie
