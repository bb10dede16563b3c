#include "s2kg/liesym/vector_field.hpp"

#include <stdexcept>

#include "s2kg/symcore/parse.hpp"

namespace s2kg::lie {

using sym::Expr;

VectorField::VectorField(std::string n, Expr xi_t, Expr xi_x, Expr xi_y, Expr eta_u)
    : name(std::move(n)),
      xi{sym::simplify(xi_t), sym::simplify(xi_x), sym::simplify(xi_y)},
      eta(sym::simplify(eta_u)) {}

bool VectorField::is_zero() const {
    return xi[0].is_zero() && xi[1].is_zero() && xi[2].is_zero() && eta.is_zero();
}

std::string VectorField::str() const {
    static const char* kParts[] = {"d_t", "d_x", "d_y", "d_u"};
    std::string out;
    for (std::size_t a = 0; a < 4; ++a) {
        const Expr& c = component(a);
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (c.is_one()) {
            out += kParts[a];
        } else if (c.kind() == sym::Kind::Sum) {
            out += "(" + c.str() + ")*" + kParts[a];
        } else {
            out += c.str() + "*" + kParts[a];
        }
    }
    return out.empty() ? "0" : out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    return {"", a.xi[0] + b.xi[0], a.xi[1] + b.xi[1], a.xi[2] + b.xi[2], a.eta + b.eta};
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    return {"", a.xi[0] - b.xi[0], a.xi[1] - b.xi[1], a.xi[2] - b.xi[2], a.eta - b.eta};
}

VectorField operator*(const Expr& s, const VectorField& v) {
    return {"", s * v.xi[0], s * v.xi[1], s * v.xi[2], s * v.eta};
}

bool operator==(const VectorField& a, const VectorField& b) { return a.xi == b.xi && a.eta == b.eta; }

VectorField preset_generator(const std::string& name) {
    auto p = [](const char* s) { return sym::parse(s); };
    if (name == "S0") return {"S0", 1, 0, 0, 0};
    if (name == "S1") return {"S1", 0, 0, 1, 0};
    if (name == "S2") return {"S2", 0, p("sin(y)"), p("cot(x)*cos(y)"), 0};
    if (name == "S3") return {"S3", 0, p("cos(y)"), p("-cot(x)*sin(y)"), 0};
    if (name == "S4") return {"S4", 0, 0, 0, p("u")};
    if (name == "Sinf") return {"Sinf", 0, 0, 0, p("b")};
    throw std::invalid_argument("unknown generator preset '" + name + "'");
}

std::vector<std::string> preset_generator_names() { return {"S0", "S1", "S2", "S3", "S4", "Sinf"}; }

std::vector<VectorField> isometry_generators() {
    return {preset_generator("S0"), preset_generator("S1"), preset_generator("S2"), preset_generator("S3")};
}

}  // namespace s2kg::lie
