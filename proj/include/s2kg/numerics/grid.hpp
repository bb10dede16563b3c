#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace s2kg::num {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Boundary {
    Neumann,  // ghost row mirrors the first interior row
    Exact     // ghost rows sampled from a prescribed solution
};

[[nodiscard]] std::string to_string(Boundary b);
[[nodiscard]] Boundary boundary_from_string(const std::string& s);

/// Cell-centred in x on [x_min, x_max], periodic in y on [0, 2pi).
struct Grid {
    std::size_t nx = 64;
    std::size_t ny = 64;
    double x_min = 0.15;
    double x_max = std::numbers::pi - 0.15;
    double cfl = 0.5;
    Boundary boundary = Boundary::Neumann;

    [[nodiscard]] double dx() const { return (x_max - x_min) / static_cast<double>(nx); }
    [[nodiscard]] double dy() const { return 2 * std::numbers::pi / static_cast<double>(ny); }
    /// i may be -1 or nx for the ghost rows
    [[nodiscard]] double x(std::ptrdiff_t i) const { return x_min + (static_cast<double>(i) + 0.5) * dx(); }
    [[nodiscard]] double y(std::size_t j) const { return static_cast<double>(j) * dy(); }
    /// cfl * min(dx, sin(x_min) dy)
    [[nodiscard]] double max_dt() const;
    /// Throws ConfigError on an invalid grid.
    void validate() const;
};

/// One time level, rows i = -1 .. nx (ghosts included), ny columns.
class Field {
public:
    Field() = default;
    explicit Field(const Grid& g) : nx_(g.nx), ny_(g.ny), v_((g.nx + 2) * g.ny, 0.0) {}

    [[nodiscard]] double& at(std::ptrdiff_t i, std::size_t j) { return v_[static_cast<std::size_t>(i + 1) * ny_ + j]; }
    [[nodiscard]] double at(std::ptrdiff_t i, std::size_t j) const {
        return v_[static_cast<std::size_t>(i + 1) * ny_ + j];
    }
    /// periodic column access
    [[nodiscard]] double wrap(std::ptrdiff_t i, std::ptrdiff_t j) const {
        const auto n = static_cast<std::ptrdiff_t>(ny_);
        return at(i, static_cast<std::size_t>(((j % n) + n) % n));
    }
    [[nodiscard]] std::size_t nx() const { return nx_; }
    [[nodiscard]] std::size_t ny() const { return ny_; }
    [[nodiscard]] const std::vector<double>& raw() const { return v_; }

private:
    std::size_t nx_ = 0, ny_ = 0;
    std::vector<double> v_;
};

/// Max |a - b| over interior rows.
[[nodiscard]] double max_abs_diff(const Field& a, const Field& b);
[[nodiscard]] double max_abs(const Field& a);

}  // namespace s2kg::num
