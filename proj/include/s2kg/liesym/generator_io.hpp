#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "s2kg/liesym/vector_field.hpp"

namespace s2kg::lie {

class GeneratorFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Generator file:
///
///     [S2]
///     xi_x = sin(y)
///     xi_y = cot(x)*cos(y)
///
/// Keys are xi_t, xi_x, xi_y and eta; omitted keys are 0.
[[nodiscard]] std::vector<VectorField> parse_generators(std::string_view text);
[[nodiscard]] std::vector<VectorField> load_generator_file(const std::string& path);
/// Inverse of parse_generators.
[[nodiscard]] std::string format_generators(const std::vector<VectorField>& fields);

}  // namespace s2kg::lie
