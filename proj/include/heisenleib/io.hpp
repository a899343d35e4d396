#pragma once

#include <optional>
#include <string>

#include "heisenleib/heisenberg.hpp"

namespace heisenleib {

/// {"dim", "basis", "field": "Q" | {"sqrt": d}, "constants": [{"i","j","k","c"}]}
/// with zero-based indices and scalar strings. Throws ParseError naming the
/// offending line or field.
StructTensor parse_algebra_json(const std::string& text);
std::string algebra_to_json(const StructTensor& t);

/// {"n", "f", "a", "X", "rho", "r"}; rho and r default to zero.
ExtensionSpec parse_spec_json(const std::string& text);
std::string spec_to_json(const ExtensionSpec& spec);

struct LoadedInput {
  StructTensor tensor;
  std::optional<ExtensionSpec> spec;
  /// C when a scalar carries a negative radicand.
  Field field = Field::Real;
};

/// Either format, told apart by the "n"/"X" keys. A spec is validated and
/// built. Throws DomainError when the dimension exceeds max_dim.
LoadedInput load_input(const std::string& text, std::size_t max_dim);

/// Throws ParseError when the file cannot be read.
std::string read_text_file(const std::string& path);

/// C when some constant has a negative radicand.
Field tensor_field(const StructTensor& t);

}  // namespace heisenleib
