#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "heisenleib/scalar.hpp"

namespace heisenleib {

enum class Format { Text, Machine };

/// One parsed command line. `subcommand` is one of verify, series,
/// annihilator, fingerprint, nilradical, derive, catalog-list, catalog-build,
/// catalog-verify, witness.
struct CommandRequest {
  std::string subcommand;
  std::vector<std::string> inputs;
  /// Raw name=value pairs.
  std::vector<std::string> params;
  std::optional<std::string> output;
  Format format = Format::Text;
  Field field = Field::Real;
  /// Entry id for catalog-build and catalog-verify.
  std::optional<std::string> id;
  /// Basis indices of the candidate nilradical.
  std::vector<std::size_t> span;
  int n = 1;
  int f = 1;
  int a1 = 1;
  std::size_t max_dim = 16;
};

namespace exit_status {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int parse_error = 2;
inline constexpr int validation_error = 3;
}  // namespace exit_status

/// Runs one request. Reports go to `out` (or to request.output), diagnostics
/// to `err`.
int run(const CommandRequest& request, std::ostream& out, std::ostream& err);

/// HEISENLEIB_MAX_DIM, or 16.
std::size_t max_dim_from_env();

}  // namespace heisenleib
