#pragma once

// Named end-to-end checks. Every check is deterministic: grids are fixed
// lattices and random samples come from a fixed seed.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pslab {

inline constexpr unsigned kCheckSeed = 20240611u;
inline constexpr double kDefaultTolerance = 1e-8;

struct CheckReport {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string grid_spec;
  std::string detail;
  double elapsed = 0.0;  // seconds
};

struct CheckOptions {
  // Numeric parameters some checks read, e.g. R_plus, R_minus, Lambda.
  std::map<std::string, double, std::less<>> params;
  // Replaces every tolerance equal to kDefaultTolerance.
  std::optional<double> default_tolerance;
  // Per-check tolerance overrides.
  std::map<std::string, double, std::less<>> tolerance_for;

  double param(std::string_view key, double fallback) const;
};

// Registration order.
const std::vector<std::string>& check_names();

// Throws UnknownCheckError.
CheckReport run_check(std::string_view name, const CheckOptions& options = {});

// Checks whose names match the shell-style glob (all when empty).
std::vector<CheckReport> run_all(std::string_view filter = "", const CheckOptions& options = {});

bool glob_match(std::string_view pattern, std::string_view name);

}  // namespace pslab
