#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "divis/measure.hpp"

namespace divis {

struct Options {
  double t_max = 3.0;
  int n_max = 8;
  double mesh = 0.05;
  std::size_t grid = 1024;
  bool json = true;
  std::optional<double> window;
  std::optional<int> root_n;
  std::optional<double> alpha;
  std::optional<int> z2_n;
  std::optional<std::int64_t> modulus;
  std::optional<std::string> q;
  std::uint64_t seed = 0;
};

struct RunResult {
  int exit_code = 0;
  std::string output;
};

/// Parses a measure spec document:
///   {"group": {"kind": "Z" | "Z_mod" | "R_lattice", "n"?: int, "step"?: real},
///    "atoms": [{"point": int, "weight": real}, ...]}
/// Every violation found is listed in the diagnostic.
Measure parse_spec(const std::string& text);

std::string emit_spec(const Measure& mu);

/// Dispatches one command (analyze, lambda-scan, roots, winding, t0, z2,
/// delta1) and renders the report. Exit code 0 on success, 1 on usage or
/// input errors, 2 on domain errors; errors are rendered as documents too.
RunResult run(const std::string& command, const std::string& spec_text,
              const Options& options);

}  // namespace divis
