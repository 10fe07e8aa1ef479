#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "divis/fractional.hpp"
#include "divis/measure.hpp"

namespace divis {

struct TGridPoint {
  double t = 0.0;
  std::optional<Rational> exact;  // set when t is one of the rational probes
};

struct StructureSummary {
  std::optional<double> min_member;
  bool all_member = false;
  /// (s, t) with s, t MEMBER but s+t on the grid NON_MEMBER. Always empty
  /// for a correct implementation; computed as a self-check.
  std::vector<std::pair<double, double>> semigroup_violations;
  /// Smallest grid point from which on every verdict is MEMBER. A single
  /// trailing MEMBER does not count as a tail.
  std::optional<double> tail_start;
  std::size_t inconclusive_count = 0;
};

struct LambdaReport {
  std::vector<TGridPoint> grid;
  std::vector<MembershipVerdict> verdicts;
  StructureSummary summary;
};

/// Union of exact rationals m/l (l <= n_max, m/l <= t_max) and the uniform
/// mesh points k*mesh <= t_max, sorted, deduplicated at 1e-9 with the
/// rational tag winning.
std::vector<TGridPoint> make_t_grid(double t_max, int n_max, double mesh);

/// Evaluates fractional_power at every grid point. Inconclusive points are
/// recorded as such, never coerced to a boolean.
LambdaReport lambda_scan(const Measure& mu, double t_max, int n_max, double mesh,
                         const FracConfig& config = {});

StructureSummary summarize(const std::vector<TGridPoint>& grid,
                           const std::vector<MembershipVerdict>& verdicts);

/// max over zeros of 1/order: every divisibility exponent of a zero-bearing
/// measure on Z or a lattice is at least this.
double t0_lower_bound(const Measure& mu);

/// Direct growth diagnostic behind the t0 bound: the ratio
/// |mu_hat(zero + s)|^t / s on the ladder s = 2^-5 .. 2^-20. The ratio
/// diverges as s -> 0 when t*order < 1 and vanishes when t*order > 1.
struct T0Ladder {
  double t = 0.0;
  std::vector<double> s;
  std::vector<double> ratio;
};
T0Ladder t0_ladder(const Measure& mu, const ZeroPoint& zero, double t);

/// What a nonzero winding number w forces on the rational divisibility
/// exponents: denominators divide |w|, the exponents lie on the lattice
/// (1/|w|)N, and 1/|w| bounds them from below.
struct ConstraintSet {
  long long winding = 0;
  bool obstructed = false;  // false when w = 0: no constraint at all
  std::vector<long long> divisor_union;
  long long intersection_lattice = 0;  // |w|; exponents lie in (1/|w|)N
  std::optional<double> lower_bound;
};

ConstraintSet winding_constraints(long long w);
bool rational_in_constraints(const Rational& q, const ConstraintSet& c);

}  // namespace divis
