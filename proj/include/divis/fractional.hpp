#pragma once

#include <cstdint>
#include <map>

#include "divis/dual.hpp"
#include "divis/measure.hpp"

namespace divis {

enum class Verdict { Member, NonMember, Inconclusive };

const char* verdict_name(Verdict v);

struct FracConfig {
  double neg_tol = 1e-9;      // coefficients above this count as zero
  double strict_tol = 1e-7;   // coefficients below the negative of this reject
  double mass_tol = 1e-9;
  double converge_tol = 1e-11;
  std::size_t n_points = 256;
  std::size_t max_grid = std::size_t{1} << 20;
  double zero_tol = 1e-10;
};

/// Result of testing whether the t-th convolution power of an admissible
/// measure is again a probability measure. The candidate table holds the
/// reconstructed coefficients by support point (signed for Z and lattices,
/// residues for Z_N); entries with |c| < 1e-14 are dropped as aliasing dust.
struct MembershipVerdict {
  double t = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double min_coefficient = 0.0;
  double mass_defect = 0.0;
  double max_imag = 0.0;
  std::size_t grid_used = 0;
  std::map<std::int64_t, double> candidate;
};

/// Synthesizes e^{t psi} on the dual grid and reads its coefficients back
/// by inverse transform, refining the grid until the minimum coefficient
/// stabilizes. Requires an admissible measure. Lattice measures are handled
/// when e^{psi} is periodic in the dual (phase winding of the coefficient
/// polynomial is zero), so the candidate lives on the same lattice;
/// otherwise UnsupportedGroup.
MembershipVerdict fractional_power(const Measure& mu, double t,
                                   const FracConfig& config = {});

/// True iff the verdict is MEMBER. An INCONCLUSIVE verdict raises
/// errc::inconclusive instead of collapsing to false.
bool is_member(const Measure& mu, double t, const FracConfig& config = {});

/// The unique n-th convolution root of an admissible measure with
/// 1/n in Lambda(mu): coefficients from fractional_power at t = 1/n,
/// clipped at zero and renormalized.
Measure nth_root_admissible(const Measure& mu, int n, const FracConfig& config = {});

}  // namespace divis
