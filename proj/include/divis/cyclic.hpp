#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "divis/measure.hpp"
#include "divis/scan.hpp"

namespace divis {

/// Exact discrete Fourier transform of the weight vector of a measure on
/// Z_N; entry 0 is 1.
std::vector<std::complex<double>> cyclic_char_fn(const Measure& mu);

/// The weight beta of the n-th convolution root of alpha*d0 + (1-alpha)*d1
/// on Z_2, from (2*beta - 1)^n = 2*alpha - 1. Empty when 2*alpha - 1 < 0
/// and n is even (no real n-th root).
std::optional<double> z2_nth_root(double alpha, int n);

struct RootSet {
  int n = 0;
  std::vector<Measure> roots;
  bool exhaustive = false;
};

/// All n-th convolution roots of a measure on Z_N, by exhaustive choice of
/// n-th roots of the DFT values under Hermitian pairing. Conjugate character
/// pairs share conjugate root choices, the self-paired character (N even)
/// only admits real roots, zero DFT values force the root 0. Every returned
/// root reconstructs mu under n-fold convolution within 1e-9 total variation.
RootSet cyclic_nth_roots(const Measure& mu, int n);

struct Delta1Membership {
  bool brute = false;            // some nu on Z_N solves nu^(*l) = delta_1^(*m)
  bool congruence_rule = false;  // the closed-form rule m = l (mod N)
  std::optional<std::int64_t> witness;  // smallest j with delta_j^(*l) = delta_1^(*m)
};

/// Decides m/l membership for delta_1 on Z_N two ways: exact enumeration
/// over the only possible roots (point masses, since |nu_hat| must be 1)
/// and the closed-form congruence rule. Both are reported because they
/// disagree, e.g. at N = 3, q = 1/2, where delta_2 * delta_2 = delta_1.
Delta1Membership delta1_membership(std::int64_t N, const Rational& q);

/// Branch choice for the logarithm on a disconnected dual: psi_k(chi_j) =
/// principal log mu_hat(chi_j) + 2*pi*i*k[j], with k[0] = 0.
struct BranchAssignment {
  std::vector<long long> k;
};

/// Membership scan of e^{t psi_k} over the given t grid, exact inverse
/// transform per point, classified with the fractional-power tolerances.
LambdaReport lambda_k_scan(const Measure& mu, const BranchAssignment& branch,
                           const std::vector<TGridPoint>& t_grid,
                           const FracConfig& config = {});

}  // namespace divis
