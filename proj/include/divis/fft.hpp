#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace divis::detail {

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

/// In-place radix-2 transform: a[j] <- sum_m a[m] * exp(sign * 2*pi*i * m*j / n).
/// No normalization; n must be a power of two. Deterministic (no runtime
/// kernel selection), which keeps report output byte-stable across runs.
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

/// Direct O(N^2) transform for arbitrary N with exact angle reduction
/// (angles formed from (m*j) mod N, so conjugate symmetry is exact).
std::vector<std::complex<double>> dft_direct(const std::vector<std::complex<double>>& a,
                                             int sign);

}  // namespace divis::detail
