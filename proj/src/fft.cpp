#include "divis/fft.hpp"

#include <cmath>
#include <numbers>

#include "divis/errors.hpp"

namespace divis::detail {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n)) fail(errc::bad_grid_size, "fft size must be a power of two");
  if (n == 1) return;

  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t m = 0; m < len / 2; ++m) {
        // resync the twiddle recurrence so rounding does not accumulate
        if ((m & 63u) == 0)
          w = std::complex<double>(std::cos(angle * static_cast<double>(m)),
                                   std::sin(angle * static_cast<double>(m)));
        std::complex<double> u = a[i + m];
        std::complex<double> v = a[i + m + len / 2] * w;
        a[i + m] = u + v;
        a[i + m + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<std::complex<double>> dft_direct(const std::vector<std::complex<double>>& a,
                                             int sign) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t r = (m * j) % n;
      const double angle =
          sign * 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
      acc += a[m] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace divis::detail
