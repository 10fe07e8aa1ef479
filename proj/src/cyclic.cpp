#include "divis/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "divis/dual.hpp"
#include "divis/errors.hpp"
#include "divis/fft.hpp"

namespace divis {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDftZero = 1e-12;
constexpr double kRootNegTol = 1e-9;
constexpr double kRootDedupTol = 1e-10;
constexpr double kReconstructTol = 1e-9;

void require_cyclic(const Measure& mu, const char* what) {
  if (mu.group().kind() != GroupKind::Cyclic)
    fail(errc::wrong_group, std::string(what) + " needs a measure on Z_N");
}

std::vector<std::complex<double>> inverse_dft_exact(
    const std::vector<std::complex<double>>& f) {
  auto out = detail::dft_direct(f, -1);
  const double inv = 1.0 / static_cast<double>(f.size());
  for (auto& c : out) c *= inv;
  return out;
}

std::optional<Measure> measure_from_weights(const GroupSpec& group,
                                            const std::vector<std::complex<double>>& w) {
  std::vector<std::pair<std::int64_t, double>> atoms;
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (std::abs(w[x].imag()) > kRootNegTol) return std::nullopt;
    const double re = w[x].real();
    if (re < -kRootNegTol) return std::nullopt;
    if (re > 1e-14) atoms.emplace_back(static_cast<std::int64_t>(x), re);
  }
  if (atoms.empty()) return std::nullopt;
  return make_measure(group, atoms);
}

bool same_measure(const Measure& a, const Measure& b) {
  return total_variation(a, b) < kRootDedupTol;
}

bool atoms_less(const Measure& a, const Measure& b) {
  const auto& x = a.atoms();
  const auto& y = b.atoms();
  auto i = x.begin();
  auto j = y.begin();
  for (; i != x.end() && j != y.end(); ++i, ++j) {
    if (i->first != j->first) return i->first < j->first;
    if (i->second != j->second) return i->second > j->second;
  }
  return x.size() < y.size();
}

}  // namespace

std::vector<std::complex<double>> cyclic_char_fn(const Measure& mu) {
  require_cyclic(mu, "the character table");
  return sample_char_fn(mu, 0).values;
}

std::optional<double> z2_nth_root(double alpha, int n) {
  if (!(alpha >= 0.0) || !(alpha <= 1.0))
    fail(errc::invalid_argument, "alpha must lie in [0, 1]");
  if (n < 1) fail(errc::invalid_argument, "root index must be a positive integer");
  const double v = 2.0 * alpha - 1.0;
  if (v < 0.0 && n % 2 == 0) return std::nullopt;
  const double r = std::copysign(std::pow(std::abs(v), 1.0 / static_cast<double>(n)), v);
  return (1.0 + r) / 2.0;
}

RootSet cyclic_nth_roots(const Measure& mu, int n) {
  require_cyclic(mu, "root enumeration");
  const std::int64_t N = mu.group().order();
  if (n < 1) fail(errc::invalid_argument, "root index must be a positive integer");
  if (N > 8 || n > 6)
    fail(errc::search_too_large,
         "root enumeration is limited to N <= 8 and n <= 6, got N=" +
             std::to_string(N) + ", n=" + std::to_string(n));

  const auto values = cyclic_char_fn(mu);
  const std::size_t un = static_cast<std::size_t>(N);

  // Free conjugate pairs (j, N-j) for 1 <= j < N/2; the middle character
  // (N even) pairs with itself and only admits real roots.
  std::vector<std::size_t> pairs;
  for (std::size_t j = 1; 2 * j < un; ++j) pairs.push_back(j);
  const bool has_self = (N % 2 == 0) && N > 1;
  const std::size_t self = un / 2;

  std::vector<double> self_choices;
  if (has_self) {
    const double v = values[self].real();
    if (std::abs(values[self]) <= kDftZero) {
      self_choices.push_back(0.0);
    } else if (v > 0.0) {
      const double a = std::pow(v, 1.0 / static_cast<double>(n));
      self_choices.push_back(a);
      if (n % 2 == 0) self_choices.push_back(-a);
    } else {
      if (n % 2 == 1) self_choices.push_back(-std::pow(-v, 1.0 / static_cast<double>(n)));
    }
  } else {
    self_choices.push_back(0.0);  // placeholder, never read
  }

  RootSet out;
  out.n = n;
  out.exhaustive = true;
  if (self_choices.empty()) return out;

  std::vector<int> odo(pairs.size(), 0);
  std::vector<std::complex<double>> r(un);
  for (std::size_t sc = 0; sc < self_choices.size(); ++sc) {
    std::fill(odo.begin(), odo.end(), 0);
    for (;;) {
      r.assign(un, 0.0);
      r[0] = 1.0;
      if (has_self) r[self] = self_choices[sc];
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const std::size_t j = pairs[pi];
        const std::complex<double> v = values[j];
        if (std::abs(v) <= kDftZero) {
          r[j] = 0.0;
        } else {
          const double mag = std::pow(std::abs(v), 1.0 / static_cast<double>(n));
          const double ang =
              (std::arg(v) + kTwoPi * static_cast<double>(odo[pi])) / static_cast<double>(n);
          r[j] = std::polar(mag, ang);
        }
        r[un - j] = std::conj(r[j]);
      }

      auto candidate = measure_from_weights(mu.group(), inverse_dft_exact(r));
      if (candidate &&
          total_variation(convolve_power(*candidate, n), mu) <= kReconstructTol) {
        bool dup = false;
        for (const auto& seen : out.roots)
          if (same_measure(seen, *candidate)) {
            dup = true;
            break;
          }
        if (!dup) out.roots.push_back(std::move(*candidate));
      }

      std::size_t carry = 0;
      while (carry < odo.size() && ++odo[carry] == n) {
        odo[carry] = 0;
        ++carry;
      }
      if (carry == odo.size()) break;
    }
    if (!has_self) break;
  }

  std::sort(out.roots.begin(), out.roots.end(), atoms_less);
  return out;
}

Delta1Membership delta1_membership(std::int64_t N, const Rational& q) {
  if (N < 2) fail(errc::invalid_argument, "the modulus must be at least 2");
  if (N > 50 || q.den > 50)
    fail(errc::search_too_large,
         "membership enumeration is limited to N <= 50 and denominators <= 50");
  Delta1Membership out;
  const std::int64_t m = q.num % N;
  const std::int64_t l = q.den % N;
  for (std::int64_t j = 0; j < N; ++j) {
    if ((j * q.den) % N == m) {
      out.brute = true;
      out.witness = j;
      break;
    }
  }
  out.congruence_rule = (m == l);
  return out;
}

LambdaReport lambda_k_scan(const Measure& mu, const BranchAssignment& branch,
                           const std::vector<TGridPoint>& t_grid,
                           const FracConfig& config) {
  require_cyclic(mu, "the branch scan");
  const std::size_t N = static_cast<std::size_t>(mu.group().order());
  if (branch.k.size() != N)
    fail(errc::invalid_argument, "branch assignment must list one integer per character");
  if (branch.k[0] != 0)
    fail(errc::invalid_argument, "branch assignment must fix k[0] = 0");
  for (long long kj : branch.k)
    if (kj < -1024 || kj > 1024)
      fail(errc::invalid_argument, "branch entries must lie in [-1024, 1024]");

  const auto values = cyclic_char_fn(mu);
  std::vector<std::complex<double>> psi(N);
  for (std::size_t j = 0; j < N; ++j) {
    const std::complex<double> v = values[j];
    if (std::abs(v) <= config.zero_tol)
      fail(errc::zero_character_value,
           "the characteristic function vanishes at character " + std::to_string(j) +
               "; no logarithm branch exists");
    psi[j] = {std::log(std::abs(v)),
              std::arg(v) + kTwoPi * static_cast<double>(branch.k[j])};
  }
  psi[0] = {0.0, kTwoPi * static_cast<double>(branch.k[0])};

  LambdaReport report;
  report.grid = t_grid;
  report.verdicts.reserve(t_grid.size());
  std::vector<std::complex<double>> f(N);
  for (const auto& point : t_grid) {
    const double t = point.t;
    if (!(t > 0.0)) fail(errc::invalid_argument, "grid points must be positive");
    for (std::size_t j = 0; j < N; ++j) f[j] = std::exp(t * psi[j]);
    auto coeffs = inverse_dft_exact(f);

    MembershipVerdict v;
    v.t = t;
    v.grid_used = N;
    std::complex<double> mass = 0.0;
    v.min_coefficient = coeffs.empty() ? 0.0 : coeffs[0].real();
    for (const auto& c : coeffs) {
      v.min_coefficient = std::min(v.min_coefficient, c.real());
      v.max_imag = std::max(v.max_imag, std::abs(c.imag()));
      mass += c;
    }
    v.mass_defect = std::abs(mass - 1.0);
    if (v.min_coefficient < -config.strict_tol || v.max_imag > config.strict_tol ||
        v.mass_defect > config.strict_tol)
      v.verdict = Verdict::NonMember;
    else if (v.min_coefficient >= -config.neg_tol && v.max_imag <= config.neg_tol &&
             v.mass_defect <= config.mass_tol)
      v.verdict = Verdict::Member;
    else
      v.verdict = Verdict::Inconclusive;
    for (std::size_t x = 0; x < N; ++x) {
      const double c = coeffs[x].real();
      if (std::abs(c) >= 1e-14) v.candidate[static_cast<std::int64_t>(x)] = c;
    }
    report.verdicts.push_back(std::move(v));
  }
  report.summary = summarize(report.grid, report.verdicts);
  return report;
}

}  // namespace divis
