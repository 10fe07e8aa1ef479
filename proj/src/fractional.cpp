#include "divis/fractional.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <utility>
#include <vector>

#include "divis/errors.hpp"
#include "divis/fft.hpp"

namespace divis {
namespace {

constexpr double kKeepFloor = 1e-14;

struct GridStats {
  double min_real = 0.0;
  double max_imag = 0.0;
  double mass_defect = 0.0;
};

GridStats stats_of(const std::vector<std::complex<double>>& coeffs) {
  GridStats s;
  s.min_real = coeffs.empty() ? 0.0 : coeffs[0].real();
  std::complex<double> mass = 0.0;
  for (const auto& c : coeffs) {
    s.min_real = std::min(s.min_real, c.real());
    s.max_imag = std::max(s.max_imag, std::abs(c.imag()));
    mass += c;
  }
  s.mass_defect = std::abs(mass - 1.0);
  return s;
}

bool rejected(const GridStats& s, const FracConfig& cfg) {
  return s.min_real < -cfg.strict_tol || s.max_imag > cfg.strict_tol;
}

bool accepted(const GridStats& s, const FracConfig& cfg) {
  return s.min_real >= -cfg.neg_tol && s.max_imag <= cfg.neg_tol &&
         s.mass_defect <= cfg.mass_tol;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Coefficients of e^{t psi} on an n-point circle grid (n from the lift,
// which may exceed the request for step safety).
struct CoeffScan {
  std::size_t n = 0;
  long long winding = 0;
  std::vector<std::complex<double>> coeffs;
  GridStats stats;
};

CoeffScan coeffs_at(const Measure& mu, double t, std::size_t n, const DualConfig& dcfg) {
  auto lift = detail::lift_on_circle(mu, n, dcfg);
  CoeffScan scan;
  scan.n = lift.n;
  scan.winding = lift.winding;
  std::vector<std::complex<double>> f(lift.n);
  for (std::size_t j = 0; j < lift.n; ++j) f[j] = std::exp(t * lift.psi[j]);
  detail::fft_pow2(f, -1);
  const double inv = 1.0 / static_cast<double>(lift.n);
  for (auto& c : f) c *= inv;
  scan.stats = stats_of(f);
  scan.coeffs = std::move(f);
  return scan;
}

std::map<std::int64_t, double> fold_signed(const std::vector<std::complex<double>>& coeffs) {
  std::map<std::int64_t, double> out;
  const std::int64_t n = static_cast<std::int64_t>(coeffs.size());
  for (std::int64_t k = 0; k < n; ++k) {
    const double c = coeffs[static_cast<std::size_t>(k)].real();
    if (std::abs(c) < kKeepFloor) continue;
    out[k < n / 2 ? k : k - n] = c;
  }
  return out;
}

// Shared by Z and lattice measures: both live on the circle through their
// coefficient polynomial. A nonzero winding means no periodic psi exists;
// for Z that is inadmissibility, for a lattice the integer-power method
// does not apply (the candidate would not be lattice-supported).
MembershipVerdict circle_power(const Measure& mu, double t, const FracConfig& cfg,
                               bool lattice_origin) {
  if (!find_zeros(mu, cfg.zero_tol).empty())
    fail(errc::not_admissible, "characteristic function has zeros");

  DualConfig dcfg;
  dcfg.zero_tol = cfg.zero_tol;
  dcfg.max_grid = cfg.max_grid;
  const std::size_t n0 = std::max<std::size_t>(cfg.n_points, 16);

  CoeffScan prev = coeffs_at(mu, t, n0, dcfg);
  if (prev.winding != 0) {
    if (lattice_origin)
      fail(errc::unsupported_group,
           "second characteristic is not periodic in the dual (phase winding " +
               std::to_string(prev.winding) + "), candidate leaves the lattice");
    fail(errc::not_admissible,
         "winding number " + std::to_string(prev.winding) + " is nonzero");
  }

  MembershipVerdict out;
  out.t = t;
  for (std::size_t n = prev.n * 2;; n *= 2) {
    if (n > cfg.max_grid)
      fail(errc::no_convergence, "coefficient refinement exceeded the grid cap");
    CoeffScan cur = coeffs_at(mu, t, n, dcfg);
    if (std::abs(cur.stats.min_real - prev.stats.min_real) < cfg.converge_tol) {
      out.grid_used = cur.n;
      out.min_coefficient = cur.stats.min_real;
      out.mass_defect = cur.stats.mass_defect;
      out.max_imag = cur.stats.max_imag;
      if (rejected(cur.stats, cfg) && rejected(prev.stats, cfg))
        out.verdict = Verdict::NonMember;
      else if (accepted(cur.stats, cfg))
        out.verdict = Verdict::Member;
      else
        out.verdict = Verdict::Inconclusive;
      out.candidate = fold_signed(cur.coeffs);
      return out;
    }
    prev = std::move(cur);
  }
}

MembershipVerdict cyclic_power(const Measure& mu, double t, const FracConfig& cfg) {
  const DualGrid grid = sample_char_fn(mu, 0);
  for (const auto& v : grid.values)
    if (std::abs(v) <= cfg.zero_tol)
      fail(errc::not_admissible, "characteristic function vanishes at a character");

  const std::size_t n = grid.values.size();
  std::vector<std::complex<double>> f(n);
  f[0] = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    const std::complex<double> v = grid.values[j];
    const std::complex<double> psi(std::log(std::abs(v)), std::arg(v));
    f[j] = std::exp(t * psi);
  }
  auto coeffs = detail::dft_direct(f, -1);
  const double inv = 1.0 / static_cast<double>(n);
  for (auto& c : coeffs) c *= inv;

  MembershipVerdict out;
  out.t = t;
  out.grid_used = n;
  const GridStats s = stats_of(coeffs);
  out.min_coefficient = s.min_real;
  out.mass_defect = s.mass_defect;
  out.max_imag = s.max_imag;
  if (rejected(s, cfg))
    out.verdict = Verdict::NonMember;
  else if (accepted(s, cfg))
    out.verdict = Verdict::Member;
  else
    out.verdict = Verdict::Inconclusive;
  for (std::size_t k = 0; k < n; ++k) {
    const double c = coeffs[k].real();
    if (std::abs(c) >= kKeepFloor) out.candidate[static_cast<std::int64_t>(k)] = c;
  }
  return out;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Member: return "MEMBER";
    case Verdict::NonMember: return "NON_MEMBER";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

MembershipVerdict fractional_power(const Measure& mu, double t, const FracConfig& config) {
  if (!(t > 0.0)) fail(errc::invalid_argument, "t must be positive");
  switch (mu.group().kind()) {
    case GroupKind::Integers:
      return circle_power(mu, t, config, false);
    case GroupKind::RealLattice:
      return circle_power(mu, t, config, true);
    case GroupKind::Cyclic:
      return cyclic_power(mu, t, config);
  }
  fail(errc::unsupported_group, "unknown group kind");
}

bool is_member(const Measure& mu, double t, const FracConfig& config) {
  const MembershipVerdict v = fractional_power(mu, t, config);
  if (v.verdict == Verdict::Inconclusive)
    fail(errc::inconclusive,
         "membership at t=" + fmt(t) + " is inconclusive: min coefficient " +
             fmt(v.min_coefficient) + ", max imaginary part " + fmt(v.max_imag) +
             ", mass defect " + fmt(v.mass_defect));
  return v.verdict == Verdict::Member;
}

Measure nth_root_admissible(const Measure& mu, int n, const FracConfig& config) {
  if (n < 1) fail(errc::invalid_argument, "root index must be a positive integer");
  const MembershipVerdict v = fractional_power(mu, 1.0 / static_cast<double>(n), config);
  if (v.verdict == Verdict::Inconclusive)
    fail(errc::inconclusive, "membership of 1/" + std::to_string(n) +
                                 " is inconclusive: min coefficient " +
                                 fmt(v.min_coefficient));
  if (v.verdict == Verdict::NonMember)
    fail(errc::not_a_member,
         "1/" + std::to_string(n) + " is not a divisibility exponent of the measure");

  std::vector<std::pair<std::int64_t, double>> atoms;
  double mass = 0.0;
  for (const auto& [k, c] : v.candidate) {
    if (c <= 0.0) continue;
    atoms.emplace_back(k, c);
    mass += c;
  }
  for (auto& [k, c] : atoms) c /= mass;
  return make_measure(mu.group(), atoms);
}

}  // namespace divis
