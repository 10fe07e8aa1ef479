#include <cmath>
#include <string>

#include "divis/fractional.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace divis;
using oracles::error_code_of;

namespace {

Measure biased_bernoulli(const GroupSpec& g = GroupSpec::integers()) {
  return make_measure(g, {{0, 0.7}, {1, 0.3}});
}

Measure poisson(double rate) {
  return make_measure(GroupSpec::integers(), oracles::poisson_atoms(rate));
}

}  // namespace

TEST_CASE("verdict names") {
  CHECK(std::string(verdict_name(Verdict::Member)) == "MEMBER");
  CHECK(std::string(verdict_name(Verdict::NonMember)) == "NON_MEMBER");
  CHECK(std::string(verdict_name(Verdict::Inconclusive)) == "INCONCLUSIVE");
}

TEST_CASE("t = 1 returns the measure itself") {
  auto mu = biased_bernoulli();
  auto v = fractional_power(mu, 1.0);
  CHECK(v.verdict == Verdict::Member);
  CHECK(v.mass_defect < 1e-9);
  CHECK(v.max_imag < 1e-9);
  auto back = oracles::measure_from_candidate(mu.group(), v.candidate);
  CHECK(total_variation(back, mu) < 1e-9);
}

TEST_CASE("integer powers match iterated convolution") {
  auto mu = biased_bernoulli();
  for (int n : {2, 3}) {
    auto v = fractional_power(mu, double(n));
    CHECK(v.verdict == Verdict::Member);
    auto back = oracles::measure_from_candidate(mu.group(), v.candidate);
    CHECK(total_variation(back, convolve_power(mu, n)) < 1e-9);
  }
}

TEST_CASE("the square root of a biased coin fails on the k = 2 coefficient") {
  auto mu = biased_bernoulli();
  auto v = fractional_power(mu, 0.5);
  CHECK(v.verdict == Verdict::NonMember);
  auto ref = oracles::binomial_power_coeffs(0.7, 0.3, 0.5, 24);
  double ref_min = ref[0];
  for (double c : ref) ref_min = std::min(ref_min, c);
  CHECK(v.min_coefficient == doctest::Approx(ref_min).epsilon(1e-6));
  CHECK(v.min_coefficient == doctest::Approx(-0.0192).epsilon(1e-2));
  REQUIRE(v.candidate.count(2) == 1);
  CHECK(v.candidate.at(2) == doctest::Approx(ref[2]).epsilon(1e-6));
}

TEST_CASE("candidate coefficients follow the binomial series at non-integer t") {
  auto mu = biased_bernoulli();
  for (double t : {0.25, 0.5, 1.5, 2.5}) {
    auto v = fractional_power(mu, t);
    auto ref = oracles::binomial_power_coeffs(0.7, 0.3, t, 12);
    for (int k = 0; k < 12; ++k) {
      double got = v.candidate.count(k) ? v.candidate.at(k) : 0.0;
      CHECK(got == doctest::Approx(ref[std::size_t(k)]).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("is_member gives clean booleans and raises on the gray zone only") {
  auto mu = biased_bernoulli();
  CHECK(is_member(mu, 2.0));
  CHECK_FALSE(is_member(mu, 0.5));
  CHECK_FALSE(is_member(mu, 1.5));
}

TEST_CASE("a Poisson law is divisible at every tested t") {
  auto mu = poisson(0.7);
  for (double t : {0.37, 0.5, 1.0, 2.0}) {
    auto v = fractional_power(mu, t);
    CHECK(v.verdict == Verdict::Member);
    // coefficients of the rate 0.7*t Poisson law
    double w = std::exp(-0.7 * t);
    for (int k = 0; k <= 10; ++k) {
      CHECK(v.candidate.at(k) == doctest::Approx(w).epsilon(1e-9).scale(1.0));
      w *= 0.7 * t / double(k + 1);
    }
  }
}

TEST_CASE("nth_root_admissible returns the witness measure") {
  auto root = nth_root_admissible(poisson(0.7), 2);
  auto ref = make_measure(GroupSpec::integers(), oracles::poisson_atoms(0.35));
  CHECK(total_variation(root, ref) < 1e-9);

  auto sq = make_measure(GroupSpec::integers(), {{0, 0.49}, {1, 0.42}, {2, 0.09}});
  auto r2 = nth_root_admissible(sq, 2);
  CHECK(total_variation(r2, biased_bernoulli()) < 1e-9);
  CHECK(total_variation(convolve_power(r2, 2), sq) < 1e-7);

  auto d0 = dirac(GroupSpec::integers(), 0);
  CHECK(total_variation(nth_root_admissible(d0, 5), d0) < 1e-12);

  CHECK(error_code_of([] {
          nth_root_admissible(biased_bernoulli(), 2);
        }) == errc::not_a_member);
  CHECK(error_code_of([] {
          nth_root_admissible(biased_bernoulli(), 0);
        }) == errc::invalid_argument);
}

TEST_CASE("inadmissible measures are rejected before synthesis") {
  auto cosm = make_measure(GroupSpec::integers(), {{-1, 0.5}, {1, 0.5}});
  CHECK(error_code_of([&] { fractional_power(cosm, 0.5); }) == errc::not_admissible);
  CHECK(error_code_of([] {
          fractional_power(dirac(GroupSpec::integers(), 1), 0.5);
        }) == errc::not_admissible);
  CHECK(error_code_of([] {
          fractional_power(biased_bernoulli(), 0.0);
        }) == errc::invalid_argument);
  CHECK(error_code_of([] {
          fractional_power(biased_bernoulli(), -1.0);
        }) == errc::invalid_argument);
}

TEST_CASE("lattice measures ride the same synthesis when psi is periodic") {
  auto mu = biased_bernoulli(GroupSpec::real_lattice(0.5));
  auto v = fractional_power(mu, 2.0);
  CHECK(v.verdict == Verdict::Member);
  auto back = oracles::measure_from_candidate(mu.group(), v.candidate);
  CHECK(total_variation(back, convolve_power(mu, 2)) < 1e-9);

  auto half = fractional_power(mu, 0.5);
  CHECK(half.verdict == Verdict::NonMember);

  CHECK(error_code_of([] {
          fractional_power(dirac(GroupSpec::real_lattice(1.0), 1), 0.5);
        }) == errc::unsupported_group);
}

TEST_CASE("cyclic synthesis uses the exact transform") {
  auto hi = make_measure(GroupSpec::cyclic(2), {{0, 0.75}, {1, 0.25}});
  auto v = fractional_power(hi, 0.5);
  CHECK(v.verdict == Verdict::Member);
  CHECK(v.candidate.at(0) == doctest::Approx((1 + std::sqrt(0.5)) / 2).epsilon(1e-12));
  CHECK(v.candidate.at(1) == doctest::Approx((1 - std::sqrt(0.5)) / 2).epsilon(1e-12));

  auto lo = make_measure(GroupSpec::cyclic(2), {{0, 0.3}, {1, 0.7}});
  auto w = fractional_power(lo, 0.5);
  CHECK(w.verdict == Verdict::NonMember);
  CHECK(w.max_imag == doctest::Approx(std::sqrt(0.4) / 2).epsilon(1e-9));

  auto half = make_measure(GroupSpec::cyclic(2), {{0, 0.5}, {1, 0.5}});
  CHECK(error_code_of([&] { fractional_power(half, 0.5); }) == errc::not_admissible);
}

TEST_CASE("verdicts carry the grid actually used") {
  auto v = fractional_power(biased_bernoulli(), 0.5);
  CHECK(v.grid_used >= 256);
  CHECK((v.grid_used & (v.grid_used - 1)) == 0);
}
