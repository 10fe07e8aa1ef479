#include "divis/measure.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace divis {

namespace {

constexpr double kMassGate = 1e-9;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    fail(errc::overflow, "support point overflow in convolution");
  return out;
}

std::int64_t mod_reduce(std::int64_t x, std::int64_t n) {
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

}  // namespace

GroupSpec GroupSpec::cyclic(std::int64_t order) {
  if (order < 2) fail(errc::invalid_argument, "cyclic group order must be >= 2");
  return GroupSpec(GroupKind::Cyclic, order, 0.0);
}

GroupSpec GroupSpec::real_lattice(double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    fail(errc::invalid_argument, "lattice step must be positive and finite");
  return GroupSpec(GroupKind::RealLattice, 0, step);
}

std::int64_t GroupSpec::order() const {
  if (kind_ != GroupKind::Cyclic)
    fail(errc::wrong_group, "order() requires a cyclic group");
  return order_;
}

double GroupSpec::step() const {
  if (kind_ != GroupKind::RealLattice)
    fail(errc::wrong_group, "step() requires a real lattice group");
  return step_;
}

bool GroupSpec::operator==(const GroupSpec& other) const noexcept {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case GroupKind::Integers: return true;
    case GroupKind::Cyclic: return order_ == other.order_;
    case GroupKind::RealLattice: return step_ == other.step_;
  }
  return false;
}

std::string GroupSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case GroupKind::Integers: os << "Z"; break;
    case GroupKind::Cyclic: os << "Z_" << order_; break;
    case GroupKind::RealLattice: os << "lattice(h=" << step_ << ")"; break;
  }
  return os.str();
}

Rational::Rational(long long numerator, long long denominator) {
  if (numerator <= 0 || denominator <= 0)
    fail(errc::invalid_argument, "rational must have positive numerator and denominator");
  long long g = std::gcd(numerator, denominator);
  num = numerator / g;
  den = denominator / g;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& text) {
  long long m = 0, l = 1;
  char slash = 0;
  std::istringstream is(text);
  if (!(is >> m)) fail(errc::parse_error, "cannot parse rational '" + text + "'");
  if (is >> slash) {
    if (slash != '/' || !(is >> l))
      fail(errc::parse_error, "cannot parse rational '" + text + "'");
  }
  std::string rest;
  if (is >> rest) fail(errc::parse_error, "trailing characters in rational '" + text + "'");
  return Rational(m, l);
}

double Measure::weight(std::int64_t point) const {
  auto it = atoms_.find(point);
  return it == atoms_.end() ? 0.0 : it->second;
}

std::int64_t Measure::max_abs_point() const noexcept {
  std::int64_t d = 0;
  for (const auto& [x, w] : atoms_) d = std::max<std::int64_t>(d, std::llabs(x));
  return d;
}

Measure make_measure(const GroupSpec& group,
                     std::span<const std::pair<std::int64_t, double>> atoms) {
  if (atoms.empty()) fail(errc::invalid_argument, "measure needs at least one atom");

  std::map<std::int64_t, double> merged;
  std::size_t index = 0;
  for (const auto& [point, w] : atoms) {
    if (!std::isfinite(w) || w < 0.0)
      fail(errc::negative_weight,
           "atom " + std::to_string(index) + " has negative or non-finite weight");
    if (group.kind() == GroupKind::Cyclic &&
        (point < 0 || point >= group.order()))
      fail(errc::point_out_of_range,
           "atom " + std::to_string(index) + " point " + std::to_string(point) +
               " outside {0,...," + std::to_string(group.order() - 1) + "}");
    merged[point] += w;
    ++index;
  }

  double mass = 0.0;
  for (const auto& [x, w] : merged) mass += w;
  if (std::abs(mass - 1.0) > kMassGate)
    fail(errc::mass_not_one,
         "weights sum to " + std::to_string(mass) + ", deviation exceeds 1e-9");
  for (auto& [x, w] : merged) w /= mass;

  return Measure(group, std::move(merged));
}

Measure make_measure(const GroupSpec& group,
                     std::initializer_list<std::pair<std::int64_t, double>> atoms) {
  return make_measure(group, std::span(atoms.begin(), atoms.size()));
}

Measure dirac(const GroupSpec& group, std::int64_t point) {
  return make_measure(group, {{point, 1.0}});
}

Measure convolve(const Measure& a, const Measure& b) {
  if (a.group() != b.group())
    fail(errc::group_mismatch, "convolution requires matching groups");

  const bool cyclic = a.group().kind() == GroupKind::Cyclic;
  const std::int64_t n = cyclic ? a.group().order() : 0;

  std::map<std::int64_t, double> out;
  for (const auto& [xa, wa] : a.atoms()) {
    for (const auto& [xb, wb] : b.atoms()) {
      std::int64_t p = checked_add(xa, xb);
      if (cyclic) p = mod_reduce(p, n);
      out[p] += wa * wb;
    }
  }

  std::vector<std::pair<std::int64_t, double>> atoms(out.begin(), out.end());
  return make_measure(a.group(), atoms);
}

Measure convolve_power(const Measure& a, long long n) {
  if (n < 1) fail(errc::invalid_argument, "convolution power must be >= 1");
  Measure base = a;
  Measure result = dirac(a.group(), 0);
  bool have_result = false;
  long long k = n;
  while (k > 0) {
    if (k & 1) {
      result = have_result ? convolve(result, base) : base;
      have_result = true;
    }
    k >>= 1;
    if (k > 0) base = convolve(base, base);
  }
  return result;
}

double total_variation(const Measure& a, const Measure& b) {
  if (a.group() != b.group())
    fail(errc::group_mismatch, "total variation requires matching groups");
  double sum = 0.0;
  auto ia = a.atoms().begin();
  auto ib = b.atoms().begin();
  while (ia != a.atoms().end() || ib != b.atoms().end()) {
    if (ib == b.atoms().end() || (ia != a.atoms().end() && ia->first < ib->first)) {
      sum += std::abs(ia->second);
      ++ia;
    } else if (ia == a.atoms().end() || ib->first < ia->first) {
      sum += std::abs(ib->second);
      ++ib;
    } else {
      sum += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * sum;
}

}  // namespace divis
