#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "divis/errors.hpp"

namespace divis {

enum class GroupKind { Integers, Cyclic, RealLattice };

/// The underlying group of a measure: Z, Z_N, or the lattice h*Z in R.
/// Support points are always stored as integers; for a real lattice the
/// point is the integer multiplier of the step h.
class GroupSpec {
 public:
  static GroupSpec integers() { return GroupSpec(GroupKind::Integers, 0, 0.0); }
  static GroupSpec cyclic(std::int64_t order);
  static GroupSpec real_lattice(double step);

  GroupKind kind() const noexcept { return kind_; }
  std::int64_t order() const;  // Cyclic only
  double step() const;         // RealLattice only

  bool operator==(const GroupSpec& other) const noexcept;
  bool operator!=(const GroupSpec& other) const noexcept { return !(*this == other); }

  std::string describe() const;

 private:
  GroupSpec(GroupKind kind, std::int64_t order, double step)
      : kind_(kind), order_(order), step_(step) {}

  GroupKind kind_;
  std::int64_t order_;
  double step_;
};

/// Reduced positive fraction num/den.
struct Rational {
  long long num = 1;
  long long den = 1;

  Rational() = default;
  Rational(long long numerator, long long denominator);

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational& other) const noexcept {
    return num == other.num && den == other.den;
  }
  std::string str() const;

  static Rational parse(const std::string& text);
};

/// A finitely supported probability measure. Immutable after construction;
/// weights are nonnegative and sum to 1.
class Measure {
 public:
  const GroupSpec& group() const noexcept { return group_; }
  const std::map<std::int64_t, double>& atoms() const noexcept { return atoms_; }

  std::size_t support_size() const noexcept { return atoms_.size(); }
  double weight(std::int64_t point) const;
  /// Largest |point| in the support (polynomial degree of the characteristic function).
  std::int64_t max_abs_point() const noexcept;

  bool is_point_mass() const noexcept { return atoms_.size() == 1; }

 private:
  friend Measure make_measure(const GroupSpec&,
                              std::span<const std::pair<std::int64_t, double>>);
  Measure(GroupSpec group, std::map<std::int64_t, double> atoms)
      : group_(group), atoms_(std::move(atoms)) {}

  GroupSpec group_;
  std::map<std::int64_t, double> atoms_;
};

/// Validates and builds a measure. Duplicate points are merged by summing
/// weights; the total mass is renormalized only when it deviates from 1 by
/// at most 1e-9, otherwise the input is rejected.
Measure make_measure(const GroupSpec& group,
                     std::span<const std::pair<std::int64_t, double>> atoms);
Measure make_measure(const GroupSpec& group,
                     std::initializer_list<std::pair<std::int64_t, double>> atoms);

/// Point mass at the given support point.
Measure dirac(const GroupSpec& group, std::int64_t point);

Measure convolve(const Measure& a, const Measure& b);

/// n-fold self-convolution by repeated squaring.
Measure convolve_power(const Measure& a, long long n);

/// (1/2) sum |a(x) - b(x)| over the union of supports; in [0, 1].
double total_variation(const Measure& a, const Measure& b);

}  // namespace divis
