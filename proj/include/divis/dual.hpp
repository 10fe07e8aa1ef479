#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "divis/measure.hpp"

namespace divis {

/// Sampled values of the characteristic function on the dual group.
/// Points are dual coordinates in radians: for Z the circle [0, 2*pi)
/// sampled uniformly, for Z_N exactly the N characters 2*pi*j/N, for a
/// real lattice a symmetric window [-Y, Y] containing 0.
struct DualGrid {
  GroupSpec group = GroupSpec::integers();
  std::vector<double> points;
  std::vector<std::complex<double>> values;
};

struct ZeroPoint {
  double location = 0.0;           // dual coordinate, radians
  int order = 0;                   // multiplicity k >= 1
  double leading_coefficient = 0;  // |mu_hat^(k)(location)| / k!
};

enum class AdmissibilityFailure { None, HasZeros, NonzeroWinding };

/// The continuous logarithm psi of mu_hat with psi(0) = 0, together with
/// the winding number of mu_hat (Z only) and the admissibility verdict.
/// psi is empty when mu_hat has zeros (no continuous logarithm exists
/// along the sampled path).
struct SecondCharacteristic {
  DualGrid grid;
  std::vector<std::complex<double>> psi;
  long long winding = 0;  // Z only; 0 for other groups
  bool admissible = false;
  AdmissibilityFailure failure = AdmissibilityFailure::None;
  /// Total increment of Im psi across one full period (Z only); equals
  /// 2*pi*winding up to accumulated rounding.
  double total_phase_increment = 0.0;
  /// max_j |exp(psi_j) - mu_hat(theta_j)| over the grid.
  double max_exp_residual = 0.0;
};

struct DualConfig {
  double zero_tol = 1e-10;
  double order_tol = 1e-8;
  std::size_t max_grid = std::size_t{1} << 20;
};

/// mu_hat(theta) = sum_x w_x exp(i * x_eff * theta), where x_eff is the
/// support point itself for Z and Z_N and point*h for a lattice.
std::complex<double> char_fn(const Measure& mu, double theta);

/// Exact j-th derivative of mu_hat in theta; j <= 12.
std::complex<double> char_fn_derivative(const Measure& mu, double theta, int order);

/// Uniform sampling of mu_hat. For Z: n_points must be a power of two
/// >= 16. For Z_N: n_points is ignored, all N characters are returned.
/// For a lattice: window Y is required and the grid is the n_points+1
/// symmetric points of [-Y, Y] (n_points even, >= 16).
DualGrid sample_char_fn(const Measure& mu, std::size_t n_points,
                        std::optional<double> window = std::nullopt);

/// Locates all zeros of mu_hat within one period (Z, Z_N, and lattice
/// measures; zeros of a lattice characteristic function repeat with the
/// period 2*pi/h). Coarse scan of |mu_hat|^2 followed by bisection on its
/// derivative, then the order is read off the first derivative exceeding
/// order_tol.
std::vector<ZeroPoint> find_zeros(const Measure& mu, double zero_tol = 1e-10,
                                  double order_tol = 1e-8);

/// Degree of mu_hat as a map from the circle to C*; requires group Z and
/// a zero-free characteristic function. Phase increments are summed on a
/// grid doubled from 256 until every step is below pi/2 in magnitude.
long long winding_number(const Measure& mu);

/// Builds the second characteristic by continuous lifting. For Z the
/// measure is admissible iff there are no zeros and the winding is 0;
/// for a lattice (dual R) no zeros suffices; for Z_N (discrete dual) no
/// zeros suffices and psi is the principal branch per character.
SecondCharacteristic second_characteristic(const Measure& mu, std::size_t n_points,
                                           std::optional<double> window = std::nullopt,
                                           const DualConfig& config = {});

namespace detail {

/// Values of the phase polynomial P(z) = sum_x w_x z^x on the uniform
/// n-point circle grid (z = exp(2*pi*i*j/n)), evaluated by FFT.
std::vector<std::complex<double>> circle_values(const Measure& mu, std::size_t n);

struct CircleLift {
  std::size_t n = 0;                        // final grid size after refinement
  std::vector<std::complex<double>> values; // mu_hat on the grid
  std::vector<std::complex<double>> psi;    // continuous log, psi[0] = 0
  double total_phase = 0.0;                 // full-circle phase increment
  long long winding = 0;
};

/// Unwraps log mu_hat around the circle, doubling the grid (from
/// max(n_start, 256, 8*degree)) until every consecutive phase step has
/// magnitude < pi/2. Throws no_convergence past config.max_grid and
/// has_zeros if a grid value vanishes exactly.
CircleLift lift_on_circle(const Measure& mu, std::size_t n_start,
                          const DualConfig& config = {});

/// Winding of the phase polynomial, shared by Z and the lattice period
/// drift; same contract as lift_on_circle.
long long circle_winding(const Measure& mu, const DualConfig& config = {});

}  // namespace detail

}  // namespace divis
