#pragma once

// Integration over the plane and against measures. Every integrand carries a
// Gaussian envelope, which fixes the truncation radius and a rigorous tail
// bound; integrands without one go through a growth study over dyadic disks.

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fock/core.hpp"

namespace fock {

struct QuadratureSpec {
  double cutoff_radius = 8.0;
  /// Midpoint cells per unit length. With a decaying envelope of rate c > 1
  /// the unit is the envelope width 1/sqrt(c) instead.
  int cells_per_unit = 8;
  double tolerance = 1e-8;
  bool auto_cutoff = true;

  void validate() const;
  QuadratureSpec refined() const;
};

/// Growth classification of a sequence of truncated values.
enum class Growth { converging, diverging, inconclusive };

const char* to_string(Growth g);
Verdict to_verdict(Growth g);

/// Ratio rule on the last two increments of `cumulative`: converging below
/// 0.5, diverging above 0.95, inconclusive in between. A vanishing last
/// increment is converging; growth out of a zero increment is diverging.
Growth classify_increments(std::span<const double> cumulative);

inline constexpr double kConvergingRatio = 0.5;
inline constexpr double kDivergingRatio = 0.95;

/// The same ratio rule on a sequence that should decay to zero: holds when
/// the last value is negligible or the last ratio is below 0.5, fails above
/// 0.95 (including growth from zero).
Verdict classify_decay(std::span<const double> values);

/// R_max / 2^(count-1), ..., R_max / 2, R_max.
std::vector<double> dyadic_radii(double r_max, int count = 5);

struct QuadratureResult {
  Complex value = 0.0;
  double radius = 0.0;
  /// Bound on the neglected tail; NaN when no envelope is known.
  double tail_bound = 0.0;
  /// Absolute contribution of the outermost ring of cells.
  double edge_contribution = 0.0;
  Verdict verdict = Verdict::holds;
  /// Truncated |value| at increasing radii when the growth path is used.
  std::vector<std::pair<double, double>> growth;

  bool diverging() const { return verdict == Verdict::fails; }
};

using PlaneIntegrand = std::function<Complex(Complex)>;

/// Tensor midpoint rule over the square covering the truncation disk.
/// Row sums are combined by a fixed pairwise tree, so the result does not
/// depend on the number of worker threads.
QuadratureResult integrate_plane(const PlaneIntegrand& g,
                                 const std::optional<GaussianEnvelope>& envelope,
                                 const QuadratureSpec& spec);

/// Integral of g against mu. Atomic measures are exact sums.
QuadratureResult integrate_measure(const PlaneIntegrand& g,
                                   const std::optional<GaussianEnvelope>& envelope,
                                   const Measure& mu, const QuadratureSpec& spec);

/// Total mass of mu. Lebesgue measure and unbounded densities go through the
/// growth study, so an infinite mass shows up as a diverging verdict.
QuadratureResult total_mass(const Measure& mu, const QuadratureSpec& spec = {});

/// Integral of h(|w|) dmu(w) for measures radial about the origin, as
/// 2 pi * int_0^R h(r) rho(r) r dr with composite Gauss-Legendre panels.
/// `radius` is where h has decayed below the tolerance.
double integrate_radial(const std::function<double(double)>& h, const Measure& mu,
                        double radius, const QuadratureSpec& spec);

/// Integral of g over the disk B(center, radius) in polar coordinates:
/// Gauss-Legendre in r, periodic trapezoid in theta.
Complex integrate_disk(const PlaneIntegrand& g, Complex center, double radius,
                       const QuadratureSpec& spec);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
double integrate_line(const std::function<double(double)>& h, double a, double b, int panels);

/// Pairwise summation in a fixed tree order.
Complex pairwise_sum(std::span<const Complex> values);

/// Runs body(i) for i in [0, n) on the available hardware threads. Nested
/// calls run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fock
