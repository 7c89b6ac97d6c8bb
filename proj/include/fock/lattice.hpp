#pragma once

// r-lattices of the plane: square lattices whose closed radius-r balls cover
// C with overlap multiplicity at most 4, and l^p diagnostics of ball sums.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fock/core.hpp"
#include "fock/quadrature.hpp"

namespace fock {

struct Lattice {
  double r = 1.0;
  double spacing = 0.0;
  /// Ordered by increasing modulus, ties broken by angle in [0, 2 pi).
  std::vector<ComplexPoint> centers;
  double extent_radius = 0.0;
  int multiplicity_bound = 4;
};

/// Centers spacing*(m + i n) with spacing = r*sqrt(2), truncated to
/// |a| <= extent + r. Every |z| <= extent is within r of a center.
Lattice make_lattice(double r, double extent_radius);

/// Points spacing*(m + i n) with |z| <= radius, in row-major grid order
/// (n outer, m inner, both increasing).
std::vector<ComplexPoint> square_grid_points(double radius, double spacing);

/// Atoms at the lattice centers, mass(k) at the k-th center in enumeration
/// order (k from 0).
Measure lattice_comb(const Lattice& lat, const std::function<double(std::size_t)>& mass);

/// mu(B(a_k, r)) in center enumeration order.
std::vector<double> lattice_ball_sums(const Measure& mu, const Lattice& lat,
                                      const QuadratureSpec& spec = {});

struct ShellSums {
  /// (shell radius, truncated l^p norm over centers with |a_k| <= radius).
  std::vector<std::pair<double, double>> points;
  Growth verdict = Growth::inconclusive;

  double total() const { return points.empty() ? 0.0 : points.back().second; }
};

/// Truncated l^p norms of `seq` accumulated over dyadic shells of the
/// lattice centers. p = infinity tracks the running maximum. `radii`
/// defaults to dyadic radii up to the outermost center.
ShellSums sequence_lp(std::span<const double> seq, const Lattice& lat, double p,
                      std::span<const double> radii = {});

}  // namespace fock
