#pragma once

// Berezin transforms of measures and functions, and the ball-measure
// function z -> mu(B(z, delta)).

#include <functional>
#include <vector>

#include "fock/core.hpp"
#include "fock/quadrature.hpp"

namespace fock {

struct FieldSample {
  ComplexPoint z;
  double value = 0.0;
};

/// Values on the square grid spacing*(m + i n), |z| <= grid_radius.
struct SampledField {
  double spacing = 0.0;
  double grid_radius = 0.0;
  std::vector<FieldSample> samples;

  double max_value() const;
};

struct BerezinField {
  double t = 2.0;
  FockWeight weight{1.0};
  SampledField field;
};

/// (alpha/pi) * int e^{-(alpha t/2)|z-w|^2} dmu(w). Closed forms for
/// Lebesgue and Gaussian densities, exact sums for atoms, quadrature else.
double berezin_measure(const Measure& mu, double t, ComplexPoint z, const FockWeight& w,
                       const QuadratureSpec& spec = {});

/// Same integral, always by integrate_measure; the cross-check route for the
/// closed forms.
QuadratureResult berezin_measure_quadrature(const Measure& mu, double t, ComplexPoint z,
                                            const FockWeight& w, const QuadratureSpec& spec = {});

/// A real symbol with |f(w)| <= growth_coef * (1 + |w|)^growth_degree.
struct RealSymbol {
  std::function<double(Complex)> f;
  double growth_coef = 1.0;
  int growth_degree = 0;
};

/// B_a f(z) = (a/pi) * int f(w) e^{-a|z-w|^2} dA(w).
QuadratureResult berezin_function(const RealSymbol& f, double a, ComplexPoint z,
                                  const QuadratureSpec& spec = {});

/// mu of the closed disk B(z, delta).
double ball_measure(const Measure& mu, ComplexPoint z, double delta,
                    const QuadratureSpec& spec = {});

BerezinField berezin_field(const Measure& mu, double t, const FockWeight& w, double grid_radius,
                           double spacing, const QuadratureSpec& spec = {});

SampledField ball_measure_field(const Measure& mu, double delta, double grid_radius,
                                double spacing, const QuadratureSpec& spec = {});

/// Upper bound of sup_z mu~_t(z), from closed forms or declared density bounds.
double berezin_upper_bound(const Measure& mu, double t, const FockWeight& w);

}  // namespace fock
