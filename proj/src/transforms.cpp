#include "fock/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fock/lattice.hpp"

namespace fock {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(what);
}

}  // namespace

double SampledField::max_value() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.value);
  return m;
}

QuadratureResult berezin_measure_quadrature(const Measure& mu, double t, ComplexPoint z,
                                            const FockWeight& w, const QuadratureSpec& spec) {
  require_positive(t, "berezin_measure: t must be > 0");
  const double alpha = w.alpha();
  const double c = 0.5 * alpha * t;
  const Complex zc = z.value();
  const double pref = alpha / kPi;
  const auto g = [=](Complex om) -> Complex { return pref * std::exp(-c * std::norm(zc - om)); };
  return integrate_measure(g, GaussianEnvelope{zc, c, std::log(pref)}, mu, spec);
}

double berezin_measure(const Measure& mu, double t, ComplexPoint z, const FockWeight& w,
                       const QuadratureSpec& spec) {
  require_positive(t, "berezin_measure: t must be > 0");
  const double alpha = w.alpha();
  const double c = 0.5 * alpha * t;
  if (const auto* atomic = mu.get_if<AtomicMeasure>()) {
    double s = 0.0;
    for (const auto& a : atomic->atoms) s += a.mass * std::exp(-c * std::norm(z.value() - a.point.value()));
    return alpha / kPi * s;
  }
  if (const auto* leb = mu.get_if<LebesgueMeasure>()) return 2.0 * leb->scale / t;
  if (const auto* g = mu.get_if<GaussianDensityMeasure>()) {
    // Gaussian-Gaussian convolution.
    const double b = g->beta;
    return alpha * g->scale / (b + c) * std::exp(-(b * c / (b + c)) * std::norm(z.value()));
  }
  return std::max(0.0, berezin_measure_quadrature(mu, t, z, w, spec).value.real());
}

QuadratureResult berezin_function(const RealSymbol& f, double a, ComplexPoint z,
                                  const QuadratureSpec& spec) {
  require_positive(a, "berezin_function: a must be > 0");
  if (!f.f) throw std::invalid_argument("berezin_function: empty symbol");
  const Complex zc = z.value();
  const double k = f.growth_degree;
  // (1 + |z| + s)^k e^{-a s^2/2} <= 2^k ((1 + |z|)^k + (k/(a e))^{k/2})
  double growth = std::pow(1.0 + std::abs(zc), k);
  if (k > 0) growth += std::pow(k / (a * std::numbers::e), 0.5 * k);
  growth *= std::pow(2.0, k);
  const double pref = a / kPi;
  const GaussianEnvelope env{zc, 0.5 * a, std::log(pref * std::max(f.growth_coef, 1e-300) * growth)};
  const auto g = [&](Complex om) -> Complex {
    return pref * f.f(om) * std::exp(-a * std::norm(zc - om));
  };
  return integrate_plane(g, env, spec);
}

double ball_measure(const Measure& mu, ComplexPoint z, double delta, const QuadratureSpec& spec) {
  require_positive(delta, "ball_measure: delta must be > 0");
  if (const auto* atomic = mu.get_if<AtomicMeasure>()) {
    double s = 0.0;
    for (const auto& a : atomic->atoms)
      if (std::abs(a.point.value() - z.value()) <= delta) s += a.mass;
    return s;
  }
  if (const auto* leb = mu.get_if<LebesgueMeasure>()) return leb->scale * kPi * delta * delta;
  const auto density = [&](Complex w) -> Complex { return mu.density_at(w); };
  return std::max(0.0, integrate_disk(density, z.value(), delta, spec).real());
}

namespace {

void check_grid(double grid_radius, double spacing) {
  require_positive(spacing, "field: spacing must be > 0");
  if (!(grid_radius >= spacing)) throw std::invalid_argument("field: grid radius must be >= spacing");
}

}  // namespace

BerezinField berezin_field(const Measure& mu, double t, const FockWeight& w, double grid_radius,
                           double spacing, const QuadratureSpec& spec) {
  check_grid(grid_radius, spacing);
  require_positive(t, "berezin_field: t must be > 0");
  const auto points = square_grid_points(grid_radius, spacing);
  BerezinField out{t, w, {spacing, grid_radius, {}}};
  out.field.samples.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    out.field.samples[i] = {points[i], berezin_measure(mu, t, points[i], w, spec)};
  });
  return out;
}

SampledField ball_measure_field(const Measure& mu, double delta, double grid_radius, double spacing,
                                const QuadratureSpec& spec) {
  check_grid(grid_radius, spacing);
  const auto points = square_grid_points(grid_radius, spacing);
  SampledField out{spacing, grid_radius, {}};
  out.samples.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    out.samples[i] = {points[i], ball_measure(mu, points[i], delta, spec)};
  });
  return out;
}

double berezin_upper_bound(const Measure& mu, double t, const FockWeight& w) {
  const double alpha = w.alpha();
  const double c = 0.5 * alpha * t;
  if (const auto* atomic = mu.get_if<AtomicMeasure>()) {
    double s = 0.0;
    for (const auto& a : atomic->atoms) s += a.mass;
    return alpha / kPi * s;
  }
  if (const auto* g = mu.get_if<GaussianDensityMeasure>()) return alpha * g->scale / (g->beta + c);
  // density <= bound everywhere
  return 2.0 * mu.density_bound() / t;
}

}  // namespace fock
