#include "fock/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace fock {

namespace {

constexpr int kGaussPoints = 10;

// Symmetric Gauss-Legendre nodes and weights on [-1, 1].
const std::vector<std::pair<double, double>>& gauss_legendre_rule() {
  static const std::vector<std::pair<double, double>> rule = [] {
    using Rule = boost::math::quadrature::gauss<double, kGaussPoints>;
    std::vector<std::pair<double, double>> out;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        out.emplace_back(0.0, w[i]);
      } else {
        out.emplace_back(-x[i], w[i]);
        out.emplace_back(x[i], w[i]);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }();
  return rule;
}

thread_local bool t_inside_parallel = false;

QuadratureResult integrate_square(const PlaneIntegrand& g, Complex center, double radius, double h,
                                  double tolerance) {
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(2.0 * radius / h)));
  const double half = 0.5 * static_cast<double>(n) * h;
  const double x0 = center.real() - half + 0.5 * h;
  const double y0 = center.imag() - half + 0.5 * h;

  std::vector<Complex> row_sums(n);
  std::vector<double> row_edges(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    std::vector<Complex> row(n);
    const double x = x0 + static_cast<double>(i) * h;
    double edge = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = g(Complex(x, y0 + static_cast<double>(j) * h));
      if (i == 0 || i + 1 == n || j == 0 || j + 1 == n) edge += std::abs(row[j]);
    }
    row_sums[i] = pairwise_sum(row);
    row_edges[i] = edge;
  });

  QuadratureResult out;
  out.radius = half;
  out.value = pairwise_sum(row_sums) * (h * h);
  double edge = 0.0;
  for (double e : row_edges) edge += e;
  out.edge_contribution = edge * h * h;
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
    out.verdict = Verdict::fails;
  else if (out.edge_contribution > tolerance)
    out.verdict = Verdict::inconclusive;
  return out;
}

// Truncated integrals over dyadic disks about `center`; classifies growth.
QuadratureResult integrate_growth(const PlaneIntegrand& g, Complex center, double r_max, double h) {
  const std::vector<double> radii = dyadic_radii(r_max);
  const std::size_t shells = radii.size();
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(2.0 * r_max / h)));
  const double half = 0.5 * static_cast<double>(n) * h;
  const double x0 = center.real() - half + 0.5 * h;
  const double y0 = center.imag() - half + 0.5 * h;

  std::vector<std::vector<Complex>> row_shells(n, std::vector<Complex>(shells, 0.0));
  parallel_for(n, [&](std::size_t i) {
    const double x = x0 + static_cast<double>(i) * h;
    for (std::size_t j = 0; j < n; ++j) {
      const Complex w(x, y0 + static_cast<double>(j) * h);
      const double d = std::abs(w - center);
      if (d > r_max) continue;
      const auto k = static_cast<std::size_t>(
          std::lower_bound(radii.begin(), radii.end(), d) - radii.begin());
      row_shells[i][k] += g(w);
    }
  });

  QuadratureResult out;
  out.radius = r_max;
  out.tail_bound = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> cumulative;
  Complex acc = 0.0;
  std::vector<Complex> column(n);
  for (std::size_t k = 0; k < shells; ++k) {
    for (std::size_t i = 0; i < n; ++i) column[i] = row_shells[i][k];
    acc += pairwise_sum(column) * (h * h);
    cumulative.push_back(std::abs(acc));
    out.growth.emplace_back(radii[k], std::abs(acc));
  }
  out.value = acc;
  if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
    out.verdict = Verdict::fails;
  } else {
    out.verdict = to_verdict(classify_increments(cumulative));
  }
  return out;
}

double cell_width(const std::optional<GaussianEnvelope>& env, const QuadratureSpec& spec) {
  const double unit = (env && env->rate > 1.0) ? 1.0 / std::sqrt(env->rate) : 1.0;
  return unit / spec.cells_per_unit;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("QuadratureSpec: tolerance must be > 0");
  if (cells_per_unit < 1) throw std::invalid_argument("QuadratureSpec: cells_per_unit must be >= 1");
  if (!(cutoff_radius > 0.0) || !std::isfinite(cutoff_radius))
    throw std::invalid_argument("QuadratureSpec: cutoff_radius must be finite and > 0");
}

QuadratureSpec QuadratureSpec::refined() const {
  QuadratureSpec s = *this;
  s.cells_per_unit *= 2;
  return s;
}

const char* to_string(Growth g) {
  switch (g) {
    case Growth::converging:
      return "converging";
    case Growth::diverging:
      return "diverging";
    case Growth::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict to_verdict(Growth g) {
  switch (g) {
    case Growth::converging:
      return Verdict::holds;
    case Growth::diverging:
      return Verdict::fails;
    case Growth::inconclusive:
      return Verdict::inconclusive;
  }
  return Verdict::inconclusive;
}

Growth classify_increments(std::span<const double> cumulative) {
  if (cumulative.empty()) return Growth::inconclusive;
  double scale = 0.0;
  for (double c : cumulative) scale = std::max(scale, std::abs(c));
  if (!std::isfinite(scale)) return Growth::diverging;
  const double eps = 1e-12 * scale;
  const std::size_t n = cumulative.size();
  const double last = n >= 2 ? cumulative[n - 1] - cumulative[n - 2] : cumulative[0];
  if (std::abs(last) <= eps) return Growth::converging;
  if (n < 2) return Growth::inconclusive;
  const double prev = n >= 3 ? cumulative[n - 2] - cumulative[n - 3] : cumulative[0];
  if (std::abs(prev) <= eps) return Growth::diverging;
  const double ratio = std::abs(last) / std::abs(prev);
  if (ratio < kConvergingRatio) return Growth::converging;
  if (ratio > kDivergingRatio) return Growth::diverging;
  return Growth::inconclusive;
}

Verdict classify_decay(std::span<const double> values) {
  if (values.size() < 2) return Verdict::inconclusive;
  double top = 0.0;
  for (double v : values) top = std::max(top, std::abs(v));
  const double last = std::abs(values.back());
  if (last <= 1e-12 * top || top == 0.0) return Verdict::holds;
  const double prev = std::abs(values[values.size() - 2]);
  if (prev == 0.0) return Verdict::fails;
  const double ratio = last / prev;
  if (ratio < kConvergingRatio) return Verdict::holds;
  if (ratio > kDivergingRatio) return Verdict::fails;
  return Verdict::inconclusive;
}

std::vector<double> dyadic_radii(double r_max, int count) {
  std::vector<double> r(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) r[static_cast<std::size_t>(k)] = r_max / std::ldexp(1.0, count - 1 - k);
  return r;
}

Complex pairwise_sum(std::span<const Complex> values) {
  if (values.empty()) return 0.0;
  if (values.size() <= 8) {
    Complex s = 0.0;
    for (auto v : values) s += v;
    return s;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (t_inside_parallel || hw == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(hw, n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto run = [&] {
    t_inside_parallel = true;
    try {
      for (std::size_t i = next++; i < n && !failed; i = next++) body(i);
    } catch (...) {
      if (!failed.exchange(true)) error = std::current_exception();
    }
    t_inside_parallel = false;
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

QuadratureResult integrate_plane(const PlaneIntegrand& g,
                                 const std::optional<GaussianEnvelope>& envelope,
                                 const QuadratureSpec& spec) {
  spec.validate();
  const double h = cell_width(envelope, spec);
  const Complex center = envelope ? envelope->center : Complex(0.0);
  if (spec.auto_cutoff) {
    if (!envelope || !envelope->decays())
      return integrate_growth(g, center, spec.cutoff_radius, 1.0 / spec.cells_per_unit);
    const double radius = std::max(envelope->radius_for(spec.tolerance), h);
    QuadratureResult r = integrate_square(g, center, radius, h, spec.tolerance);
    r.tail_bound = envelope->tail_bound(r.radius);
    return r;
  }
  QuadratureResult r = integrate_square(g, center, spec.cutoff_radius, h, spec.tolerance);
  r.tail_bound = (envelope && envelope->decays()) ? envelope->tail_bound(r.radius)
                                                 : std::numeric_limits<double>::quiet_NaN();
  return r;
}

QuadratureResult integrate_measure(const PlaneIntegrand& g,
                                   const std::optional<GaussianEnvelope>& envelope,
                                   const Measure& mu, const QuadratureSpec& spec) {
  spec.validate();
  if (const auto* atomic = mu.get_if<AtomicMeasure>()) {
    std::vector<Complex> terms;
    terms.reserve(atomic->atoms.size());
    for (const auto& a : atomic->atoms) terms.push_back(g(a.point.value()) * a.mass);
    QuadratureResult r;
    r.value = pairwise_sum(terms);
    if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag())) r.verdict = Verdict::fails;
    return r;
  }
  if (const auto* leb = mu.get_if<LebesgueMeasure>()) {
    const double s = leb->scale;
    std::optional<GaussianEnvelope> env;
    if (envelope) env = envelope->scaled(s);
    return integrate_plane([&](Complex w) { return s * g(w); }, env, spec);
  }
  if (const auto* gauss = mu.get_if<GaussianDensityMeasure>()) {
    const double beta = gauss->beta;
    const double s = gauss->scale;
    std::optional<GaussianEnvelope> env;
    if (envelope) env = envelope->times(GaussianEnvelope{0.0, beta, std::log(s)});
    return integrate_plane([&](Complex w) { return s * std::exp(-beta * std::norm(w)) * g(w); },
                           env, spec);
  }

  // Density and radial profiles.
  const double bound = mu.density_bound();
  const double support = mu.support_radius();
  const auto integrand = [&](Complex w) -> Complex {
    const double rho = mu.density_at(w);
    return rho == 0.0 ? Complex(0.0) : rho * g(w);
  };
  std::optional<GaussianEnvelope> env;
  if (envelope && std::isfinite(bound)) env = envelope->scaled(bound);
  if (std::isinf(support)) return integrate_plane(integrand, env, spec);

  if (env && env->decays() && spec.auto_cutoff) {
    const double r_env = env->radius_for(spec.tolerance);
    if (std::abs(env->center) + r_env < support) return integrate_plane(integrand, env, spec);
  }
  // Polar rule over the support disk, so the edge of the support is a node boundary.
  QuadratureSpec polar = spec;
  if (env && env->rate > 1.0)
    polar.cells_per_unit = static_cast<int>(std::ceil(spec.cells_per_unit * std::sqrt(env->rate)));
  QuadratureResult r;
  r.value = integrate_disk(integrand, 0.0, support, polar);
  r.radius = support;
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag())) r.verdict = Verdict::fails;
  return r;
}

QuadratureResult total_mass(const Measure& mu, const QuadratureSpec& spec) {
  if (auto m = mu.closed_form_total_mass(); m && std::isfinite(*m)) {
    QuadratureResult r;
    r.value = *m;
    return r;
  }
  const auto one = [](Complex) -> Complex { return 1.0; };
  return integrate_measure(one, GaussianEnvelope{0.0, 0.0, 0.0}, mu, spec);
}

double integrate_line(const std::function<double(double)>& h, double a, double b, int panels) {
  if (panels < 1) panels = 1;
  const auto& rule = gauss_legendre_rule();
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    double s = 0.0;
    for (const auto& [x, w] : rule) s += w * h(mid + 0.5 * width * x);
    total += 0.5 * width * s;
  }
  return total;
}

double integrate_radial(const std::function<double(double)>& h, const Measure& mu, double radius,
                        const QuadratureSpec& spec) {
  if (!mu.is_radial()) throw std::invalid_argument("integrate_radial: measure is not radial");
  const double r_max = std::min(radius, mu.support_radius());
  if (!(r_max > 0.0)) return 0.0;
  const int panels = std::max(4, static_cast<int>(std::ceil(r_max * spec.cells_per_unit / 2.0)));
  const auto integrand = [&](double r) {
    const double rho = mu.density_at(Complex(r, 0.0));
    return rho == 0.0 ? 0.0 : h(r) * rho * r;
  };
  return 2.0 * std::numbers::pi * integrate_line(integrand, 0.0, r_max, panels);
}

Complex integrate_disk(const PlaneIntegrand& g, Complex center, double radius,
                       const QuadratureSpec& spec) {
  if (!(radius > 0.0)) return 0.0;
  const auto& rule = gauss_legendre_rule();
  const int panels = std::max(2, static_cast<int>(std::ceil(radius * spec.cells_per_unit / 2.0)));
  const int n_theta =
      std::max(8 * spec.cells_per_unit,
               static_cast<int>(std::ceil(2.0 * std::numbers::pi * radius * spec.cells_per_unit)));
  const double width = radius / panels;
  const double dtheta = 2.0 * std::numbers::pi / n_theta;
  std::vector<Complex> ring(static_cast<std::size_t>(n_theta));
  std::vector<Complex> radial_terms;
  radial_terms.reserve(static_cast<std::size_t>(panels) * rule.size());
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (const auto& [x, w] : rule) {
      const double r = mid + 0.5 * width * x;
      for (int k = 0; k < n_theta; ++k)
        ring[static_cast<std::size_t>(k)] = g(center + std::polar(r, k * dtheta));
      radial_terms.push_back(pairwise_sum(ring) * (dtheta * r * 0.5 * width * w));
    }
  }
  return pairwise_sum(radial_terms);
}

}  // namespace fock
