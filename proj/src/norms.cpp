#include "fock/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fock {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<Complex> sup_hints(const EntireFunction& f, const FockWeight& w) {
  std::vector<Complex> hints{0.0};
  std::visit(Overloaded{
                 [&](const Monomial& m) { hints.emplace_back(std::sqrt(m.n / w.alpha()), 0.0); },
                 [&](const NormalizedKernel& k) { hints.push_back(k.center.value()); },
                 [&](const KernelCombination& k) {
                   for (const auto& t : k.terms) hints.push_back(t.center.value());
                 },
                 [](const auto&) {},
             },
             f.variant());
  return hints;
}

struct SupResult {
  double log_value = -kInfinity;
  Complex argmax = 0.0;
  bool on_boundary = false;
};

SupResult weighted_sup_impl(const EntireFunction& f, const FockWeight& w, Complex center,
                            double radius, const QuadratureSpec& spec,
                            const std::function<bool(Complex)>& keep) {
  const double h = 1.0 / spec.cells_per_unit;
  const auto n = static_cast<long>(std::ceil(radius / h));
  const auto eval = [&](Complex z) { return eval_weighted_log(f, z, w).log_abs; };

  SupResult best;
  std::vector<SupResult> rows(static_cast<std::size_t>(2 * n + 1));
  parallel_for(rows.size(), [&](std::size_t ii) {
    const long i = static_cast<long>(ii) - n;
    SupResult r;
    for (long j = -n; j <= n; ++j) {
      const Complex z = center + Complex(i * h, j * h);
      if (keep && !keep(z)) continue;
      const double v = eval(z);
      if (v > r.log_value) {
        r.log_value = v;
        r.argmax = z;
        r.on_boundary = (std::abs(i) == n || std::abs(j) == n);
      }
    }
    rows[ii] = r;
  });
  for (const auto& r : rows)
    if (r.log_value > best.log_value) best = r;
  for (Complex hint : sup_hints(f, w)) {
    if (keep && !keep(hint)) continue;
    const double v = eval(hint);
    if (v > best.log_value) best = {v, hint, false};
  }
  if (best.log_value == -kInfinity) return best;

  // Pattern search from the best sample.
  const Complex dirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  double step = h;
  for (int it = 0; it < 400 && step > 1e-12; ++it) {
    bool moved = false;
    for (Complex d : dirs) {
      const Complex z = best.argmax + step * d;
      if (std::abs(z.real() - center.real()) > radius || std::abs(z.imag() - center.imag()) > radius)
        continue;
      if (keep && !keep(z)) continue;
      const double v = eval(z);
      if (v > best.log_value) {
        best.log_value = v;
        best.argmax = z;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

double pth_power_norm(double log_scale, double integral, double p) {
  if (integral <= 0.0) return 0.0;
  return std::exp(log_scale + std::log(integral) / p);
}

std::string grid_note(const QuadratureSpec& spec) {
  std::ostringstream os;
  os << "grid supremum, spacing " << 1.0 / spec.cells_per_unit << ", refined by pattern search";
  return os.str();
}

}  // namespace

void NormParams::validate() const {
  if (!(p >= 1.0)) throw std::invalid_argument("NormParams: p must be >= 1");
}

double weighted_sup(const EntireFunction& f, const FockWeight& w, Complex center, double radius,
                    const QuadratureSpec& spec, const std::function<bool(Complex)>& keep) {
  const SupResult s = weighted_sup_impl(f, w, center, radius, spec, keep);
  return s.log_value == -kInfinity ? 0.0 : std::exp(s.log_value);
}

NormResult fock_norm(const EntireFunction& f, const NormParams& params, const QuadratureSpec& spec) {
  params.validate();
  spec.validate();
  if (params.measure) throw std::invalid_argument("fock_norm: params carry a measure; use mu_norm");
  const FockWeight& w = params.weight;
  const double alpha = w.alpha();
  const auto env = weighted_envelope(f, w);
  const Complex center = env ? env->center : Complex(0.0);

  const SupResult sup = weighted_sup_impl(f, w, center, spec.cutoff_radius, spec, nullptr);
  NormResult out;
  if (std::isinf(params.p)) {
    out.value = sup.log_value == -kInfinity ? 0.0 : std::exp(sup.log_value);
    out.note = grid_note(spec);
    if (sup.on_boundary && !env) {
      out.verdict = Verdict::fails;
      out.note = "supremum reached at the grid boundary; f is not in F^inf";
    }
    return out;
  }
  if (sup.log_value == -kInfinity) return out;

  const double p = params.p;
  const double log_s = sup.log_value;
  const auto g = [&](Complex z) -> Complex {
    const LogValue v = eval_weighted_log(f, z, w);
    return v.is_zero() ? 0.0 : std::exp(p * (v.log_abs - log_s));
  };
  std::optional<GaussianEnvelope> env_p;
  if (env && env->decays()) {
    env_p = env->power(p);
    env_p->log_bound -= p * log_s;
  }
  QuadratureResult r;
  if (f.get_if<Monomial>() && env_p) {
    // Radial integrand: Gauss-Legendre in r avoids the cusp of |z|^{np} at 0.
    const double radius = env_p->radius_for(spec.tolerance);
    const int panels = std::max(8, static_cast<int>(std::ceil(radius * spec.cells_per_unit)));
    const auto radial = [&](double rho) { return rho * g(Complex(rho, 0.0)).real(); };
    r.value = 2.0 * kPi * integrate_line(radial, 0.0, radius, panels);
    r.radius = radius;
  } else {
    r = integrate_plane(g, env_p, spec);
  }
  const double integral = p * alpha / (2.0 * kPi) * r.value.real();
  out.value = pth_power_norm(log_s, integral, p);
  out.verdict = r.verdict;
  if (r.verdict == Verdict::fails)
    out.note = "truncated integrals grow with the cutoff; f is not in F^p";
  else if (r.verdict == Verdict::inconclusive)
    out.note = r.growth.empty() ? "edge contribution above tolerance" : "truncated growth inconclusive";
  return out;
}

NormResult mu_norm(const EntireFunction& f, const NormParams& params, const QuadratureSpec& spec) {
  params.validate();
  spec.validate();
  if (!params.measure) throw std::invalid_argument("mu_norm: params carry no measure; use fock_norm");
  const Measure& mu = *params.measure;
  const FockWeight& w = params.weight;
  const double p = params.p;
  NormResult out;

  if (const auto* atomic = mu.get_if<AtomicMeasure>()) {
    double top = -kInfinity;
    std::vector<double> logs;
    for (const auto& a : atomic->atoms) {
      logs.push_back(eval_weighted_log(f, a.point.value(), w).log_abs);
      top = std::max(top, logs.back());
    }
    if (top == -kInfinity) return out;
    if (std::isinf(p)) {
      out.value = std::exp(top);
      return out;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < logs.size(); ++j)
      s += atomic->atoms[j].mass * std::exp(p * (logs[j] - top));
    out.value = pth_power_norm(top, s, p);
    return out;
  }

  // Supremum over the support: the whole plane unless the support is bounded.
  const double support = mu.support_radius();
  std::function<bool(Complex)> keep;
  if (mu.get_if<DensityMeasure>() || mu.get_if<RadialMeasure>())
    keep = [&mu](Complex z) { return mu.density_at(z) > 0.0; };
  const auto env = weighted_envelope(f, w);
  const Complex center = std::isinf(support) ? (env ? env->center : Complex(0.0)) : Complex(0.0);
  const double radius = std::isinf(support) ? spec.cutoff_radius : support;
  const SupResult sup = weighted_sup_impl(f, w, center, radius, spec, keep);
  if (std::isinf(p)) {
    out.value = sup.log_value == -kInfinity ? 0.0 : std::exp(sup.log_value);
    out.note = grid_note(spec);
    return out;
  }
  if (sup.log_value == -kInfinity) return out;

  const double log_s = sup.log_value;
  const auto g = [&](Complex z) -> Complex {
    const LogValue v = eval_weighted_log(f, z, w);
    return v.is_zero() ? 0.0 : std::exp(p * (v.log_abs - log_s));
  };
  std::optional<GaussianEnvelope> env_p;
  if (env) {
    env_p = env->power(p);
    env_p->log_bound -= p * log_s;
  }
  QuadratureResult r;
  if (f.get_if<Monomial>() && mu.is_radial() && env_p) {
    const double radius = env_p->radius_for(spec.tolerance);
    r.value = integrate_radial([&](double rho) { return g(Complex(rho, 0.0)).real(); }, mu, radius, spec);
  } else {
    r = integrate_measure(g, env_p, mu, spec);
  }
  out.value = pth_power_norm(log_s, r.value.real(), p);
  out.verdict = r.verdict;
  if (r.verdict == Verdict::fails) out.note = "truncated integrals grow with the cutoff";
  return out;
}

NormResult norm(const EntireFunction& f, const NormParams& params, const QuadratureSpec& spec) {
  return params.measure ? mu_norm(f, params, spec) : fock_norm(f, params, spec);
}

NormCurve norm_limit_probe(const EntireFunction& f, const NormParams& base,
                           std::span<const double> p_sequence, const QuadratureSpec& spec) {
  if (p_sequence.empty()) throw std::invalid_argument("norm_limit_probe: empty p sequence");
  for (std::size_t i = 0; i < p_sequence.size(); ++i) {
    if (!(p_sequence[i] >= 1.0) || std::isinf(p_sequence[i]))
      throw std::invalid_argument("norm_limit_probe: exponents must be finite and >= 1");
    if (i > 0 && !(p_sequence[i] > p_sequence[i - 1]))
      throw std::invalid_argument("norm_limit_probe: p sequence must be increasing");
  }
  if (base.measure) {
    const QuadratureResult mass = total_mass(*base.measure, spec);
    if (mass.verdict == Verdict::fails || !std::isfinite(mass.value.real()))
      throw std::domain_error("norm_limit_probe: the measure must have finite total mass");
  }
  NormCurve curve;
  NormParams params = base;
  for (double p : p_sequence) {
    params.p = p;
    curve.points.emplace_back(p, norm(f, params, spec).value);
  }
  params.p = kInfinity;
  curve.limit = norm(f, params, spec).value;
  return curve;
}

PointwiseEstimate pointwise_estimate_check(const EntireFunction& f, ComplexPoint a, double r,
                                           double p, const FockWeight& w,
                                           const QuadratureSpec& spec) {
  if (!(r > 0.0)) throw std::invalid_argument("pointwise_estimate_check: r must be > 0");
  if (!(p > 0.0)) throw std::invalid_argument("pointwise_estimate_check: p must be > 0");
  const auto power = [&](Complex z) -> double {
    const LogValue v = eval_weighted_log(f, z, w);
    return v.is_zero() ? 0.0 : std::exp(p * v.log_abs);
  };
  PointwiseEstimate out;
  out.lhs = power(a.value());
  out.disk_integral =
      integrate_disk([&](Complex z) -> Complex { return power(z); }, a.value(), r, spec).real();
  out.rhs_unit = out.disk_integral / (r * r);
  out.measured_c = out.lhs == 0.0 ? 0.0 : out.lhs / out.rhs_unit;
  return out;
}

TruncatedNormCurve field_lp_norm(const SampledField& field, double p, std::span<const double> radii) {
  if (!(p >= 1.0)) throw std::invalid_argument("field_lp_norm: p must be >= 1");
  std::vector<double> default_radii;
  if (radii.empty()) {
    default_radii = dyadic_radii(field.grid_radius);
    radii = default_radii;
  }
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw std::invalid_argument("field_lp_norm: radii must increase");

  const bool sup = std::isinf(p);
  const double cell = field.spacing * field.spacing;
  std::vector<double> shell(radii.size(), 0.0);
  for (const auto& s : field.samples) {
    const double d = s.z.abs();
    const auto k = static_cast<std::size_t>(
        std::lower_bound(radii.begin(), radii.end(), d * (1.0 - 1e-12)) - radii.begin());
    if (k == radii.size()) continue;
    const double v = std::abs(s.value);
    shell[k] = sup ? std::max(shell[k], v) : shell[k] + std::pow(v, p) * cell;
  }
  std::vector<double> cumulative(radii.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    acc = sup ? std::max(acc, shell[k]) : acc + shell[k];
    cumulative[k] = acc;
  }
  TruncatedNormCurve out;
  out.verdict = classify_increments(cumulative);
  for (std::size_t k = 0; k < radii.size(); ++k)
    out.points.emplace_back(radii[k], sup ? cumulative[k] : std::pow(cumulative[k], 1.0 / p));
  return out;
}

}  // namespace fock
