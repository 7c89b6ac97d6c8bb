#include "fock/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fock/norms.hpp"
#include "fock/transforms.hpp"

namespace fock {

namespace {

constexpr double kPi = std::numbers::pi;

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fails || b == Verdict::fails) return Verdict::fails;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::holds;
}

}  // namespace

bool ToeplitzMatrix::is_hermitian(double tol) const {
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::VectorXd ToeplitzMatrix::eigenvalues() const {
  const Eigen::MatrixXcd h = 0.5 * (entries + entries.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Eigen::VectorXd ToeplitzMatrix::singular_values() const {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(entries);
  return svd.singularValues();
}

QuadratureResult apply_toeplitz_weighted(const Measure& mu, const EntireFunction& f, ComplexPoint z,
                                         const FockWeight& w, const QuadratureSpec& spec) {
  const double alpha = w.alpha();
  const Complex zc = z.value();
  const double log_pref = std::log(alpha / kPi);
  // (alpha/pi) F(w) conj(k_z(w) e^{-alpha|w|^2/2}), F = f e^{-alpha|w|^2/2}
  const auto g = [&](Complex om) -> Complex {
    const LogValue fv = eval_weighted_log(f, om, w);
    if (fv.is_zero()) return 0.0;
    const double log_abs = log_pref + fv.log_abs - 0.5 * alpha * std::norm(om - zc);
    const double phase = fv.phase - alpha * (std::conj(zc) * om).imag();
    return std::polar(std::exp(log_abs), phase);
  };
  std::optional<GaussianEnvelope> env;
  if (auto ef = weighted_envelope(f, w))
    env = ef->times(GaussianEnvelope{zc, 0.5 * alpha, 0.0}).scaled(alpha / kPi);
  return integrate_measure(g, env, mu, spec);
}

Complex apply_toeplitz(const Measure& mu, const EntireFunction& f, ComplexPoint z,
                       const FockWeight& w, const QuadratureSpec& spec) {
  const QuadratureResult r = apply_toeplitz_weighted(mu, f, z, w, spec);
  if (r.verdict == Verdict::fails)
    throw std::domain_error("apply_toeplitz: the defining integral diverges");
  if (r.value == 0.0) return 0.0;
  const double log_abs = std::log(std::abs(r.value)) + 0.5 * w.alpha() * std::norm(z.value());
  if (log_abs > kMaxLogMagnitude)
    throw std::overflow_error("apply_toeplitz: |T_mu f(z)| overflows; use apply_toeplitz_weighted");
  return std::polar(std::exp(log_abs), std::arg(r.value));
}

ToeplitzMatrix toeplitz_matrix(const Measure& mu, int dimension, const FockWeight& w,
                               const QuadratureSpec& spec) {
  if (dimension < 1) throw std::invalid_argument("toeplitz_matrix: dimension must be >= 1");
  const double alpha = w.alpha();
  const auto n = static_cast<Eigen::Index>(dimension);
  ToeplitzMatrix out;
  out.entries = Eigen::MatrixXcd::Zero(n, n);
  out.weight = w;
  out.source = mu.describe();

  std::vector<EntireFunction> basis;
  for (int k = 0; k < dimension; ++k) basis.push_back(EntireFunction::orthonormal(k));

  if (const auto* atomic = mu.get_if<AtomicMeasure>()) {
    for (const auto& a : atomic->atoms) {
      std::vector<Complex> e(basis.size());
      for (std::size_t k = 0; k < basis.size(); ++k)
        e[k] = eval_weighted_log(basis[k], a.point.value(), w).to_complex();
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
          out.entries(r, c) += alpha / kPi * a.mass * e[static_cast<std::size_t>(c)] *
                               std::conj(e[static_cast<std::size_t>(r)]);
    }
    return out;
  }

  if (mu.is_radial()) {
    // Angular integration kills every off-diagonal entry.
    for (int k = 0; k < dimension; ++k) {
      const double log_norm = k * std::log(alpha) - std::lgamma(k + 1.0);
      const auto h = [&](double r) {
        if (r == 0.0) return k == 0 ? 1.0 : 0.0;
        return std::exp(2.0 * k * std::log(r) + log_norm - alpha * r * r);
      };
      const double peak = std::sqrt((2.0 * k + 1.0) / (2.0 * alpha));
      const double radius = peak + std::sqrt(-std::log(spec.tolerance * 1e-6) / alpha);
      out.entries(k, k) = alpha / kPi * integrate_radial(h, mu, radius, spec);
    }
    return out;
  }

  std::vector<GaussianEnvelope> envs;
  for (const auto& b : basis) envs.push_back(*weighted_envelope(b, w));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = r; c < n; ++c) {
      const auto& em = basis[static_cast<std::size_t>(c)];
      const auto& en = basis[static_cast<std::size_t>(r)];
      const auto g = [&](Complex om) -> Complex {
        return alpha / kPi * eval_weighted_log(em, om, w).to_complex() *
               std::conj(eval_weighted_log(en, om, w).to_complex());
      };
      const auto env = envs[static_cast<std::size_t>(c)]
                           .times(envs[static_cast<std::size_t>(r)])
                           .scaled(alpha / kPi);
      const QuadratureResult q = integrate_measure(g, env, mu, spec);
      out.entries(r, c) = q.value;
      out.entries(c, r) = std::conj(q.value);
      out.verdict = combine(out.verdict, q.verdict);
    }
  }
  return out;
}

BoundednessEstimate boundedness_estimate(const Measure& mu, const FockWeight& w, double grid_radius,
                                         const QuadratureSpec& spec, double spacing) {
  const BerezinField one = berezin_field(mu, 1.0, w, grid_radius, spacing, spec);
  const BerezinField two = berezin_field(mu, 2.0, w, grid_radius, spacing, spec);
  BoundednessEstimate out;
  out.upper_proxy = one.field.max_value();
  out.lower_proxy = two.field.max_value();
  out.growth = field_lp_norm(one.field, kInfinity).verdict;
  out.verdict = to_verdict(out.growth);
  return out;
}

CompactnessProbe compactness_probe(const Measure& mu, const FockWeight& w,
                                   const std::vector<double>& rings, const QuadratureSpec& spec,
                                   int angles, int matrix_dimension) {
  if (rings.size() < 4) throw std::invalid_argument("compactness_probe: need at least 4 rings");
  for (std::size_t i = 1; i < rings.size(); ++i)
    if (!(rings[i] > rings[i - 1])) throw std::invalid_argument("compactness_probe: rings must increase");
  CompactnessProbe out;
  std::vector<double> maxima;
  for (double radius : rings) {
    double best = 0.0;
    const int count = radius == 0.0 ? 1 : angles;
    for (int k = 0; k < count; ++k) {
      const Complex z = std::polar(radius, 2.0 * kPi * k / count);
      best = std::max(best, berezin_measure(mu, 1.0, z, w, spec));
    }
    out.ring_maxima.emplace_back(radius, best);
    maxima.push_back(best);
  }
  out.verdict = classify_decay(maxima);
  if (matrix_dimension > 0) {
    out.singular_values = toeplitz_matrix(mu, matrix_dimension, w, spec).singular_values();
    const double top = out.singular_values.size() ? out.singular_values(0) : 0.0;
    out.trailing_ratio = top > 0.0 ? out.singular_values(out.singular_values.size() - 1) / top : 0.0;
  }
  return out;
}

IdentityCheck berezin_operator_identity_check(const Measure& mu, ComplexPoint z, const FockWeight& w,
                                              const QuadratureSpec& spec) {
  const double alpha = w.alpha();
  const Complex zc = z.value();
  const EntireFunction kz = EntireFunction::normalized_kernel(z);
  IdentityCheck out;
  out.lhs = berezin_measure(mu, 2.0, z, w, spec);

  // <T k_z, k_z> = (alpha/pi) int [T k_z(s) e^{-alpha|s|^2/2}] conj(k_z(s) e^{-alpha|s|^2/2}) dA(s)
  const auto g = [&](Complex s) -> Complex {
    const Complex inner = apply_toeplitz_weighted(mu, kz, s, w, spec).value;
    return alpha / kPi * inner * std::conj(eval_weighted_log(kz, s, w).to_complex());
  };
  const double bound = alpha / kPi * berezin_upper_bound(mu, 1.0, w);
  const GaussianEnvelope env{zc, 0.5 * alpha, std::log(bound)};
  out.rhs = std::abs(integrate_plane(g, env, spec).value);
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

Measure DensitySymbol::as_measure() const { return Measure::density(phi, bound, support_radius); }

Complex function_symbol_apply(const DensitySymbol& phi, const EntireFunction& f, ComplexPoint z,
                              const FockWeight& w, const QuadratureSpec& spec) {
  return apply_toeplitz(phi.as_measure(), f, z, w, spec);
}

}  // namespace fock
