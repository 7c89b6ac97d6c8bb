#pragma once

// Norm functionals ||.||_{p,alpha}, ||.||_{p,mu} and their p = infinity
// versions, the p -> infinity probes, the pointwise estimate for entire
// functions, and truncated L^p norms of sampled fields.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fock/core.hpp"
#include "fock/quadrature.hpp"
#include "fock/transforms.hpp"

namespace fock {

struct NormParams {
  double p = 2.0;  // kInfinity for the sup norms
  FockWeight weight{1.0};
  /// Absent: the (p alpha / 2 pi) dA normalization of ||.||_{p,alpha}.
  std::optional<Measure> measure;

  void validate() const;
};

struct NormResult {
  double value = 0.0;
  Verdict verdict = Verdict::holds;
  std::string note;

  bool diverging() const { return verdict == Verdict::fails; }
};

/// ||f||_{p,alpha} = [(p alpha / 2 pi) int |f e^{-alpha|z|^2/2}|^p dA]^{1/p}.
/// p = infinity is a grid supremum refined by pattern search and seeded with
/// the analytic maximizers of kernels and monomials.
NormResult fock_norm(const EntireFunction& f, const NormParams& params,
                     const QuadratureSpec& spec = {});

/// ||f||_{p,mu} = [int |f e^{-alpha|z|^2/2}|^p dmu]^{1/p}, no prefactor.
/// p = infinity is the supremum over the support (exact max over atoms).
NormResult mu_norm(const EntireFunction& f, const NormParams& params,
                   const QuadratureSpec& spec = {});

/// Dispatches to fock_norm or mu_norm on params.measure.
NormResult norm(const EntireFunction& f, const NormParams& params, const QuadratureSpec& spec = {});

struct NormCurve {
  std::vector<std::pair<double, double>> points;  // (p, norm)
  double limit = 0.0;                             // the p = infinity norm
};

/// Norms along an increasing p sequence plus the p = infinity target. The
/// measure case requires a finite total mass (throws std::domain_error).
NormCurve norm_limit_probe(const EntireFunction& f, const NormParams& base,
                           std::span<const double> p_sequence, const QuadratureSpec& spec = {});

struct PointwiseEstimate {
  double lhs = 0.0;            // |f(a) e^{-alpha|a|^2/2}|^p
  double disk_integral = 0.0;  // int_{B(a,r)} |f e^{-alpha|z|^2/2}|^p dA
  double rhs_unit = 0.0;       // disk_integral / r^2
  double measured_c = 0.0;     // lhs / rhs_unit
};

PointwiseEstimate pointwise_estimate_check(const EntireFunction& f, ComplexPoint a, double r,
                                           double p, const FockWeight& w,
                                           const QuadratureSpec& spec = {});

struct TruncatedNormCurve {
  std::vector<std::pair<double, double>> points;  // (R, truncated norm over |z| <= R)
  Growth verdict = Growth::inconclusive;

  double last() const { return points.empty() ? 0.0 : points.back().second; }
};

/// Truncated L^p(dA) norms of sampled values (cell area spacing^2) over
/// |z| <= R for each R in `radii` (default: dyadic up to the grid radius).
TruncatedNormCurve field_lp_norm(const SampledField& field, double p,
                                 std::span<const double> radii = {});

/// Supremum of |f e^{-alpha|z|^2/2}| over the square of half-width `radius`
/// about `center`, restricted to points accepted by `keep` when given.
double weighted_sup(const EntireFunction& f, const FockWeight& w, Complex center, double radius,
                    const QuadratureSpec& spec,
                    const std::function<bool(Complex)>& keep = nullptr);

}  // namespace fock
