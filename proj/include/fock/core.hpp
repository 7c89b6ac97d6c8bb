#pragma once

// Domain types for Fock spaces F^p_alpha: plane points, the Gaussian weight,
// positive measures, entire functions, and log-domain weighted evaluation.

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fock {

using Complex = std::complex<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A point of the complex plane with finite coordinates.
struct ComplexPoint {
  double re = 0.0;
  double im = 0.0;

  ComplexPoint() = default;
  ComplexPoint(double re, double im);
  ComplexPoint(Complex z);  // NOLINT(google-explicit-constructor)

  Complex value() const { return {re, im}; }
  operator Complex() const { return value(); }  // NOLINT(google-explicit-constructor)
  double abs() const;

  friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;
};

/// The parameter alpha of d(lambda_alpha) = (alpha/pi) e^{-alpha|z|^2} dA.
class FockWeight {
 public:
  explicit FockWeight(double alpha);
  double alpha() const { return alpha_; }

  friend bool operator==(const FockWeight&, const FockWeight&) = default;

 private:
  double alpha_;
};

// ---------------------------------------------------------------------------
// Verdicts and diagnostic reports shared by every test battery.

enum class Verdict { holds, fails, inconclusive };

const char* to_string(Verdict v);

struct DiagnosticEntry {
  std::string name;
  ComplexPoint point;
  double value = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

struct DiagnosticReport {
  std::string title;
  std::vector<DiagnosticEntry> entries;

  /// fails if any entry fails, inconclusive if any is inconclusive, else holds.
  Verdict overall() const;
};

// ---------------------------------------------------------------------------
// Measures.

struct Atom {
  ComplexPoint point;
  double mass = 0.0;
};

struct AtomicMeasure {
  std::vector<Atom> atoms;
};

/// dmu = density(w) dA, zero outside |w| <= support_radius. `bound` is a
/// declared upper bound of the density, used for quadrature tail bounds;
/// infinity when none is known, which sends integrals to the growth study.
struct DensityMeasure {
  std::function<double(Complex)> density;
  double support_radius = kInfinity;
  double bound = 0.0;
};

/// dmu = profile(|w|) dA.
struct RadialMeasure {
  std::function<double(double)> profile;
  double support_radius = kInfinity;
  double bound = 0.0;
};

/// dmu = scale * e^{-beta|w|^2} dA.
struct GaussianDensityMeasure {
  double beta = 1.0;
  double scale = 1.0;
};

/// dmu = scale * dA.
struct LebesgueMeasure {
  double scale = 1.0;
};

class Measure {
 public:
  using Variant = std::variant<AtomicMeasure, DensityMeasure, RadialMeasure,
                               GaussianDensityMeasure, LebesgueMeasure>;

  static Measure atomic(std::vector<Atom> atoms);
  static Measure empty() { return atomic({}); }
  static Measure dirac(ComplexPoint point, double mass = 1.0);
  static Measure density(std::function<double(Complex)> density, double bound,
                         double support_radius = kInfinity);
  static Measure radial(std::function<double(double)> profile, double bound,
                        double support_radius = kInfinity);
  static Measure gaussian(double beta, double scale = 1.0);
  static Measure lebesgue(double scale = 1.0);

  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  bool is_atomic() const { return get_if<AtomicMeasure>() != nullptr; }
  /// Radial about the origin (Radial, GaussianDensity, Lebesgue).
  bool is_radial() const;

  /// Density with respect to dA; throws std::logic_error for atomic measures.
  double density_at(Complex w) const;
  double density_bound() const;

  /// Radius of a disk containing the support; infinity when unbounded.
  double support_radius() const;

  /// Total mass when it has a closed form: atomic sums and Gaussian
  /// densities. Infinity for Lebesgue; nullopt when quadrature is needed.
  std::optional<double> closed_form_total_mass() const;

  Measure scaled(double factor) const;

  /// Sum of two atomic measures (concatenated atom lists).
  static Measure sum(const Measure& a, const Measure& b);

  std::string describe() const;

 private:
  explicit Measure(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// ---------------------------------------------------------------------------
// Entire functions.

struct Polynomial {
  std::vector<Complex> coefficients;  // c_0 .. c_d
};

struct KernelTerm {
  Complex coef;
  ComplexPoint center;
};

/// sum_j c_j K_{z_j}, K_z(w) = e^{alpha conj(z) w}.
struct KernelCombination {
  std::vector<KernelTerm> terms;
};

/// k_z = K_z / sqrt(K_z(z)).
struct NormalizedKernel {
  ComplexPoint center;
};

/// z^n, or e_n(z) = sqrt(alpha^n / n!) z^n when normalized.
struct Monomial {
  int n = 0;
  bool normalized = false;
};

/// e^{a z^2 + b z + c}.
struct QuadraticExponential {
  Complex a;
  Complex b;
  Complex c;
};

class EntireFunction {
 public:
  using Variant = std::variant<Polynomial, KernelCombination, NormalizedKernel,
                               Monomial, QuadraticExponential>;

  static EntireFunction polynomial(std::vector<Complex> coefficients);
  static EntireFunction constant(Complex c) { return polynomial({c}); }
  static EntireFunction kernel_combination(std::vector<KernelTerm> terms);
  static EntireFunction normalized_kernel(ComplexPoint center);
  static EntireFunction monomial(int n);
  /// The orthonormal basis element e_n of F^2_alpha.
  static EntireFunction orthonormal(int n);
  static EntireFunction quadratic_exponential(Complex a, Complex b = 0.0, Complex c = 0.0);

  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  /// c*f for the variants closed under scaling (Polynomial,
  /// KernelCombination, QuadraticExponential); throws otherwise.
  EntireFunction scaled(Complex factor) const;

  std::string describe() const;

 private:
  explicit EntireFunction(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// ---------------------------------------------------------------------------
// Log-domain values and Gaussian envelopes.

/// A complex number stored as (log|z|, arg z). Zero has log_abs = -inf.
struct LogValue {
  double log_abs = -kInfinity;
  double phase = 0.0;

  Complex to_complex() const;
  double abs() const;
  bool is_zero() const { return log_abs == -kInfinity; }
};

/// Accumulates sum_k exp(log_abs_k + i phase_k) without overflow.
LogValue log_sum(const std::vector<LogValue>& terms);

/// Upper bound |g(w)| <= exp(log_bound) * exp(-rate |w - center|^2).
/// rate == 0 means the function is bounded but not known to decay.
struct GaussianEnvelope {
  Complex center = 0.0;
  double rate = 0.0;
  double log_bound = 0.0;

  bool decays() const { return rate > 0.0; }

  /// Bound on the integral of the envelope outside the disk of radius R
  /// about `center`: exp(log_bound) * (pi/rate) * exp(-rate R^2).
  double tail_bound(double radius) const;

  /// Smallest radius whose tail bound is below `tolerance`.
  double radius_for(double tolerance) const;

  /// Envelope of the product of two enveloped functions.
  GaussianEnvelope times(const GaussianEnvelope& other) const;
  /// Envelope of |g|^p.
  GaussianEnvelope power(double p) const;
  GaussianEnvelope scaled(double factor) const;
};

/// Envelope of w -> |f(w)| e^{-alpha|w|^2/2}; nullopt when no Gaussian or
/// bounded envelope is known (e.g. e^{a z^2} with |a| > alpha/2).
std::optional<GaussianEnvelope> weighted_envelope(const EntireFunction& f, const FockWeight& w);

/// f(z) e^{-alpha|z|^2/2} in log-domain.
LogValue eval_weighted_log(const EntireFunction& f, Complex z, const FockWeight& w);

/// f(z) e^{-alpha|z|^2/2}. Every factor is combined in log-domain and
/// exponentiated once, so kernels far from the origin do not overflow.
Complex eval_weighted(const EntireFunction& f, ComplexPoint z, const FockWeight& w);

/// Unweighted f(z); throws std::overflow_error when |f(z)| is not representable.
Complex eval(const EntireFunction& f, ComplexPoint z, const FockWeight& w);

/// Largest natural-log magnitude accepted by unweighted evaluation.
inline constexpr double kMaxLogMagnitude = 700.0;

/// K_z(w) = e^{alpha conj(z) w}. Throws std::overflow_error when
/// alpha Re(conj(z) w) exceeds kMaxLogMagnitude; use eval_weighted instead.
Complex kernel_eval(ComplexPoint z, ComplexPoint w, const FockWeight& a);

struct QuadratureSpec;

/// For each sample point z, the truncated integral of
/// |K_z(w)| e^{-alpha|w|^2} dmu(w) with a finiteness verdict.
DiagnosticReport condition_m_probe(const Measure& mu, const FockWeight& w,
                                   const std::vector<ComplexPoint>& sample,
                                   const QuadratureSpec& spec);

}  // namespace fock
