#include "fock/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fock/quadrature.hpp"

namespace fock {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double norm2(Complex z) { return std::norm(z); }

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace

ComplexPoint::ComplexPoint(double re_, double im_) : re(re_), im(im_) {
  if (!std::isfinite(re) || !std::isfinite(im))
    throw std::invalid_argument("ComplexPoint: coordinates must be finite");
}

ComplexPoint::ComplexPoint(Complex z) : ComplexPoint(z.real(), z.imag()) {}

double ComplexPoint::abs() const { return std::hypot(re, im); }

FockWeight::FockWeight(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("FockWeight: alpha must be finite and > 0");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict DiagnosticReport::overall() const {
  bool inconclusive = false;
  for (const auto& e : entries) {
    if (e.verdict == Verdict::fails) return Verdict::fails;
    if (e.verdict == Verdict::inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::inconclusive : Verdict::holds;
}

// ---------------------------------------------------------------------------
// Measure

Measure Measure::atomic(std::vector<Atom> atoms) {
  for (const auto& a : atoms)
    require(a.mass > 0.0 && std::isfinite(a.mass), "atomic measure: masses must be finite and > 0");
  return Measure(AtomicMeasure{std::move(atoms)});
}

Measure Measure::dirac(ComplexPoint point, double mass) { return atomic({{point, mass}}); }

Measure Measure::density(std::function<double(Complex)> density, double bound,
                         double support_radius) {
  require(static_cast<bool>(density), "density measure: density function is empty");
  require(bound >= 0.0, "density measure: bound must be >= 0 (infinity when unknown)");
  require(support_radius > 0.0, "density measure: support radius must be > 0");
  return Measure(DensityMeasure{std::move(density), support_radius, bound});
}

Measure Measure::radial(std::function<double(double)> profile, double bound,
                        double support_radius) {
  require(static_cast<bool>(profile), "radial measure: profile is empty");
  require(bound >= 0.0, "radial measure: bound must be >= 0 (infinity when unknown)");
  require(support_radius > 0.0, "radial measure: support radius must be > 0");
  return Measure(RadialMeasure{std::move(profile), support_radius, bound});
}

Measure Measure::gaussian(double beta, double scale) {
  require(beta > 0.0 && std::isfinite(beta), "gaussian measure: beta must be finite and > 0");
  require(scale > 0.0 && std::isfinite(scale), "gaussian measure: scale must be finite and > 0");
  return Measure(GaussianDensityMeasure{beta, scale});
}

Measure Measure::lebesgue(double scale) {
  require(scale > 0.0 && std::isfinite(scale), "lebesgue measure: scale must be finite and > 0");
  return Measure(LebesgueMeasure{scale});
}

bool Measure::is_radial() const {
  return get_if<RadialMeasure>() || get_if<GaussianDensityMeasure>() || get_if<LebesgueMeasure>();
}

double Measure::density_at(Complex w) const {
  return std::visit(
      Overloaded{
          [](const AtomicMeasure&) -> double {
            throw std::logic_error("atomic measure has no density");
          },
          [&](const DensityMeasure& m) {
            return std::abs(w) <= m.support_radius ? m.density(w) : 0.0;
          },
          [&](const RadialMeasure& m) {
            const double r = std::abs(w);
            return r <= m.support_radius ? m.profile(r) : 0.0;
          },
          [&](const GaussianDensityMeasure& m) { return m.scale * std::exp(-m.beta * norm2(w)); },
          [](const LebesgueMeasure& m) { return m.scale; },
      },
      v_);
}

double Measure::density_bound() const {
  return std::visit(Overloaded{
                        [](const AtomicMeasure&) { return kInfinity; },
                        [](const DensityMeasure& m) { return m.bound; },
                        [](const RadialMeasure& m) { return m.bound; },
                        [](const GaussianDensityMeasure& m) { return m.scale; },
                        [](const LebesgueMeasure& m) { return m.scale; },
                    },
                    v_);
}

double Measure::support_radius() const {
  return std::visit(Overloaded{
                        [](const AtomicMeasure& m) {
                          double r = 0.0;
                          for (const auto& a : m.atoms) r = std::max(r, a.point.abs());
                          return r;
                        },
                        [](const DensityMeasure& m) { return m.support_radius; },
                        [](const RadialMeasure& m) { return m.support_radius; },
                        [](const GaussianDensityMeasure&) { return kInfinity; },
                        [](const LebesgueMeasure&) { return kInfinity; },
                    },
                    v_);
}

std::optional<double> Measure::closed_form_total_mass() const {
  return std::visit(Overloaded{
                        [](const AtomicMeasure& m) -> std::optional<double> {
                          double s = 0.0;
                          for (const auto& a : m.atoms) s += a.mass;
                          return s;
                        },
                        [](const DensityMeasure&) -> std::optional<double> { return std::nullopt; },
                        [](const RadialMeasure&) -> std::optional<double> { return std::nullopt; },
                        [](const GaussianDensityMeasure& m) -> std::optional<double> {
                          return m.scale * std::numbers::pi / m.beta;
                        },
                        [](const LebesgueMeasure&) -> std::optional<double> { return kInfinity; },
                    },
                    v_);
}

Measure Measure::scaled(double factor) const {
  require(factor > 0.0 && std::isfinite(factor), "Measure::scaled: factor must be finite and > 0");
  return std::visit(
      Overloaded{
          [&](const AtomicMeasure& m) {
            auto atoms = m.atoms;
            for (auto& a : atoms) a.mass *= factor;
            return Measure::atomic(std::move(atoms));
          },
          [&](const DensityMeasure& m) {
            auto f = m.density;
            return Measure::density([f, factor](Complex w) { return factor * f(w); },
                                    factor * m.bound, m.support_radius);
          },
          [&](const RadialMeasure& m) {
            auto f = m.profile;
            return Measure::radial([f, factor](double r) { return factor * f(r); },
                                   factor * m.bound, m.support_radius);
          },
          [&](const GaussianDensityMeasure& m) { return Measure::gaussian(m.beta, factor * m.scale); },
          [&](const LebesgueMeasure& m) { return Measure::lebesgue(factor * m.scale); },
      },
      v_);
}

Measure Measure::sum(const Measure& a, const Measure& b) {
  const auto* x = a.get_if<AtomicMeasure>();
  const auto* y = b.get_if<AtomicMeasure>();
  if (!x || !y) throw std::invalid_argument("Measure::sum: only atomic measures can be added");
  auto atoms = x->atoms;
  atoms.insert(atoms.end(), y->atoms.begin(), y->atoms.end());
  return atomic(std::move(atoms));
}

std::string Measure::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const AtomicMeasure& m) {
                   double s = 0.0;
                   for (const auto& a : m.atoms) s += a.mass;
                   os << "atomic(" << m.atoms.size() << " atoms, mass " << s << ")";
                 },
                 [&](const DensityMeasure& m) {
                   os << "density(bound " << m.bound << ", support " << m.support_radius << ")";
                 },
                 [&](const RadialMeasure& m) {
                   os << "radial(bound " << m.bound << ", support " << m.support_radius << ")";
                 },
                 [&](const GaussianDensityMeasure& m) {
                   os << "gaussian(beta " << m.beta << ", scale " << m.scale << ")";
                 },
                 [&](const LebesgueMeasure& m) { os << "lebesgue(scale " << m.scale << ")"; },
             },
             v_);
  return os.str();
}

// ---------------------------------------------------------------------------
// EntireFunction

EntireFunction EntireFunction::polynomial(std::vector<Complex> coefficients) {
  for (auto c : coefficients)
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), "polynomial: non-finite coefficient");
  if (coefficients.empty()) coefficients.push_back(0.0);
  return EntireFunction(Polynomial{std::move(coefficients)});
}

EntireFunction EntireFunction::kernel_combination(std::vector<KernelTerm> terms) {
  for (const auto& t : terms)
    require(std::isfinite(t.coef.real()) && std::isfinite(t.coef.imag()),
            "kernel combination: non-finite coefficient");
  return EntireFunction(KernelCombination{std::move(terms)});
}

EntireFunction EntireFunction::normalized_kernel(ComplexPoint center) {
  return EntireFunction(NormalizedKernel{center});
}

EntireFunction EntireFunction::monomial(int n) {
  require(n >= 0, "monomial: degree must be >= 0");
  return EntireFunction(Monomial{n, false});
}

EntireFunction EntireFunction::orthonormal(int n) {
  require(n >= 0, "orthonormal basis element: index must be >= 0");
  return EntireFunction(Monomial{n, true});
}

EntireFunction EntireFunction::quadratic_exponential(Complex a, Complex b, Complex c) {
  for (auto v : {a, b, c})
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            "quadratic exponential: non-finite parameter");
  return EntireFunction(QuadraticExponential{a, b, c});
}

EntireFunction EntireFunction::scaled(Complex factor) const {
  return std::visit(
      Overloaded{
          [&](const Polynomial& p) {
            auto c = p.coefficients;
            for (auto& x : c) x *= factor;
            return polynomial(std::move(c));
          },
          [&](const KernelCombination& k) {
            auto t = k.terms;
            for (auto& x : t) x.coef *= factor;
            return kernel_combination(std::move(t));
          },
          [&](const QuadraticExponential& q) {
            if (factor == 0.0) return polynomial({0.0});
            return quadratic_exponential(q.a, q.b, q.c + std::log(factor));
          },
          [](const auto&) -> EntireFunction {
            throw std::invalid_argument("EntireFunction::scaled: variant is not closed under scaling");
          },
      },
      v_);
}

std::string EntireFunction::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Polynomial& p) {
                   os << "poly(";
                   for (std::size_t k = 0; k < p.coefficients.size(); ++k)
                     os << (k ? "," : "") << format_complex(p.coefficients[k]);
                   os << ")";
                 },
                 [&](const KernelCombination& k) { os << "kernels(" << k.terms.size() << ")"; },
                 [&](const NormalizedKernel& k) {
                   os << "k(" << format_complex(k.center.value()) << ")";
                 },
                 [&](const Monomial& m) { os << (m.normalized ? "e_" : "z^") << m.n; },
                 [&](const QuadraticExponential& q) {
                   os << "exp(" << format_complex(q.a) << "z^2";
                   if (q.b != 0.0) os << "+(" << format_complex(q.b) << ")z";
                   if (q.c != 0.0) os << "+(" << format_complex(q.c) << ")";
                   os << ")";
                 },
             },
             v_);
  return os.str();
}

// ---------------------------------------------------------------------------
// Log-domain arithmetic

Complex LogValue::to_complex() const {
  if (is_zero()) return 0.0;
  return std::polar(std::exp(log_abs), phase);
}

double LogValue::abs() const { return is_zero() ? 0.0 : std::exp(log_abs); }

LogValue log_sum(const std::vector<LogValue>& terms) {
  double top = -kInfinity;
  for (const auto& t : terms) top = std::max(top, t.log_abs);
  if (top == -kInfinity) return {};
  Complex s = 0.0;
  for (const auto& t : terms)
    if (!t.is_zero()) s += std::polar(std::exp(t.log_abs - top), t.phase);
  if (s == 0.0) return {};
  return {top + std::log(std::abs(s)), std::arg(s)};
}

double GaussianEnvelope::tail_bound(double radius) const {
  if (!decays()) return kInfinity;
  return std::exp(log_bound + std::log(std::numbers::pi / rate) - rate * radius * radius);
}

double GaussianEnvelope::radius_for(double tolerance) const {
  if (!decays()) return kInfinity;
  const double l = log_bound + std::log(std::numbers::pi / rate) - std::log(tolerance);
  return l <= 0.0 ? 0.0 : std::sqrt(l / rate);
}

GaussianEnvelope GaussianEnvelope::times(const GaussianEnvelope& other) const {
  const double r = rate + other.rate;
  GaussianEnvelope out;
  out.rate = r;
  out.log_bound = log_bound + other.log_bound;
  if (r > 0.0) {
    out.center = (rate * center + other.rate * other.center) / r;
    out.log_bound -= rate * other.rate / r * norm2(center - other.center);
  } else {
    out.center = center;
  }
  return out;
}

GaussianEnvelope GaussianEnvelope::power(double p) const {
  return {center, rate * p, log_bound * p};
}

GaussianEnvelope GaussianEnvelope::scaled(double factor) const {
  return {center, rate, log_bound + std::log(factor)};
}

// ---------------------------------------------------------------------------
// Weighted evaluation

namespace {

// max_{r>=0} r^k e^{-a r^2}, in log form.
double log_peak_power_gaussian(int k, double a) {
  if (k == 0) return 0.0;
  const double kk = k;
  return 0.5 * kk * (std::log(kk / (2.0 * a)) - 1.0);
}

double log_orthonormal_factor(int n, double alpha) {
  return 0.5 * (n * std::log(alpha) - std::lgamma(n + 1.0));
}

}  // namespace

std::optional<GaussianEnvelope> weighted_envelope(const EntireFunction& f, const FockWeight& w) {
  const double alpha = w.alpha();
  return std::visit(
      Overloaded{
          [&](const Polynomial& p) -> std::optional<GaussianEnvelope> {
            // r^k e^{-alpha r^2/2} <= peak_k * e^{-alpha r^2/4}
            std::vector<LogValue> bounds;
            for (std::size_t k = 0; k < p.coefficients.size(); ++k) {
              const double c = std::abs(p.coefficients[k]);
              if (c == 0.0) continue;
              bounds.push_back(
                  {std::log(c) + log_peak_power_gaussian(static_cast<int>(k), alpha / 4.0), 0.0});
            }
            const LogValue total = log_sum(bounds);
            return GaussianEnvelope{0.0, alpha / 4.0, total.log_abs};
          },
          [&](const KernelCombination& k) -> std::optional<GaussianEnvelope> {
            if (k.terms.empty()) return GaussianEnvelope{0.0, alpha / 4.0, -kInfinity};
            Complex mean = 0.0;
            for (const auto& t : k.terms) mean += t.center.value();
            mean /= static_cast<double>(k.terms.size());
            // |w - z_j|^2 >= |w - m|^2 / 2 - |z_j - m|^2
            std::vector<LogValue> bounds;
            for (const auto& t : k.terms) {
              const double c = std::abs(t.coef);
              if (c == 0.0) continue;
              bounds.push_back({std::log(c) + 0.5 * alpha * norm2(t.center.value()) +
                                    0.5 * alpha * norm2(t.center.value() - mean),
                                0.0});
            }
            return GaussianEnvelope{mean, alpha / 4.0, log_sum(bounds).log_abs};
          },
          [&](const NormalizedKernel& k) -> std::optional<GaussianEnvelope> {
            return GaussianEnvelope{k.center.value(), alpha / 2.0, 0.0};
          },
          [&](const Monomial& m) -> std::optional<GaussianEnvelope> {
            double lb = log_peak_power_gaussian(m.n, alpha / 4.0);
            if (m.normalized) lb += log_orthonormal_factor(m.n, alpha);
            return GaussianEnvelope{0.0, alpha / 4.0, lb};
          },
          [&](const QuadraticExponential& q) -> std::optional<GaussianEnvelope> {
            const double d = alpha / 2.0 - std::abs(q.a);
            const double slack = 1e-14 * alpha;
            if (d > slack) {
              // -d|w|^2 + |b||w| <= -(d/2)|w|^2 + |b|^2/(2d)
              return GaussianEnvelope{0.0, d / 2.0, q.c.real() + norm2(q.b) / (2.0 * d)};
            }
            if (d >= -slack && q.b == 0.0) return GaussianEnvelope{0.0, 0.0, q.c.real()};
            return std::nullopt;
          },
      },
      f.variant());
}

LogValue eval_weighted_log(const EntireFunction& f, Complex z, const FockWeight& w) {
  const double alpha = w.alpha();
  const double half_weight = 0.5 * alpha * norm2(z);
  return std::visit(
      Overloaded{
          [&](const Polynomial& p) -> LogValue {
            const auto& c = p.coefficients;
            const double degree = static_cast<double>(c.size() - 1);
            double cmax = 0.0;
            for (auto x : c) cmax = std::max(cmax, std::abs(x));
            if (cmax == 0.0) return {};
            const double r = std::abs(z);
            if (degree * std::log(std::max(1.0, r)) + std::log(cmax) < 600.0) {
              Complex acc = 0.0;
              for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
              if (acc == 0.0) return {};
              return {std::log(std::abs(acc)) - half_weight, std::arg(acc)};
            }
            std::vector<LogValue> terms;
            const double lr = std::log(r);
            const double th = std::arg(z);
            for (std::size_t k = 0; k < c.size(); ++k) {
              if (c[k] == 0.0) continue;
              terms.push_back({std::log(std::abs(c[k])) + static_cast<double>(k) * lr,
                               std::arg(c[k]) + static_cast<double>(k) * th});
            }
            LogValue s = log_sum(terms);
            if (!s.is_zero()) s.log_abs -= half_weight;
            return s;
          },
          [&](const KernelCombination& k) -> LogValue {
            std::vector<LogValue> terms;
            terms.reserve(k.terms.size());
            for (const auto& t : k.terms) {
              if (t.coef == 0.0) continue;
              const Complex e = alpha * std::conj(t.center.value()) * z;
              terms.push_back({std::log(std::abs(t.coef)) + e.real() - half_weight,
                               std::arg(t.coef) + e.imag()});
            }
            return log_sum(terms);
          },
          [&](const NormalizedKernel& k) -> LogValue {
            const Complex c = k.center.value();
            return {-0.5 * alpha * norm2(z - c), alpha * (std::conj(c) * z).imag()};
          },
          [&](const Monomial& m) -> LogValue {
            double extra = m.normalized ? log_orthonormal_factor(m.n, alpha) : 0.0;
            if (m.n == 0) return {extra - half_weight, 0.0};
            if (z == 0.0) return {};
            return {m.n * std::log(std::abs(z)) + extra - half_weight, m.n * std::arg(z)};
          },
          [&](const QuadraticExponential& q) -> LogValue {
            const Complex e = q.a * z * z + q.b * z + q.c;
            return {e.real() - half_weight, e.imag()};
          },
      },
      f.variant());
}

Complex eval_weighted(const EntireFunction& f, ComplexPoint z, const FockWeight& w) {
  return eval_weighted_log(f, z.value(), w).to_complex();
}

Complex eval(const EntireFunction& f, ComplexPoint z, const FockWeight& w) {
  LogValue v = eval_weighted_log(f, z.value(), w);
  if (v.is_zero()) return 0.0;
  v.log_abs += 0.5 * w.alpha() * std::norm(z.value());
  if (v.log_abs > kMaxLogMagnitude)
    throw std::overflow_error("eval: |f(z)| exceeds the representable range; use eval_weighted");
  return v.to_complex();
}

Complex kernel_eval(ComplexPoint z, ComplexPoint w, const FockWeight& a) {
  const Complex e = a.alpha() * std::conj(z.value()) * w.value();
  if (e.real() > kMaxLogMagnitude)
    throw std::overflow_error("kernel_eval: K_z(w) overflows; use eval_weighted");
  return std::exp(e);
}

DiagnosticReport condition_m_probe(const Measure& mu, const FockWeight& w,
                                   const std::vector<ComplexPoint>& sample,
                                   const QuadratureSpec& spec) {
  if (sample.empty()) throw std::invalid_argument("condition_m_probe: sample is empty");
  const double alpha = w.alpha();
  DiagnosticReport report;
  report.title = "condition (M): int |K_z(w)| e^{-alpha|w|^2} dmu(w)";
  for (const auto& zp : sample) {
    const Complex z = zp.value();
    // |K_z(w)| e^{-alpha|w|^2} = e^{alpha|z|^2/4} e^{-alpha|w - z/2|^2}
    const auto g = [&](Complex om) -> Complex {
      return std::exp(alpha * (std::conj(z) * om).real() - alpha * norm2(om));
    };
    const GaussianEnvelope env{z / 2.0, alpha, 0.25 * alpha * norm2(z)};
    const QuadratureResult r = integrate_measure(g, env, mu, spec);
    DiagnosticEntry e;
    e.name = "condition_m";
    e.point = zp;
    e.value = std::abs(r.value);
    if (r.verdict == Verdict::fails || !std::isfinite(e.value)) {
      e.verdict = Verdict::fails;
      e.note = "truncated integrals diverge";
    } else {
      e.verdict = r.verdict;
      if (r.verdict == Verdict::inconclusive) e.note = "edge contribution above tolerance";
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace fock
