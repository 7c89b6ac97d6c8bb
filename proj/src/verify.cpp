#include "fock/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <random>
#include <sstream>

#include "fock/carleson.hpp"
#include "fock/norms.hpp"
#include "fock/toeplitz.hpp"
#include "fock/transforms.hpp"

namespace fock {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

CriterionResult result(int id, const char* name, bool ok, std::string detail) {
  return {id, name, ok, std::move(detail)};
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

CriterionResult kernel_normalization() {
  double worst = 0.0;
  bool sup_ok = true;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const FockWeight w(alpha);
    for (const ComplexPoint z : {ComplexPoint(0.0, 0.0), ComplexPoint(1.0, 0.0), ComplexPoint(2.0, 1.0)}) {
      const auto kz = EntireFunction::normalized_kernel(z);
      for (double p : {1.0, 2.0, 4.0}) worst = std::max(worst, std::abs(fock_norm(kz, {p, w, std::nullopt}).value - 1.0));
      const double sup = fock_norm(kz, {kInfinity, w, std::nullopt}).value;
      sup_ok = sup_ok && sup >= 1.0 - 1e-6 && sup <= 1.0;
    }
  }
  return result(1, "kernel normalization", worst < 1e-6 && sup_ok,
                "max |norm - 1| = " + sci(worst) + (sup_ok ? ", sup in [1-1e-6, 1]" : ", sup out of range"));
}

CriterionResult norm_limit() {
  const auto z = EntireFunction::monomial(1);
  double worst = 0.0;
  double at256 = 0.0;
  for (double p : {1.0, 2.0, 3.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0}) {
    const double v = fock_norm(z, {p, FockWeight(1.0), std::nullopt}).value;
    const double closed = std::sqrt(2.0 / p) * std::exp(std::lgamma(0.5 * p + 1.0) / p);
    worst = std::max(worst, std::abs(v - closed));
    if (p == 256.0) at256 = v;
  }
  const double gap = std::abs(at256 - std::exp(-0.5));
  return result(2, "norm limit", worst < 1e-5 && gap < 5e-2,
                "max closed-form error " + sci(worst) + ", |norm_256 - e^-1/2| = " + sci(gap));
}

CriterionResult berezin_closed_forms() {
  const FockWeight w(1.0);
  auto points = square_grid_points(2.5, 1.0);
  points.resize(20);
  double worst = 0.0;
  for (double t : {1.0, 2.0, 4.0}) {
    for (const auto& z : points) {
      worst = std::max(worst, std::abs(berezin_measure(Measure::lebesgue(), t, z, w) - 2.0 / t));
      worst = std::max(worst, std::abs(berezin_measure_quadrature(Measure::lebesgue(), t, z, w).value.real() - 2.0 / t));
    }
  }
  const BerezinField f = berezin_field(Measure::dirac({0.0, 0.0}), 2.0, w, 6.0, 0.25);
  const double mass = field_lp_norm(f.field, 1.0).last();
  const double mass_err = std::abs(mass - 1.0);
  return result(3, "berezin closed forms", worst < 1e-8 && mass_err < 1e-6,
                "Lebesgue max error " + sci(worst) + ", dirac L1 mass error " + sci(mass_err));
}

CriterionResult carleson_consistency() {
  const FockWeight w(1.0);
  const Lattice lat = make_lattice(1.0, 12.0);
  bool ok = true;
  std::ostringstream detail;
  for (const auto& m : standard_suite()) {
    const CarlesonReport r = classify_infty_q(m.mu, 2.0, w, lat);
    bool l1_hold = true;
    for (const auto& t : r.tests)
      if (t.role == TestRole::equivalent && t.name != "embedding" && t.verdict != Verdict::holds) l1_hold = false;
    const bool sup_ok = !l1_hold || r.tests.back().verdict == Verdict::holds;
    ok = ok && r.consistent && sup_ok;
    detail << m.name << ": " << r.headline() << (r.consistent ? "" : " (inconsistent)")
           << (sup_ok ? "" : " (sup bound violated)") << "; ";
  }
  std::string d = detail.str();
  if (d.size() >= 2) d.resize(d.size() - 2);
  return result(4, "carleson consistency", ok, d);
}

CriterionResult vanishing() {
  const FockWeight w(1.0);
  const std::vector<ComplexPoint> path = {{0.0, 0.0}, {2.0, 0.0}, {4.0, 0.0}, {6.0, 0.0}};
  const VanishingProbe d = vanishing_probe(Measure::dirac({0.0, 0.0}), 2.0, w, path);
  const VanishingProbe l = vanishing_probe(Measure::lebesgue(), 2.0, w, path);
  double leb_err = 0.0;
  for (const auto& [r, v] : l.curve) leb_err = std::max(leb_err, std::abs(v - kPi / w.alpha()));
  const double last = d.curve.back().second;
  const bool ok = last < 1e-10 && d.verdict == Verdict::holds && leb_err < 1e-8 && l.verdict == Verdict::fails;
  return result(5, "vanishing probe", ok, "dirac at |z|=6: " + sci(last) + ", Lebesgue max |v - pi/alpha| = " + sci(leb_err));
}

CriterionResult toeplitz_identity() {
  const FockWeight w(1.0);
  const ToeplitzMatrix m = toeplitz_matrix(Measure::lebesgue(), 6, w);
  const auto area = Measure::density([](Complex) { return 1.0; }, 1.0);
  const double err = std::max(max_abs_diff(m.entries, Eigen::MatrixXcd::Identity(6, 6)),
                              max_abs_diff(toeplitz_matrix(area, 6, w).entries, Eigen::MatrixXcd::Identity(6, 6)));
  const Complex v = apply_toeplitz(Measure::lebesgue(), EntireFunction::monomial(2), {0.5, 0.0}, w);
  const double apply_err = std::abs(v - 0.25);
  return result(6, "toeplitz identity", err < 1e-6 && apply_err < 1e-6,
                "matrix max error " + sci(err) + ", T z^2 (0.5) error " + sci(apply_err));
}

CriterionResult toeplitz_closed_forms() {
  const FockWeight w(1.0);
  const int n = 6;
  Eigen::MatrixXcd e1 = Eigen::MatrixXcd::Zero(n, n);
  e1(0, 0) = 1.0;
  const double dirac_err = max_abs_diff(toeplitz_matrix(Measure::dirac({0.0, 0.0}, kPi / w.alpha()), n, w).entries, e1);
  Eigen::MatrixXcd moments = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) moments(k, k) = std::pow(0.5, k + 1);
  const double radial_err = max_abs_diff(toeplitz_matrix(Measure::gaussian(1.0, 1.0), n, w).entries, moments);
  // the same measure through planar quadrature, without the radial shortcut
  const auto planar = Measure::density([](Complex u) { return std::exp(-std::norm(u)); }, 1.0);
  const double planar_err = max_abs_diff(toeplitz_matrix(planar, n, w).entries, moments);
  const bool ok = dirac_err < 1e-6 && radial_err < 1e-6 && planar_err < 1e-6;
  return result(7, "toeplitz closed forms", ok,
                "dirac " + sci(dirac_err) + ", Gaussian radial " + sci(radial_err) + ", planar " + sci(planar_err));
}

CriterionResult toeplitz_diagnostics() {
  const FockWeight w(1.0);
  const BoundednessEstimate leb = boundedness_estimate(Measure::lebesgue(), w, 4.0);
  const std::vector<double> rings = {0.0, 1.0, 2.0, 3.0};
  const CompactnessProbe leb_rings = compactness_probe(Measure::lebesgue(), w, rings, {}, 64, 0);
  const CompactnessProbe g_rings = compactness_probe(Measure::gaussian(1.0, 1.0), w, rings, {}, 64, 0);
  const double bracket_err = std::max(std::abs(leb.upper_proxy - 2.0), std::abs(leb.lower_proxy - 1.0));
  const double ring0_err = std::abs(g_rings.ring_maxima.front().second - 2.0 / 3.0);

  double gap = 0.0;
  for (const auto& m : standard_suite())
    for (const ComplexPoint z : {ComplexPoint(0.0, 0.0), ComplexPoint(1.0, 0.5)})
      gap = std::max(gap, berezin_operator_identity_check(m.mu, z, w).gap);

  const bool ok = bracket_err < 1e-6 && leb_rings.verdict == Verdict::fails && g_rings.verdict == Verdict::holds &&
                  ring0_err < 1e-6 && gap < 1e-6;
  return result(8, "toeplitz diagnostics", ok,
                "Lebesgue bracket error " + sci(bracket_err) + ", Gaussian ring-0 error " + sci(ring0_err) +
                    ", max identity gap " + sci(gap));
}

CriterionResult lattice_properties() {
  const Lattice lat = make_lattice(1.0, 6.0);
  std::mt19937 rng(20240601);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int uncovered = 0;
  for (int i = 0; i < 1000;) {
    const Complex z(6.0 * u(rng), 6.0 * u(rng));
    if (std::abs(z) > 6.0) continue;
    ++i;
    const bool covered = std::any_of(lat.centers.begin(), lat.centers.end(),
                                     [&](const ComplexPoint& a) { return std::abs(z - a.value()) <= lat.r; });
    if (!covered) ++uncovered;
  }

  const Lattice wide = make_lattice(1.0, 12.0);
  bool sandwich = true;
  for (const auto& m : standard_suite()) {
    if (!m.compact) continue;
    const double mass = total_mass(m.mu).value.real();
    double sum = 0.0;
    for (double b : lattice_ball_sums(m.mu, wide)) sum += b;
    sandwich = sandwich && sum >= mass * (1.0 - 1e-9) && sum <= 4.0 * mass * (1.0 + 1e-9);
  }

  const Lattice basel = make_lattice(1.0, 40.0);
  std::vector<double> seq(basel.centers.size());
  for (std::size_t k = 0; k < seq.size(); ++k) seq[k] = 1.0 / std::pow(static_cast<double>(k + 1), 2);
  const ShellSums s = sequence_lp(seq, basel, 1.0);
  const double basel_err = std::abs(s.total() - kPi * kPi / 6.0);

  const bool ok = uncovered == 0 && sandwich && basel_err < 1e-3 && s.verdict == Growth::converging;
  return result(9, "lattice properties", ok,
                std::to_string(uncovered) + " uncovered points, sandwich " + (sandwich ? "holds" : "fails") +
                    ", Basel error " + sci(basel_err));
}

CriterionResult pointwise_estimate() {
  const FockWeight w(1.0);
  const std::vector<EntireFunction> probes = {EntireFunction::constant(1.0), EntireFunction::monomial(1),
                                              EntireFunction::monomial(2),
                                              EntireFunction::normalized_kernel({1.0, 1.0})};
  const auto max_c = [&](const QuadratureSpec& spec) {
    double m = 0.0;
    bool finite = true;
    for (const auto& f : probes)
      for (double a : {0.0, 1.0, 2.0})
        for (double r : {0.5, 1.0})
          for (double p : {1.0, 2.0}) {
            const double c = pointwise_estimate_check(f, {a, 0.0}, r, p, w, spec).measured_c;
            finite = finite && std::isfinite(c);
            m = std::max(m, c);
          }
    return std::make_pair(m, finite);
  };
  const QuadratureSpec base;
  const auto [coarse, f1] = max_c(base);
  const auto [fine, f2] = max_c(base.refined());
  const double change = std::abs(fine - coarse) / coarse;
  return result(10, "pointwise estimate", f1 && f2 && change < 0.1,
                "max measured C " + sci(coarse) + ", relative change under refinement " + sci(change));
}

}  // namespace

std::vector<SuiteMember> standard_suite() {
  const Lattice comb = make_lattice(1.0, 4.0);
  return {
      {"empty", Measure::empty(), true},
      {"dirac", Measure::dirac({0.0, 0.0}), true},
      {"three atoms", Measure::atomic({{{0.0, 0.0}, 1.0}, {{1.5, 0.5}, 2.0}, {{-1.0, -2.0}, 0.5}}), true},
      {"gaussian", Measure::gaussian(1.0, 1.0), false},
      {"lebesgue", Measure::lebesgue(), false},
      {"comb", lattice_comb(comb, [](std::size_t k) { return 1.0 / std::pow(static_cast<double>(k + 1), 2); }), true},
  };
}

Measure unit_comb() {
  return lattice_comb(make_lattice(1.0, 4.0), [](std::size_t) { return 1.0; });
}

std::vector<Criterion> acceptance_criteria() {
  return {
      {1, "kernel normalization", kernel_normalization},
      {2, "norm limit", norm_limit},
      {3, "berezin closed forms", berezin_closed_forms},
      {4, "carleson consistency", carleson_consistency},
      {5, "vanishing probe", vanishing},
      {6, "toeplitz identity", toeplitz_identity},
      {7, "toeplitz closed forms", toeplitz_closed_forms},
      {8, "toeplitz diagnostics", toeplitz_diagnostics},
      {9, "lattice properties", lattice_properties},
      {10, "pointwise estimate", pointwise_estimate},
  };
}

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  for (const auto& c : acceptance_criteria()) {
    try {
      out.push_back(c.run());
    } catch (const std::exception& e) {
      out.push_back({c.id, c.name, false, std::string("exception: ") + e.what()});
    }
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail;
}

}  // namespace fock
