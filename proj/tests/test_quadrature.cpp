#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fock/quadrature.hpp"

using namespace fock;
using std::numbers::pi;

TEST_CASE("Gaussian integrals over the plane") {
  const QuadratureSpec spec;
  for (double c : {0.25, 1.0, 4.0, 64.0, 256.0}) {
    const Complex center(0.7, -1.3);
    const auto g = [&](Complex w) -> Complex { return std::exp(-c * std::norm(w - center)); };
    const QuadratureResult r = integrate_plane(g, GaussianEnvelope{center, c, 0.0}, spec);
    CHECK(r.verdict == Verdict::holds);
    CHECK(std::abs(r.value - pi / c) < spec.tolerance);
    CHECK(r.tail_bound <= spec.tolerance);
  }
}

TEST_CASE("oscillating Gaussian moment") {
  // int e^{-|w|^2} e^{i Re(w)} dA = pi e^{-1/4}
  const auto g = [](Complex w) -> Complex {
    return std::exp(-std::norm(w)) * std::polar(1.0, w.real());
  };
  const QuadratureResult r = integrate_plane(g, GaussianEnvelope{0.0, 1.0, 0.0}, {});
  CHECK(std::abs(r.value - pi * std::exp(-0.25)) < 1e-9);
}

TEST_CASE("growth study separates convergent and divergent integrands") {
  const QuadratureSpec spec;
  const auto algebraic = [](Complex w) -> Complex { return 1.0 / std::pow(1.0 + std::norm(w), 2); };
  CHECK(integrate_plane(algebraic, std::nullopt, spec).verdict == Verdict::holds);
  const auto flat = [](Complex) -> Complex { return 1.0; };
  const QuadratureResult r = integrate_plane(flat, std::nullopt, spec);
  CHECK(r.verdict == Verdict::fails);
  CHECK(r.growth.size() == 5);
  CHECK(std::isnan(r.tail_bound));
  // e^{-Im(w)^2} grows linearly with the cutoff
  const auto strip = [](Complex w) -> Complex { return std::exp(-w.imag() * w.imag()); };
  CHECK(integrate_plane(strip, std::nullopt, spec).verdict == Verdict::fails);
}

TEST_CASE("increment classification") {
  const std::vector<double> converging = {1.0, 1.5, 1.75, 1.8};
  const std::vector<double> diverging = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> middle = {1.0, 2.0, 2.7, 3.2};
  const std::vector<double> constant = {2.0, 2.0, 2.0};
  const std::vector<double> zeros = {0.0, 0.0, 0.0};
  CHECK(classify_increments(converging) == Growth::converging);
  CHECK(classify_increments(diverging) == Growth::diverging);
  CHECK(classify_increments(middle) == Growth::inconclusive);
  CHECK(classify_increments(constant) == Growth::converging);
  CHECK(classify_increments(zeros) == Growth::converging);
  const auto r = dyadic_radii(16.0);
  CHECK(r.front() == 1.0);
  CHECK(r.back() == 16.0);
}

TEST_CASE("measure integrals") {
  const QuadratureSpec spec;
  const auto one = [](Complex) -> Complex { return 1.0; };
  const GaussianEnvelope flat{0.0, 0.0, 0.0};
  SUBCASE("atoms are exact") {
    const auto mu = Measure::atomic({{{1.0, 0.0}, 2.0}, {{0.0, 3.0}, 0.5}});
    const auto g = [](Complex w) -> Complex { return w * w; };
    CHECK(std::abs(integrate_measure(g, std::nullopt, mu, spec).value - Complex(2.0 - 4.5, 0.0)) < 1e-15);
    CHECK(total_mass(mu).value.real() == 2.5);
  }
  SUBCASE("Gaussian density") {
    const auto mu = Measure::gaussian(2.0, 3.0);
    CHECK(std::abs(integrate_measure(one, flat, mu, spec).value - 1.5 * pi) < 1e-8);
  }
  SUBCASE("Lebesgue mass diverges") {
    CHECK(total_mass(Measure::lebesgue()).verdict == Verdict::fails);
  }
  SUBCASE("compact density by quadrature") {
    const auto mu = Measure::density([](Complex) { return 1.0; }, 1.0, 2.0);
    CHECK(std::abs(total_mass(mu, spec).value.real() - 4.0 * pi) < 1e-10);
    CHECK(total_mass(mu, spec).verdict == Verdict::holds);
  }
  SUBCASE("radial profile") {
    const auto mu = Measure::radial([](double r) { return std::exp(-r * r); }, 1.0);
    const auto h = [](double) { return 1.0; };
    CHECK(integrate_radial(h, mu, 8.0, spec) == doctest::Approx(pi).epsilon(1e-10));
    CHECK(std::abs(total_mass(mu, spec).value.real() - pi) < 1e-6);
  }
}

TEST_CASE("disk and line integrals") {
  const QuadratureSpec spec;
  const auto g = [](Complex w) -> Complex { return std::exp(-std::norm(w)); };
  CHECK(std::abs(integrate_disk(g, 0.0, 1.0, spec) - pi * (1.0 - std::exp(-1.0))) < 1e-10);
  CHECK(std::abs(integrate_disk([](Complex) -> Complex { return 1.0; }, {3.0, 1.0}, 0.5, spec) -
                 0.25 * pi) < 1e-12);
  CHECK(integrate_line([](double x) { return x * x; }, 0.0, 3.0, 4) == doctest::Approx(9.0));
}

TEST_CASE("refinement doubles the cell count") {
  QuadratureSpec spec;
  CHECK(spec.refined().cells_per_unit == 2 * spec.cells_per_unit);
  spec.tolerance = 0.0;
  CHECK_THROWS(spec.validate());
}

TEST_CASE("pairwise sums and parallel loops are deterministic") {
  std::vector<Complex> v;
  for (int i = 0; i < 1000; ++i) v.emplace_back(1.0 / (i + 1), -0.5 / (i + 1));
  const Complex a = pairwise_sum(v);
  const Complex b = pairwise_sum(v);
  CHECK(a == b);
  std::vector<int> hits(257, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS(parallel_for(4, [](std::size_t i) {
    if (i == 2) throw std::runtime_error("boom");
  }));
}
