#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fock/norms.hpp"
#include "fock/toeplitz.hpp"
#include "fock/transforms.hpp"

using namespace fock;
using std::numbers::pi;

TEST_CASE("area measure acts as the identity") {
  const FockWeight w(1.0);
  const auto leb = Measure::lebesgue();
  CHECK(std::abs(apply_toeplitz(leb, EntireFunction::monomial(2), {0.5, 0.0}, w) - 0.25) < 1e-6);
  const DensitySymbol one{[](Complex) { return 1.0; }, 1.0};
  CHECK(std::abs(function_symbol_apply(one, EntireFunction::monomial(1), {1.0, 1.0}, w) -
                 Complex(1.0, 1.0)) < 1e-6);
  const ToeplitzMatrix m = toeplitz_matrix(leb, 6, w);
  CHECK((m.entries - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("single atom at the origin") {
  const FockWeight w(2.0);
  const auto mu = Measure::dirac({0.0, 0.0}, pi / 2.0);
  for (const ComplexPoint z : {ComplexPoint(0.0, 0.0), ComplexPoint(1.0, -2.0)})
    CHECK(std::abs(apply_toeplitz(mu, EntireFunction::polynomial({1.0, 1.0}), z, w) - 1.0) < 1e-14);
  const ToeplitzMatrix m = toeplitz_matrix(mu, 3, w);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
  expected(0, 0) = 1.0;
  CHECK((m.entries - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(apply_toeplitz(Measure::empty(), EntireFunction::monomial(1), {1.0, 0.0}, w) == 0.0);
}

TEST_CASE("Gaussian density gives the moment diagonal") {
  const auto mu = Measure::gaussian(1.0, 1.0);
  const FockWeight w(1.0);
  const ToeplitzMatrix m = toeplitz_matrix(mu, 6, w);
  for (int n = 0; n < 6; ++n) {
    CHECK(std::abs(m.entries(n, n) - std::pow(0.5, n + 1)) < 1e-9);
    for (int k = 0; k < 6; ++k)
      if (k != n) CHECK(std::abs(m.entries(n, k)) == 0.0);
  }
  // general alpha, beta, scale: scale (alpha / (alpha + beta))^{n+1}
  const ToeplitzMatrix g = toeplitz_matrix(Measure::gaussian(0.5, 3.0), 4, FockWeight(2.0));
  for (int n = 0; n < 4; ++n) CHECK(std::abs(g.entries(n, n) - 3.0 * std::pow(0.8, n + 1)) < 1e-9);
  // the symbol route agrees: phi = e^{-|w|^2}, f = 1, z = 0 gives 1/2
  const DensitySymbol phi{[](Complex u) { return std::exp(-std::norm(u)); }, 1.0};
  CHECK(std::abs(function_symbol_apply(phi, EntireFunction::constant(1.0), {0.0, 0.0}, w) - 0.5) < 1e-8);
}

TEST_CASE("planar quadrature matches the radial diagonal") {
  const FockWeight w(1.0);
  const auto radial = Measure::radial([](double r) { return 1.0 / (1.0 + r * r); }, 1.0);
  const auto planar = Measure::density([](Complex u) { return 1.0 / (1.0 + std::norm(u)); }, 1.0);
  const ToeplitzMatrix a = toeplitz_matrix(radial, 4, w);
  const ToeplitzMatrix b = toeplitz_matrix(planar, 4, w);
  CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() < 1e-8);
  for (int n = 0; n < 4; ++n)
    for (int k = 0; k < 4; ++k)
      if (k != n) CHECK(std::abs(b.entries(n, k)) < 1e-8);
}

TEST_CASE("matrices are Hermitian positive semidefinite") {
  const FockWeight w(1.0);
  const std::vector<Measure> suite = {
      Measure::empty(),
      Measure::dirac({0.0, 0.0}),
      Measure::atomic({{{0.5, 0.5}, 1.0}, {{-1.0, 0.3}, 2.0}, {{0.2, -1.4}, 0.7}}),
      Measure::gaussian(1.0, 1.0),
      Measure::lebesgue(),
      Measure::density([](Complex u) { return std::exp(-std::norm(u - Complex(1.0, 0.5))); }, 1.0),
  };
  for (const auto& mu : suite) {
    const ToeplitzMatrix m = toeplitz_matrix(mu, 6, w);
    CHECK(m.is_hermitian(1e-12));
    CHECK(m.eigenvalues().minCoeff() >= -1e-9);
  }
}

TEST_CASE("linearity on the atomic path") {
  const FockWeight w(1.0);
  const auto a = Measure::atomic({{{0.5, 0.5}, 1.0}, {{-1.0, 0.3}, 2.0}});
  const auto b = Measure::atomic({{{2.0, -1.0}, 0.5}});
  const auto f = EntireFunction::polynomial({1.0, {0.0, 1.0}, 0.5});
  const ComplexPoint z(0.3, 0.4);
  const Complex sum = apply_toeplitz(a, f, z, w) + apply_toeplitz(b, f, z, w);
  CHECK(std::abs(apply_toeplitz(Measure::sum(a, b), f, z, w) - sum) < 1e-12);
}

TEST_CASE("boundedness proxies") {
  const FockWeight w(1.0);
  const BoundednessEstimate leb = boundedness_estimate(Measure::lebesgue(), w, 4.0);
  CHECK(std::abs(leb.upper_proxy - 2.0) < 1e-6);
  CHECK(std::abs(leb.lower_proxy - 1.0) < 1e-6);
  CHECK(leb.verdict == Verdict::holds);
  const BoundednessEstimate atom = boundedness_estimate(Measure::dirac({0.0, 0.0}, 3.0), w, 4.0);
  CHECK(atom.upper_proxy == doctest::Approx(3.0 / pi));
  const BoundednessEstimate none = boundedness_estimate(Measure::empty(), w, 2.0);
  CHECK(none.upper_proxy == 0.0);
  CHECK(none.verdict == Verdict::holds);
}

TEST_CASE("operator action is dominated by the upper proxy") {
  const FockWeight w(1.0);
  const std::vector<Measure> suite = {
      Measure::dirac({0.0, 0.0}),
      Measure::atomic({{{0.5, 0.5}, 1.0}, {{-1.0, 0.3}, 2.0}}),
      Measure::gaussian(1.0, 1.0),
  };
  const std::vector<EntireFunction> probes = {EntireFunction::constant(1.0),
                                              EntireFunction::normalized_kernel({1.0, 0.0}),
                                              EntireFunction::orthonormal(2)};
  for (const auto& mu : suite) {
    const double upper = boundedness_estimate(mu, w, 3.0).upper_proxy;
    for (const auto& f : probes) {
      const double sup_f = fock_norm(f, {kInfinity, w, std::nullopt}).value;
      for (const Complex z : {Complex(0.0, 0.0), Complex(1.0, 1.0), Complex(-2.0, 0.5)}) {
        const double lhs = std::abs(apply_toeplitz_weighted(mu, f, z, w).value);
        CHECK(lhs <= sup_f * upper + 1e-8);
      }
    }
  }
}

TEST_CASE("compactness rings") {
  const FockWeight w(1.0);
  const std::vector<double> rings = {0.0, 1.0, 2.0, 3.0};
  const CompactnessProbe g = compactness_probe(Measure::gaussian(1.0, 1.0), w, rings);
  CHECK(std::abs(g.ring_maxima[0].second - 2.0 / 3.0) < 1e-6);
  CHECK(g.ring_maxima[2].second == doctest::Approx(2.0 / 3.0 * std::exp(-4.0 / 3.0)));
  CHECK(g.verdict == Verdict::holds);
  const CompactnessProbe leb = compactness_probe(Measure::lebesgue(), w, rings);
  CHECK(leb.verdict == Verdict::fails);
  CHECK(leb.trailing_ratio == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(g.trailing_ratio < 1e-3);
  const CompactnessProbe atoms = compactness_probe(Measure::dirac({0.5, 0.0}), w, rings, {}, 64, 0);
  CHECK(atoms.verdict == Verdict::holds);
  const std::vector<double> few = {0.0, 1.0, 2.0};
  CHECK_THROWS(compactness_probe(Measure::lebesgue(), w, few));
}

TEST_CASE("Berezin transform equals the kernel expectation") {
  const FockWeight w(1.0);
  const auto atom = Measure::dirac({0.0, 0.0});
  const IdentityCheck a = berezin_operator_identity_check(atom, {0.0, 0.0}, w);
  CHECK(a.lhs == doctest::Approx(1.0 / pi));
  CHECK(a.gap < 1e-8);
  const IdentityCheck leb = berezin_operator_identity_check(Measure::lebesgue(), {1.0, 0.0}, w);
  CHECK(leb.lhs == doctest::Approx(1.0));
  CHECK(leb.gap < 1e-6);
  const IdentityCheck none = berezin_operator_identity_check(Measure::empty(), {0.0, 0.0}, w);
  CHECK(none.lhs == 0.0);
  CHECK(none.rhs == 0.0);
}

TEST_CASE("operator norm bracket") {
  const FockWeight w(1.0);
  for (const auto& mu : {Measure::gaussian(1.0, 1.0), Measure::lebesgue(),
                         Measure::atomic({{{0.5, 0.5}, 1.0}, {{-1.0, 0.3}, 2.0}})}) {
    const BoundednessEstimate b = boundedness_estimate(mu, w, 4.0);
    CHECK(b.lower_proxy <= b.upper_proxy + 1e-12);
    const double top = toeplitz_matrix(mu, 8, w).eigenvalues().maxCoeff();
    CHECK(top <= 2.0 * b.upper_proxy + 1e-9);
  }
}
