#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "fock/lattice.hpp"

using namespace fock;
using std::numbers::pi;

TEST_CASE("lattice covers the disk of its extent") {
  for (double r : {0.5, 1.0, 1.7}) {
    const Lattice lat = make_lattice(r, 6.0);
    CHECK(lat.spacing == doctest::Approx(r * std::sqrt(2.0)));
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> rad(0.0, 6.0), ang(0.0, 2.0 * pi);
    for (int i = 0; i < 1000; ++i) {
      const Complex z = std::polar(std::sqrt(rad(rng) * 6.0), ang(rng));
      int covering = 0;
      for (const auto& a : lat.centers)
        if (std::abs(z - a.value()) <= r) ++covering;
      CHECK(covering >= 1);
      CHECK(covering <= lat.multiplicity_bound);
    }
  }
}

TEST_CASE("centers are enumerated by modulus, then angle") {
  const Lattice lat = make_lattice(1.0, 5.0);
  CHECK(lat.centers.front() == ComplexPoint(0.0, 0.0));
  for (std::size_t k = 1; k < lat.centers.size(); ++k)
    CHECK(lat.centers[k].abs() >= lat.centers[k - 1].abs() - 1e-12);
  CHECK(lat.centers[1].re > 0.0);
  CHECK(lat.centers[1].im == 0.0);
  CHECK_THROWS(make_lattice(0.0, 1.0));
}

TEST_CASE("grid points are row-major") {
  const auto pts = square_grid_points(1.0, 0.5);
  CHECK(pts.front().im == -1.0);
  CHECK(pts.back().im == 1.0);
  for (const auto& p : pts) CHECK(p.abs() <= 1.0 + 1e-12);
  CHECK(pts.size() == 13);
}

TEST_CASE("mass sandwich for compactly supported measures") {
  const Lattice lat = make_lattice(1.0, 6.0);
  const std::vector<Measure> suite = {
      Measure::dirac({0.0, 0.0}),
      Measure::atomic({{{0.3, 0.2}, 1.0}, {{-1.5, 2.0}, 2.0}, {{2.5, -0.7}, 0.5}}),
      Measure::density([](Complex w) { return 1.0 + 0.5 * w.real() / 3.0; }, 1.5, 3.0),
  };
  for (const auto& mu : suite) {
    const double mass = total_mass(mu).value.real();
    double sum = 0.0;
    for (double b : lattice_ball_sums(mu, lat)) sum += b;
    CHECK(sum >= mass * (1.0 - 1e-3));
    CHECK(sum <= 4.0 * mass * (1.0 + 1e-3));
  }
}

TEST_CASE("planted 1/k^2 sequence sums to pi^2/6") {
  const Lattice lat = make_lattice(1.0, 40.0);
  std::vector<double> seq(lat.centers.size());
  for (std::size_t k = 0; k < seq.size(); ++k) seq[k] = 1.0 / std::pow(static_cast<double>(k + 1), 2);
  const ShellSums s = sequence_lp(seq, lat, 1.0);
  CHECK(std::abs(s.total() - pi * pi / 6.0) < 1e-3);
  CHECK(s.verdict == Growth::converging);

  std::vector<double> ones(lat.centers.size(), 1.0);
  CHECK(sequence_lp(ones, lat, 1.0).verdict == Growth::diverging);
  const ShellSums sup = sequence_lp(ones, lat, kInfinity);
  CHECK(sup.total() == 1.0);
  CHECK(sup.verdict == Growth::converging);
}

TEST_CASE("l^p shells scale with the sequence") {
  const Lattice lat = make_lattice(1.0, 8.0);
  std::vector<double> seq(lat.centers.size());
  for (std::size_t k = 0; k < seq.size(); ++k) seq[k] = std::exp(-0.1 * static_cast<double>(k));
  std::vector<double> doubled = seq;
  for (auto& v : doubled) v *= 2.0;
  for (double p : {1.0, 2.0, 3.5}) {
    const double a = sequence_lp(seq, lat, p).total();
    const double b = sequence_lp(doubled, lat, p).total();
    CHECK(b == doctest::Approx(2.0 * a));
  }
}
