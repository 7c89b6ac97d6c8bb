#include "fock/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "fock/transforms.hpp"

namespace fock {

Lattice make_lattice(double r, double extent_radius) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("make_lattice: r must be > 0");
  if (!(extent_radius >= 0.0) || !std::isfinite(extent_radius))
    throw std::invalid_argument("make_lattice: extent radius must be finite and >= 0");

  Lattice lat;
  lat.r = r;
  lat.spacing = r * std::numbers::sqrt2;
  lat.extent_radius = extent_radius;
  lat.multiplicity_bound = 4;

  const double reach = extent_radius + r;
  const auto n_max = static_cast<long>(std::ceil(reach / lat.spacing));
  struct Entry {
    long norm2;
    double angle;
    ComplexPoint point;
  };
  std::vector<Entry> entries;
  for (long n = -n_max; n <= n_max; ++n) {
    for (long m = -n_max; m <= n_max; ++m) {
      const Complex a(lat.spacing * static_cast<double>(m), lat.spacing * static_cast<double>(n));
      if (std::abs(a) > reach * (1.0 + 1e-12)) continue;
      double angle = std::atan2(static_cast<double>(n), static_cast<double>(m));
      if (angle < 0.0) angle += 2.0 * std::numbers::pi;
      entries.push_back({m * m + n * n, angle, ComplexPoint(a)});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return std::tie(x.norm2, x.angle) < std::tie(y.norm2, y.angle);
  });
  lat.centers.reserve(entries.size());
  for (const auto& e : entries) lat.centers.push_back(e.point);
  return lat;
}

std::vector<ComplexPoint> square_grid_points(double radius, double spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("square_grid_points: spacing must be > 0");
  const auto n_max = static_cast<long>(std::floor(radius / spacing + 1e-9));
  std::vector<ComplexPoint> out;
  for (long n = -n_max; n <= n_max; ++n) {
    for (long m = -n_max; m <= n_max; ++m) {
      const Complex z(spacing * static_cast<double>(m), spacing * static_cast<double>(n));
      if (std::abs(z) <= radius * (1.0 + 1e-12)) out.emplace_back(z);
    }
  }
  return out;
}

Measure lattice_comb(const Lattice& lat, const std::function<double(std::size_t)>& mass) {
  std::vector<Atom> atoms;
  atoms.reserve(lat.centers.size());
  for (std::size_t k = 0; k < lat.centers.size(); ++k) atoms.push_back({lat.centers[k], mass(k)});
  return Measure::atomic(std::move(atoms));
}

std::vector<double> lattice_ball_sums(const Measure& mu, const Lattice& lat,
                                      const QuadratureSpec& spec) {
  if (lat.centers.empty()) throw std::invalid_argument("lattice_ball_sums: lattice is empty");
  std::vector<double> out(lat.centers.size());
  parallel_for(out.size(), [&](std::size_t k) { out[k] = ball_measure(mu, lat.centers[k], lat.r, spec); });
  return out;
}

ShellSums sequence_lp(std::span<const double> seq, const Lattice& lat, double p,
                      std::span<const double> radii) {
  if (!(p >= 1.0)) throw std::invalid_argument("sequence_lp: p must be >= 1");
  if (seq.size() > lat.centers.size())
    throw std::invalid_argument("sequence_lp: sequence is longer than the lattice enumeration");

  std::vector<double> default_radii;
  if (radii.empty()) {
    double r_max = lat.r;
    for (std::size_t k = 0; k < seq.size(); ++k) r_max = std::max(r_max, lat.centers[k].abs());
    default_radii = dyadic_radii(r_max);
    radii = default_radii;
  }

  const bool sup = std::isinf(p);
  std::vector<double> cumulative(radii.size(), 0.0);
  // Centers are ordered by modulus, so one forward sweep fills every shell.
  std::size_t k = 0;
  double acc = 0.0;
  for (std::size_t s = 0; s < radii.size(); ++s) {
    const double limit = radii[s] * (1.0 + 1e-12);
    for (; k < seq.size() && lat.centers[k].abs() <= limit; ++k) {
      const double v = std::abs(seq[k]);
      acc = sup ? std::max(acc, v) : acc + std::pow(v, p);
    }
    cumulative[s] = acc;
  }

  ShellSums out;
  out.verdict = classify_increments(cumulative);
  for (std::size_t s = 0; s < radii.size(); ++s)
    out.points.emplace_back(radii[s], sup ? cumulative[s] : std::pow(cumulative[s], 1.0 / p));
  return out;
}

}  // namespace fock
