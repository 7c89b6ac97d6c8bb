#pragma once

// Measure specification files (JSON), entire-function specs for the command
// line, and the fixed-column CSV writers.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fock/carleson.hpp"
#include "fock/core.hpp"
#include "fock/lattice.hpp"
#include "fock/norms.hpp"
#include "fock/toeplitz.hpp"
#include "fock/transforms.hpp"

namespace fock {

/// Parse or validation failure; `field` names the offending JSON field.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct SpecDefaults {
  std::optional<double> t;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> lattice_r;
  std::optional<double> grid_radius;

  friend bool operator==(const SpecDefaults&, const SpecDefaults&) = default;
};

/// Schema:
///   {"type": "atomic", "atoms": [{"re": 0, "im": 0, "mass": 1}, ...]}
///   {"type": "gaussian", "beta": 1, "scale": 1}
///   {"type": "lebesgue", "scale": 1}
///   {"type": "radial", "samples": [[r0, rho0], [r1, rho1], ...]}
///       piecewise linear in r, zero beyond the last sample
///   {"type": "density-grid", "radius": R, "n": n, "values": [...]}
///       n x n bilinear samples on [-R, R]^2, row-major with y outer, zero outside
/// plus "alpha" (default 1) and an optional "defaults" object with any of
/// t, p, q, lattice_r, grid_radius.
struct MeasureSpecFile {
  std::string type;
  double alpha = 1.0;
  std::vector<Atom> atoms;
  double beta = 1.0;
  double scale = 1.0;
  std::vector<std::pair<double, double>> radial_samples;
  double grid_radius = 0.0;
  int grid_n = 0;
  std::vector<double> grid_values;
  SpecDefaults defaults;

  /// Throws SpecError.
  void validate() const;
  Measure to_measure() const;
  FockWeight weight() const { return FockWeight(alpha); }
  std::string to_json() const;

  friend bool operator==(const MeasureSpecFile& a, const MeasureSpecFile& b);
};

MeasureSpecFile parse_measure_spec(std::string_view text);
MeasureSpecFile load_measure_spec(const std::string& path);

/// "1", "z", "z^3", "e_4", "k:1,0.5", "poly:1,0,2" (real coefficients c_0..c_d),
/// "qexp:0.5" (e^{a z^2}). Throws SpecError naming "function".
EntireFunction parse_function_spec(std::string_view spec);

/// Comma-separated reals; "inf" is accepted. Throws SpecError naming `field`.
std::vector<double> parse_real_list(std::string_view text, const std::string& field);

// CSV writers. Headers are always emitted; numbers use %.17g.

std::string csv_number(double x);

/// re,im,value
void write_field_csv(std::ostream& os, const SampledField& field);
/// p,fock_norm,fock_verdict,mu_norm,mu_verdict
struct NormRow {
  double p;
  NormResult fock;
  NormResult mu;
};
void write_norms_csv(std::ostream& os, const std::vector<NormRow>& rows);
/// kind,test,role,x,value,verdict,note
void write_carleson_csv(std::ostream& os, const CarlesonReport& report);
/// row,col,re,im
void write_matrix_csv(std::ostream& os, const ToeplitzMatrix& m);
/// index,re,im,mass; mass is mu(B(a_k, r)), empty when not supplied
void write_lattice_csv(std::ostream& os, const Lattice& lat, const std::vector<double>& ball_masses);
/// quantity,value
void write_bound_csv(std::ostream& os, const BoundednessEstimate& b);
/// kind,x,value
void write_compact_csv(std::ostream& os, const CompactnessProbe& c);

/// Multi-line human-readable report.
std::string format_report(const CarlesonReport& report);

}  // namespace fock
