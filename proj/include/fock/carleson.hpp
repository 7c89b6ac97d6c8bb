#pragma once

// Fock-Carleson classification: the direct embedding test and the Berezin,
// ball-measure and lattice criteria, with a consistency flag across them.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fock/core.hpp"
#include "fock/lattice.hpp"
#include "fock/quadrature.hpp"

namespace fock {

enum class Regime { pq, infty_q, p_infty };

const char* to_string(Regime r);

struct Probe {
  std::string name;
  EntireFunction f;
};

/// 1, z, z^2, k_0 and k_w on a ring, e_n for n <= 8, e^{(alpha/2) z^2}.
std::vector<Probe> standard_probes(const FockWeight& w, double ring_radius = 2.0, int ring_points = 4);

struct ProbeRatio {
  std::string probe;
  double source = 0.0;  // ||f||_{p,alpha}
  double target = 0.0;  // ||f||_{q,mu}
  double ratio = 0.0;
  Verdict verdict = Verdict::holds;
};

struct EmbeddingResult {
  /// Infinity when some target norm diverges.
  double best_ratio = 0.0;
  std::string witness;
  Verdict verdict = Verdict::holds;  // holds: every probe ratio is finite
  std::vector<ProbeRatio> ratios;
  std::vector<std::string> notes;    // skipped probes
};

/// max over probes of ||f||_{q,mu} / ||f||_{p,alpha}. Probes whose source norm
/// is zero or infinite are skipped with a note.
EmbeddingResult embedding_test(const Measure& mu, double p, double q, const std::vector<Probe>& probes,
                               const FockWeight& w, const QuadratureSpec& spec = {});

enum class TestRole {
  equivalent,  // one of the mutually equivalent criteria; enters the consistency flag
  necessary,   // implied by the classification, reported separately
  hypothesis,  // precondition of the equivalence
  auxiliary,   // reported only
};

const char* to_string(TestRole r);

struct CarlesonTest {
  std::string name;
  double value = 0.0;
  std::vector<std::pair<double, double>> curve;
  Verdict verdict = Verdict::inconclusive;
  TestRole role = TestRole::equivalent;
  std::string note;
};

struct CarlesonReport {
  Regime regime = Regime::infty_q;
  double p = kInfinity;
  double q = 1.0;
  std::vector<CarlesonTest> tests;
  /// False whenever two non-inconclusive equivalent tests disagree.
  bool consistent = true;
  /// (s, s') with s = p/q and 1/s + 1/s' = 1, for q < p.
  std::optional<std::pair<double, double>> conjugate_exponents;
  /// Common verdict of the equivalent tests; inconclusive when none decide
  /// or they disagree.
  Verdict classification = Verdict::inconclusive;
  std::string normalization = "||f||_{q,mu} = (int |f e^{-alpha|z|^2/2}|^q dmu)^{1/q}, no prefactor";
  std::vector<std::string> notes;

  /// "(inf,2)-Carleson", "not (inf,2)-Carleson" or "undetermined (inf,2)".
  std::string headline() const;
  bool has_divergence() const;
  const CarlesonTest* find(const std::string& name) const;
};

/// Sampling parameters shared by the field-based tests.
struct FieldOptions {
  double t = 0.0;            // Berezin parameter; 0 selects t = q
  double delta = 1.0;        // ball radius of the ball-measure field
  double grid_radius = 0.0;  // 0 selects a radius covering the support plus a margin
  double spacing = 0.25;
  double ring_radius = 2.0;  // kernel probes
};

/// Default grid radius: support extent plus 6, within [8, 16]; 12 for
/// measures without a bounded support.
double default_grid_radius(const Measure& mu);

CarlesonReport classify_infty_q(const Measure& mu, double q, const FockWeight& w, const Lattice& lat,
                                const QuadratureSpec& spec = {}, const FieldOptions& opts = {});

CarlesonReport classify_p_infty(const Measure& mu, double p, const FockWeight& w, const Lattice& lat,
                                const QuadratureSpec& spec = {}, const FieldOptions& opts = {});

struct VanishingProbe {
  std::vector<std::pair<double, double>> curve;  // (|z_n|, int |k_{z_n} e^{-alpha|w|^2/2}|^q dmu)
  Verdict verdict = Verdict::inconclusive;      // holds: decaying
  std::string label = "necessary-condition check on the kernel escape family";
};

VanishingProbe vanishing_probe(const Measure& mu, double q, const FockWeight& w,
                               const std::vector<ComplexPoint>& escape_path,
                               const QuadratureSpec& spec = {});

/// L^p of mu~_t, L^p of the ball-measure field and l^p of the lattice ball
/// sums, which converge or diverge together. With q < p the three are also
/// evaluated at the conjugate exponent s' of s = p/q.
CarlesonReport equivalence_crosscheck(const Measure& mu, double p, double t, double delta,
                                      const FockWeight& w, const Lattice& lat,
                                      const QuadratureSpec& spec = {},
                                      std::optional<double> q = std::nullopt, double grid_radius = 0.0,
                                      double spacing = 0.25);

/// Fills `consistent` and `classification` from the equivalent tests.
void finalize(CarlesonReport& report);

}  // namespace fock
