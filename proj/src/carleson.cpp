#include "fock/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "fock/norms.hpp"
#include "fock/transforms.hpp"

namespace fock {

namespace {

std::string fmt(double x) {
  if (std::isinf(x)) return "∞";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string point_name(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "k_(%g%+gi)", z.real(), z.imag());
  return buf;
}

void require_exponent(double p, const char* what) {
  if (!(p >= 1.0)) throw std::invalid_argument(what);
}

CarlesonTest field_test(std::string name, const TruncatedNormCurve& c, TestRole role) {
  CarlesonTest t;
  t.name = std::move(name);
  t.value = c.last();
  t.curve = c.points;
  t.verdict = to_verdict(c.verdict);
  t.role = role;
  if (t.verdict == Verdict::fails) t.note = "truncated norms grow with the radius";
  return t;
}

CarlesonTest lattice_test(std::string name, const std::vector<double>& sums, const Lattice& lat,
                          double p, TestRole role) {
  const ShellSums s = sequence_lp(sums, lat, p);
  CarlesonTest t;
  t.name = std::move(name);
  t.value = s.total();
  t.curve = s.points;
  t.verdict = to_verdict(s.verdict);
  t.role = role;
  if (t.verdict == Verdict::fails) t.note = "truncated sums grow with the shell radius";
  return t;
}

CarlesonTest embedding_entry(std::string name, const EmbeddingResult& e, TestRole role) {
  CarlesonTest t;
  t.name = std::move(name);
  t.value = e.best_ratio;
  t.verdict = e.verdict;
  t.role = role;
  t.note = e.witness.empty() ? "no admissible probe" : "witness " + e.witness;
  return t;
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::pq:
      return "(p,q)";
    case Regime::infty_q:
      return "(inf,q)";
    case Regime::p_infty:
      return "(p,inf)";
  }
  return "?";
}

const char* to_string(TestRole r) {
  switch (r) {
    case TestRole::equivalent:
      return "equivalent";
    case TestRole::necessary:
      return "necessary";
    case TestRole::hypothesis:
      return "hypothesis";
    case TestRole::auxiliary:
      return "auxiliary";
  }
  return "?";
}

std::vector<Probe> standard_probes(const FockWeight& w, double ring_radius, int ring_points) {
  std::vector<Probe> out;
  out.push_back({"1", EntireFunction::constant(1.0)});
  out.push_back({"z", EntireFunction::monomial(1)});
  out.push_back({"z^2", EntireFunction::monomial(2)});
  out.push_back({"k_0", EntireFunction::normalized_kernel({0.0, 0.0})});
  for (int k = 0; k < ring_points; ++k) {
    const Complex c = std::polar(ring_radius, 2.0 * std::numbers::pi * k / ring_points);
    const Complex rounded(std::round(c.real() * 1e12) / 1e12, std::round(c.imag() * 1e12) / 1e12);
    out.push_back({point_name(rounded), EntireFunction::normalized_kernel(rounded)});
  }
  for (int n = 0; n <= 8; ++n) out.push_back({"e_" + std::to_string(n), EntireFunction::orthonormal(n)});
  out.push_back({"exp(alpha z^2/2)", EntireFunction::quadratic_exponential(0.5 * w.alpha())});
  return out;
}

EmbeddingResult embedding_test(const Measure& mu, double p, double q, const std::vector<Probe>& probes,
                               const FockWeight& w, const QuadratureSpec& spec) {
  require_exponent(p, "embedding_test: p must be >= 1");
  require_exponent(q, "embedding_test: q must be >= 1");
  if (probes.empty()) throw std::invalid_argument("embedding_test: probe set is empty");

  std::vector<ProbeRatio> rows(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) {
    const Probe& pr = probes[i];
    ProbeRatio& row = rows[i];
    row.probe = pr.name;
    const NormResult src = fock_norm(pr.f, {p, w, std::nullopt}, spec);
    row.source = src.value;
    if (src.verdict == Verdict::fails) {
      row.verdict = Verdict::inconclusive;
      row.source = kInfinity;
      return;
    }
    const NormResult tgt = mu_norm(pr.f, {q, w, mu}, spec);
    row.target = tgt.value;
    row.verdict = tgt.verdict;
    if (tgt.verdict == Verdict::fails) {
      row.target = kInfinity;
      row.ratio = kInfinity;
    } else {
      row.ratio = row.source > 0.0 ? row.target / row.source : 0.0;
    }
  });

  EmbeddingResult out;
  bool any_inconclusive = false;
  for (const ProbeRatio& row : rows) {
    if (std::isinf(row.source)) {
      out.notes.push_back("skipped " + row.probe + ": infinite source norm");
      continue;
    }
    if (row.source == 0.0) {
      out.notes.push_back("skipped " + row.probe + ": zero source norm");
      continue;
    }
    if (row.verdict == Verdict::inconclusive) any_inconclusive = true;
    if (row.verdict == Verdict::fails && out.verdict != Verdict::fails) {
      out.verdict = Verdict::fails;
      out.best_ratio = kInfinity;
      out.witness = row.probe;
    }
    if (out.verdict != Verdict::fails && (out.witness.empty() || row.ratio > out.best_ratio)) {
      out.best_ratio = row.ratio;
      out.witness = row.probe;
    }
    out.ratios.push_back(row);
  }
  if (out.verdict != Verdict::fails && any_inconclusive) out.verdict = Verdict::inconclusive;
  return out;
}

void finalize(CarlesonReport& report) {
  std::optional<Verdict> common;
  bool consistent = true;
  for (const auto& t : report.tests) {
    if (t.role != TestRole::equivalent || t.verdict == Verdict::inconclusive) continue;
    if (!common) common = t.verdict;
    else if (*common != t.verdict) consistent = false;
  }
  report.consistent = consistent;
  report.classification = (common && consistent) ? *common : Verdict::inconclusive;
}

std::string CarlesonReport::headline() const {
  std::string label;
  switch (regime) {
    case Regime::infty_q:
      label = "(∞," + fmt(q) + ")";
      break;
    case Regime::p_infty:
      label = "(" + fmt(p) + ",∞)";
      break;
    case Regime::pq:
      label = "(" + fmt(p) + "," + fmt(q) + ")";
      break;
  }
  switch (classification) {
    case Verdict::holds:
      return label + "-Carleson";
    case Verdict::fails:
      return "not " + label + "-Carleson";
    case Verdict::inconclusive:
      break;
  }
  return "undetermined " + label;
}

bool CarlesonReport::has_divergence() const {
  return std::any_of(tests.begin(), tests.end(), [](const CarlesonTest& t) { return t.verdict == Verdict::fails; });
}

const CarlesonTest* CarlesonReport::find(const std::string& name) const {
  for (const auto& t : tests)
    if (t.name == name) return &t;
  return nullptr;
}

double default_grid_radius(const Measure& mu) {
  double extent = mu.support_radius();
  if (const auto* atomic = mu.get_if<AtomicMeasure>()) {
    extent = 0.0;
    for (const auto& a : atomic->atoms) extent = std::max(extent, a.point.abs());
  }
  if (std::isinf(extent)) return 12.0;
  return std::clamp(extent + 6.0, 8.0, 16.0);
}

CarlesonReport classify_infty_q(const Measure& mu, double q, const FockWeight& w, const Lattice& lat,
                                const QuadratureSpec& spec, const FieldOptions& opts) {
  require_exponent(q, "classify_infty_q: q must be >= 1");
  const double t = opts.t > 0.0 ? opts.t : q;
  const double radius = opts.grid_radius > 0.0 ? opts.grid_radius : default_grid_radius(mu);

  CarlesonReport report;
  report.regime = Regime::infty_q;
  report.p = kInfinity;
  report.q = q;

  const EmbeddingResult emb =
      embedding_test(mu, kInfinity, q, standard_probes(w, opts.ring_radius), w, spec);
  report.tests.push_back(embedding_entry("embedding", emb, TestRole::equivalent));
  report.notes.insert(report.notes.end(), emb.notes.begin(), emb.notes.end());

  const BerezinField field_t = berezin_field(mu, t, w, radius, opts.spacing, spec);
  report.tests.push_back(field_test("L1 berezin t=" + fmt(t), field_lp_norm(field_t.field, 1.0), TestRole::equivalent));
  if (t != 2.0) {
    const BerezinField field_2 = berezin_field(mu, 2.0, w, radius, opts.spacing, spec);
    report.tests.push_back(field_test("L1 berezin t=2", field_lp_norm(field_2.field, 1.0), TestRole::equivalent));
  }
  const SampledField balls = ball_measure_field(mu, opts.delta, radius, opts.spacing, spec);
  report.tests.push_back(field_test("L1 ball delta=" + fmt(opts.delta), field_lp_norm(balls, 1.0), TestRole::equivalent));
  report.tests.push_back(lattice_test("l1 lattice r=" + fmt(lat.r), lattice_ball_sums(mu, lat, spec), lat, 1.0,
                                      TestRole::equivalent));
  report.tests.push_back(field_test("sup berezin t=" + fmt(t), field_lp_norm(field_t.field, kInfinity), TestRole::necessary));

  finalize(report);
  const CarlesonTest& sup = report.tests.back();
  if (report.classification == Verdict::holds && sup.verdict != Verdict::holds)
    report.notes.push_back("sup of the Berezin transform is not bounded although the L1 tests hold");
  return report;
}

CarlesonReport classify_p_infty(const Measure& mu, double p, const FockWeight& w, const Lattice& lat,
                                const QuadratureSpec& spec, const FieldOptions& opts) {
  require_exponent(p, "classify_p_infty: p must be >= 1");
  const double t = opts.t > 0.0 ? opts.t : 2.0;
  const double radius = opts.grid_radius > 0.0 ? opts.grid_radius : default_grid_radius(mu);

  CarlesonReport report;
  report.regime = Regime::p_infty;
  report.p = p;
  report.q = kInfinity;

  const QuadratureResult mass = total_mass(mu, spec);
  CarlesonTest hyp;
  hyp.name = "total mass";
  hyp.value = mass.verdict == Verdict::fails ? kInfinity : mass.value.real();
  hyp.curve = mass.growth;
  hyp.verdict = mass.verdict;
  hyp.role = TestRole::hypothesis;
  if (mass.verdict == Verdict::fails) hyp.note = "infinite total mass: outside the hypothesis of the equivalence";
  report.tests.push_back(hyp);

  const auto probes = standard_probes(w, opts.ring_radius);
  const EmbeddingResult direct = embedding_test(mu, p, kInfinity, probes, w, spec);
  report.tests.push_back(embedding_entry("direct sup embedding", direct, TestRole::equivalent));
  const EmbeddingResult pp = embedding_test(mu, p, p, probes, w, spec);
  report.tests.push_back(embedding_entry("embedding q=p", pp, TestRole::equivalent));
  report.notes.insert(report.notes.end(), pp.notes.begin(), pp.notes.end());

  const BerezinField field = berezin_field(mu, t, w, radius, opts.spacing, spec);
  report.tests.push_back(field_test("sup berezin t=" + fmt(t), field_lp_norm(field.field, kInfinity), TestRole::equivalent));
  const SampledField balls = ball_measure_field(mu, opts.delta, radius, opts.spacing, spec);
  report.tests.push_back(field_test("sup ball delta=" + fmt(opts.delta), field_lp_norm(balls, kInfinity), TestRole::equivalent));
  report.tests.push_back(lattice_test("sup lattice r=" + fmt(lat.r), lattice_ball_sums(mu, lat, spec), lat, kInfinity,
                                      TestRole::equivalent));

  if (mass.verdict != Verdict::holds) {
    for (auto& test : report.tests)
      if (test.role == TestRole::equivalent) test.role = TestRole::auxiliary;
    report.notes.push_back("measure is outside the hypothesis (finite total mass); equivalence not assessed");
  }
  finalize(report);
  return report;
}

VanishingProbe vanishing_probe(const Measure& mu, double q, const FockWeight& w,
                               const std::vector<ComplexPoint>& escape_path, const QuadratureSpec& spec) {
  require_exponent(q, "vanishing_probe: q must be >= 1");
  if (escape_path.size() < 4) throw std::invalid_argument("vanishing_probe: need at least 4 path points");
  for (std::size_t i = 1; i < escape_path.size(); ++i)
    if (!(escape_path[i].abs() > escape_path[i - 1].abs()))
      throw std::invalid_argument("vanishing_probe: path moduli must increase");
  VanishingProbe out;
  std::vector<double> values;
  for (const auto& z : escape_path) {
    const double v = std::numbers::pi / w.alpha() * berezin_measure(mu, q, z, w, spec);
    out.curve.emplace_back(z.abs(), v);
    values.push_back(v);
  }
  out.verdict = classify_decay(values);
  return out;
}

namespace {

void add_triple(CarlesonReport& report, const SampledField& berezin, const SampledField& balls,
                const std::vector<double>& sums, const Lattice& lat, double exponent, double t,
                double delta, TestRole role) {
  const std::string e = std::isinf(exponent) ? "sup" : "L" + fmt(exponent);
  report.tests.push_back(field_test(e + " berezin t=" + fmt(t), field_lp_norm(berezin, exponent), role));
  report.tests.push_back(field_test(e + " ball delta=" + fmt(delta), field_lp_norm(balls, exponent), role));
  report.tests.push_back(lattice_test(e + " lattice r=" + fmt(lat.r), sums, lat, exponent, role));
}

}  // namespace

CarlesonReport equivalence_crosscheck(const Measure& mu, double p, double t, double delta,
                                      const FockWeight& w, const Lattice& lat, const QuadratureSpec& spec,
                                      std::optional<double> q, double grid_radius, double spacing) {
  require_exponent(p, "equivalence_crosscheck: p must be >= 1");
  if (q) require_exponent(*q, "equivalence_crosscheck: q must be >= 1");
  const double radius = grid_radius > 0.0 ? grid_radius : default_grid_radius(mu);
  CarlesonReport report;
  report.regime = Regime::pq;
  report.p = p;
  report.q = q.value_or(p);

  const BerezinField field = berezin_field(mu, t, w, radius, spacing, spec);
  const SampledField balls = ball_measure_field(mu, delta, radius, spacing, spec);
  const std::vector<double> sums = lattice_ball_sums(mu, lat, spec);
  add_triple(report, field.field, balls, sums, lat, p, t, delta, TestRole::equivalent);

  if (q && *q < p) {
    const double s = p / *q;
    const double s_conj = std::isinf(p) ? 1.0 : s / (s - 1.0);
    report.conjugate_exponents = std::make_pair(s, s_conj);
    const std::size_t first = report.tests.size();
    add_triple(report, field.field, balls, sums, lat, s_conj, t, delta, TestRole::auxiliary);
    std::optional<Verdict> common;
    bool agree = true;
    for (std::size_t i = first; i < report.tests.size(); ++i) {
      const Verdict v = report.tests[i].verdict;
      if (v == Verdict::inconclusive) continue;
      if (!common) common = v;
      else if (*common != v) agree = false;
    }
    report.notes.push_back(std::string("conjugate-exponent triple ") + (agree ? "agrees" : "disagrees"));
  }
  finalize(report);
  return report;
}

}  // namespace fock
