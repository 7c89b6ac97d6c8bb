#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "fock/carleson.hpp"

using namespace fock;
using std::numbers::pi;

namespace {

struct Named {
  std::string name;
  Measure mu;
};

std::vector<Named> suite() {
  const Lattice comb = make_lattice(1.0, 4.0);
  return {
      {"empty", Measure::empty()},
      {"dirac", Measure::dirac({0.0, 0.0})},
      {"three atoms", Measure::atomic({{{0.0, 0.0}, 1.0}, {{1.5, 0.5}, 2.0}, {{-1.0, -2.0}, 0.5}})},
      {"gaussian", Measure::gaussian(1.0, 1.0)},
      {"lebesgue", Measure::lebesgue()},
      {"comb", lattice_comb(comb, [](std::size_t k) { return 1.0 / std::pow(k + 1.0, 2); })},
  };
}

const Lattice& classification_lattice() {
  static const Lattice lat = make_lattice(1.0, 12.0);
  return lat;
}

}  // namespace

TEST_CASE("standard probes") {
  const auto probes = standard_probes(FockWeight(1.0));
  CHECK(probes.size() == 18);
  CHECK(probes.front().name == "1");
  CHECK(probes.back().name == "exp(alpha z^2/2)");
}

TEST_CASE("embedding test examples") {
  const FockWeight w(1.0);
  const auto dirac = Measure::dirac({0.0, 0.0});
  std::vector<Probe> probes = {{"1", EntireFunction::constant(1.0)},
                               {"k_(1+0i)", EntireFunction::normalized_kernel({1.0, 0.0})},
                               {"e_1", EntireFunction::orthonormal(1)}};
  const EmbeddingResult e = embedding_test(dirac, kInfinity, 2.0, probes, w);
  CHECK(e.best_ratio == doctest::Approx(1.0));
  CHECK(e.witness == "1");
  CHECK(e.verdict == Verdict::holds);

  const std::vector<Probe> quad = {{"q", EntireFunction::quadratic_exponential(0.5)}};
  const EmbeddingResult leb = embedding_test(Measure::lebesgue(), kInfinity, 2.0, quad, w);
  CHECK(leb.verdict == Verdict::fails);
  CHECK(std::isinf(leb.best_ratio));
  CHECK(leb.witness == "q");

  CHECK(embedding_test(Measure::empty(), kInfinity, 2.0, probes, w).best_ratio == 0.0);

  // finite p skips the quadratic exponential
  const EmbeddingResult skip = embedding_test(dirac, 2.0, 2.0, standard_probes(w), w);
  CHECK(skip.notes.size() == 1);
  CHECK_THROWS(embedding_test(dirac, 2.0, 2.0, {}, w));
}

TEST_CASE("(inf,q) classification on the suite") {
  const FockWeight w(1.0);
  for (const auto& [name, mu] : suite()) {
    CAPTURE(name);
    const CarlesonReport r = classify_infty_q(mu, 2.0, w, classification_lattice());
    CHECK(r.consistent);
    for (const auto& t : r.tests) {
      CAPTURE(t.name);
      CHECK(t.verdict != Verdict::inconclusive);
    }
    if (name == "lebesgue") {
      CHECK(r.classification == Verdict::fails);
      CHECK(r.headline() == "not (∞,2)-Carleson");
      CHECK(r.has_divergence());
      CHECK(r.tests.back().verdict == Verdict::holds);  // sup bound still holds
      CHECK(r.tests.back().value == doctest::Approx(1.0));
    } else {
      CHECK(r.classification == Verdict::holds);
      CHECK(r.tests.back().verdict == Verdict::holds);
    }
  }
}

TEST_CASE("(p,inf) classification") {
  const FockWeight w(1.0);
  const Lattice& lat = classification_lattice();
  const CarlesonReport atom = classify_p_infty(Measure::dirac({0.0, 0.0}), 2.0, w, lat);
  CHECK(atom.classification == Verdict::holds);
  CHECK(atom.consistent);
  const CarlesonTest* direct = atom.find("direct sup embedding");
  REQUIRE(direct != nullptr);
  CHECK(direct->value == doctest::Approx(1.0));

  const CarlesonReport leb = classify_p_infty(Measure::lebesgue(), 2.0, w, lat);
  CHECK(leb.tests.front().verdict == Verdict::fails);
  CHECK(leb.classification == Verdict::inconclusive);
  CHECK(leb.has_divergence());

  const CarlesonReport none = classify_p_infty(Measure::empty(), 2.0, w, lat);
  CHECK(none.classification == Verdict::holds);
  CHECK(none.find("direct sup embedding")->value == 0.0);
}

TEST_CASE("vanishing probe") {
  const FockWeight w(1.0);
  const std::vector<ComplexPoint> path = {{0.0, 0.0}, {2.0, 0.0}, {4.0, 0.0}, {6.0, 0.0}};
  const VanishingProbe d = vanishing_probe(Measure::dirac({0.0, 0.0}), 2.0, w, path);
  CHECK(d.verdict == Verdict::holds);
  CHECK(d.curve.back().second < 1e-10);
  CHECK(d.curve[1].second == doctest::Approx(std::exp(-4.0)));
  const VanishingProbe leb = vanishing_probe(Measure::lebesgue(), 2.0, w, path);
  CHECK(leb.verdict == Verdict::fails);
  for (const auto& [r, v] : leb.curve) CHECK(std::abs(v - pi) < 1e-8);
  const VanishingProbe none = vanishing_probe(Measure::empty(), 2.0, w, path);
  CHECK(none.verdict == Verdict::holds);
  CHECK(none.curve.back().second == 0.0);
  const std::vector<ComplexPoint> bad = {{1.0, 0.0}, {0.5, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
  CHECK_THROWS(vanishing_probe(Measure::empty(), 2.0, w, bad));
}

TEST_CASE("equivalence crosscheck") {
  const FockWeight w(1.0);
  const Lattice& lat = classification_lattice();
  const CarlesonReport g = equivalence_crosscheck(Measure::gaussian(1.0, 1.0), 1.0, 2.0, 1.0, w, lat);
  CHECK(g.consistent);
  CHECK(g.classification == Verdict::holds);
  const CarlesonReport l1 = equivalence_crosscheck(Measure::lebesgue(), 1.0, 2.0, 1.0, w, lat);
  CHECK(l1.consistent);
  CHECK(l1.classification == Verdict::fails);
  const CarlesonReport linf = equivalence_crosscheck(Measure::lebesgue(), kInfinity, 2.0, 1.0, w, lat);
  CHECK(linf.consistent);
  CHECK(linf.classification == Verdict::holds);
  const CarlesonReport conj = equivalence_crosscheck(Measure::gaussian(1.0, 1.0), 4.0, 2.0, 1.0, w, lat, {}, 2.0);
  REQUIRE(conj.conjugate_exponents.has_value());
  CHECK(conj.conjugate_exponents->first == doctest::Approx(2.0));
  CHECK(conj.conjugate_exponents->second == doctest::Approx(2.0));
}

TEST_CASE("scaling the measure never flips a verdict") {
  const FockWeight w(1.0);
  const Lattice& lat = classification_lattice();
  for (const auto& [name, mu] : suite()) {
    if (name == "empty") continue;
    CAPTURE(name);
    const CarlesonReport a = classify_infty_q(mu, 1.0, w, lat);
    const CarlesonReport b = classify_infty_q(mu.scaled(4.0), 1.0, w, lat);
    REQUIRE(a.tests.size() == b.tests.size());
    for (std::size_t i = 0; i < a.tests.size(); ++i) {
      CHECK(a.tests[i].verdict == b.tests[i].verdict);
      if (a.tests[i].verdict == Verdict::holds && i > 0)
        CHECK(b.tests[i].value == doctest::Approx(4.0 * a.tests[i].value).epsilon(1e-9));
    }
    // q = 1 norms scale linearly, so the embedding ratio scales by 4 as well
    if (a.tests[0].verdict == Verdict::holds)
      CHECK(b.tests[0].value == doctest::Approx(4.0 * a.tests[0].value).epsilon(1e-8));
  }
}

TEST_CASE("vanishing agrees with the classification on Gaussian-tailed measures") {
  const FockWeight w(1.0);
  const std::vector<ComplexPoint> path = {{2.0, 0.0}, {4.0, 0.0}, {6.0, 0.0}, {8.0, 0.0}};
  for (const auto& [name, mu] : suite()) {
    CAPTURE(name);
    const VanishingProbe v = vanishing_probe(mu, 2.0, w, path);
    CHECK(v.verdict == (name == "lebesgue" ? Verdict::fails : Verdict::holds));
  }
}
