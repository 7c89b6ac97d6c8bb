#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fock/io.hpp"
#include "fock/norms.hpp"
#include "fock/quadrature.hpp"
#include "fock/transforms.hpp"
#include "fock/verify.hpp"

using namespace fock;
using std::numbers::pi;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_measure_spec(text);
  } catch (const SpecError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("every shipped measure file round-trips") {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(FOCK_DATA_DIR "/measures")) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const MeasureSpecFile a = load_measure_spec(entry.path().string());
    const MeasureSpecFile b = parse_measure_spec(a.to_json());
    CHECK(a == b);
    CHECK(b.to_json() == a.to_json());
    CHECK_NOTHROW(a.to_measure());
    ++count;
  }
  CHECK(count >= 8);
}

TEST_CASE("shipped files match the in-memory suite") {
  const auto suite = standard_suite();
  const auto mass_of = [](const Measure& mu) { return total_mass(mu).value.real(); };
  const Measure comb = load_measure_spec(FOCK_DATA_DIR "/measures/comb.json").to_measure();
  const Measure three = load_measure_spec(FOCK_DATA_DIR "/measures/three_atoms.json").to_measure();
  CHECK(mass_of(comb) == doctest::Approx(mass_of(suite[5].mu)).epsilon(1e-15));
  CHECK(mass_of(three) == doctest::Approx(3.5));
  const auto* atoms = comb.get_if<AtomicMeasure>();
  const auto* ref = suite[5].mu.get_if<AtomicMeasure>();
  REQUIRE(atoms != nullptr);
  REQUIRE(ref != nullptr);
  REQUIRE(atoms->atoms.size() == ref->atoms.size());
  for (std::size_t k = 0; k < atoms->atoms.size(); ++k) {
    CHECK(atoms->atoms[k].point == ref->atoms[k].point);
    CHECK(atoms->atoms[k].mass == ref->atoms[k].mass);
  }
}

TEST_CASE("measure types parse to their variants") {
  const FockWeight w(1.0);
  const auto g = parse_measure_spec(R"({"type": "gaussian", "beta": 2, "scale": 3, "alpha": 0.5})");
  CHECK(g.alpha == 0.5);
  CHECK(g.to_measure().get_if<GaussianDensityMeasure>()->beta == 2.0);
  CHECK(parse_measure_spec(R"({"type": "lebesgue"})").to_measure().get_if<LebesgueMeasure>()->scale == 1.0);

  // Piecewise linear: a cone of height 1 and radius 1 has mass pi/3.
  const auto cone = parse_measure_spec(R"({"type": "radial", "samples": [[0, 1], [1, 0]]})").to_measure();
  CHECK(cone.support_radius() == 1.0);
  CHECK(cone.density_at({0.5, 0.0}) == doctest::Approx(0.5));
  CHECK(total_mass(cone).value.real() == doctest::Approx(pi / 3.0).epsilon(1e-8));

  // Constant bilinear grid is the indicator of the square [-1, 1]^2.
  const auto square = parse_measure_spec(
                          R"({"type": "density-grid", "radius": 1, "n": 2, "values": [2, 2, 2, 2]})")
                          .to_measure();
  CHECK(square.density_at({0.9, -0.9}) == doctest::Approx(2.0));
  CHECK(square.density_at({1.1, 0.0}) == 0.0);
  CHECK(ball_measure(square, {0.0, 0.0}, 0.5) == doctest::Approx(2.0 * pi * 0.25).epsilon(1e-6));

  // Bilinear in x: values 0 at x=-1 and 1 at x=1.
  const auto ramp = parse_measure_spec(
                        R"({"type": "density-grid", "radius": 1, "n": 2, "values": [0, 1, 0, 1]})")
                        .to_measure();
  CHECK(ramp.density_at({0.0, 0.3}) == doctest::Approx(0.5));
  CHECK(ramp.density_at({0.5, -0.7}) == doctest::Approx(0.75));
}

TEST_CASE("validation errors name the field") {
  CHECK(field_of(R"({"type": "atomic", "atoms": [{"re": 0, "im": 0, "mass": -1}]})") == "atoms[0].mass");
  CHECK(field_of(R"({"type": "atomic", "atoms": [{"re": 0, "mass": 1}]})") == "atoms[0].im");
  CHECK(field_of(R"({"type": "atomic", "alpha": 0, "atoms": []})") == "alpha");
  CHECK(field_of(R"({"type": "gaussian"})") == "beta");
  CHECK(field_of(R"({"type": "gaussian", "beta": 1, "scale": -2})") == "scale");
  CHECK(field_of(R"({"type": "lebesgue", "colour": 1})") == "colour");
  CHECK(field_of(R"({"type": "cantor"})") == "type");
  CHECK(field_of(R"({"type": "radial", "samples": [[0, 1], [0, 0]]})") == "samples[1]");
  CHECK(field_of(R"({"type": "density-grid", "radius": 1, "n": 3, "values": [1, 2]})") == "values");
  CHECK(field_of(R"({"type": "lebesgue", "defaults": {"q": -1}})") == "defaults.q");
  CHECK(field_of(R"({"type": "lebesgue", "defaults": {"p": "inf"}})") == "defaults.p");
  CHECK(field_of(R"({"type": "lebesgue", "scale": NaN})") == "json");
  CHECK(field_of(R"({"type": "lebesgue", "scale": Infinity})") == "json");
  CHECK(field_of(R"({"type": "lebesgue", "scale": 1e999})") == "json");
  CHECK(field_of(R"([1, 2])") == "json");
  CHECK(field_of(R"({"type": "lebesgue", "defaults": {"t": 1, "grid_radius": 9}})").empty());
}

TEST_CASE("function specs") {
  const FockWeight w(1.0);
  const auto at = [&](const std::string& s, Complex z) { return eval(parse_function_spec(s), z, w); };
  CHECK(std::abs(at("1", {2.0, 1.0}) - 1.0) < 1e-15);
  CHECK(std::abs(at("const:2.5", {2.0, 1.0}) - 2.5) < 1e-15);
  CHECK(std::abs(at("z^3", {0.0, 1.0}) - Complex(0.0, -1.0)) < 1e-14);
  CHECK(std::abs(at("mono:2", {2.0, 0.0}) - 4.0) < 1e-14);
  CHECK(std::abs(at("z", {1.5, 0.0}) - 1.5) < 1e-15);
  CHECK(std::abs(at("e_2", {1.0, 0.0}) - std::sqrt(0.5)) < 1e-14);
  CHECK(std::abs(at("e:2", {1.0, 0.0}) - std::sqrt(0.5)) < 1e-14);
  CHECK(std::abs(at("poly:1,0,2", {1.0, 1.0}) - Complex(1.0, 4.0)) < 1e-14);
  CHECK(std::abs(at("qexp:0.25", {2.0, 0.0}) - std::exp(1.0)) < 1e-13);
  // k_z(z) = e^{alpha|z|^2/2}
  CHECK(std::abs(at("k:1,1", {1.0, 1.0}) - std::exp(1.0)) < 1e-13);
  for (const char* bad : {"", "z^", "z^-1", "k:1", "qexp:a", "poly:1,nan", "sin", "e_x", "const:inf"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_function_spec(bad), SpecError);
  }
  CHECK(parse_real_list("1, 2,inf", "p") == std::vector<double>{1.0, 2.0, kInfinity});
  CHECK_THROWS_AS(parse_real_list("1,,2", "p"), SpecError);
}

TEST_CASE("csv writers use fixed headers and round-trip numbers") {
  CHECK(csv_number(0.1) == "0.10000000000000001");
  CHECK(std::stod(csv_number(pi)) == pi);
  CHECK(csv_number(kInfinity) == "inf");

  SampledField f;
  f.samples = {{{0.0, 0.0}, 1.0}, {{0.25, -0.5}, 1.0 / 3.0}};
  std::ostringstream os;
  write_field_csv(os, f);
  CHECK(os.str() == "re,im,value\n0,0,1\n0.25,-0.5,0.33333333333333331\n");

  std::ostringstream empty;
  write_field_csv(empty, SampledField{});
  CHECK(empty.str() == "re,im,value\n");

  CarlesonTest t;
  t.name = "a,b";
  t.note = "say \"hi\"";
  CarlesonReport r;
  r.tests.push_back(t);
  std::ostringstream cs;
  write_carleson_csv(cs, r);
  CHECK(cs.str().rfind("kind,test,role,x,value,verdict,note\ntest,\"a,b\",equivalent,,0,inconclusive,\"say \"\"hi\"\"\"\n", 0) == 0);
}
