#include "fock/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace fock {

namespace {

using nlohmann::json;

constexpr const char* kTypes[] = {"atomic", "gaussian", "lebesgue", "radial", "density-grid"};

double real_field(const json& j, const std::string& field) {
  if (!j.is_number()) throw SpecError(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw SpecError(field, "must be finite");
  return x;
}

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw SpecError(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

const json& member(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw SpecError(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

std::optional<double> optional_real(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  return real_field(*it, where + "." + key);
}

// Piecewise-linear profile through sorted (r, rho) samples, zero past the end.
std::function<double(double)> linear_profile(std::vector<std::pair<double, double>> s) {
  return [s = std::move(s)](double r) {
    if (r > s.back().first) return 0.0;
    if (r <= s.front().first) return s.front().second;
    const auto hi = std::lower_bound(s.begin(), s.end(), r,
                                     [](const auto& a, double x) { return a.first < x; });
    const auto lo = hi - 1;
    const double u = (r - lo->first) / (hi->first - lo->first);
    return (1.0 - u) * lo->second + u * hi->second;
  };
}

std::function<double(Complex)> bilinear_grid(double radius, int n, std::vector<double> values) {
  const double h = 2.0 * radius / (n - 1);
  auto v = std::make_shared<const std::vector<double>>(std::move(values));
  return [radius, n, h, v](Complex w) {
    const double x = (w.real() + radius) / h;
    const double y = (w.imag() + radius) / h;
    if (x < 0.0 || y < 0.0 || x > n - 1 || y > n - 1) return 0.0;
    const int i = std::min(static_cast<int>(x), n - 2);
    const int j = std::min(static_cast<int>(y), n - 2);
    const double u = x - i;
    const double t = y - j;
    const auto at = [&](int jj, int ii) { return (*v)[static_cast<std::size_t>(jj) * n + ii]; };
    return (1 - u) * (1 - t) * at(j, i) + u * (1 - t) * at(j, i + 1) + (1 - u) * t * at(j + 1, i) +
           u * t * at(j + 1, i + 1);
  };
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(std::string_view text, const std::string& field) {
  const std::string s = trim(text);
  if (s == "inf" || s == "infinity") return kInfinity;
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw SpecError(field, "not a number: \"" + s + "\"");
  }
  return x;
}

int parse_index(std::string_view text) {
  const std::string s = trim(text);
  int n = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || n < 0) {
    throw SpecError("function", "bad index \"" + s + "\"");
  }
  return n;
}

std::vector<double> finite_list(std::string_view text) {
  auto v = parse_real_list(text, "function");
  for (double x : v) {
    if (!std::isfinite(x)) throw SpecError("function", "coefficients must be finite");
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

void MeasureSpecFile::validate() const {
  if (std::none_of(std::begin(kTypes), std::end(kTypes), [&](const char* t) { return type == t; })) {
    throw SpecError("type", "unknown measure type \"" + type + "\"");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw SpecError("alpha", "must be positive and finite");
  if (type == "atomic") {
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const auto& a = atoms[k];
      const std::string f = "atoms[" + std::to_string(k) + "]";
      if (!std::isfinite(a.point.re) || !std::isfinite(a.point.im)) throw SpecError(f, "non-finite point");
      if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw SpecError(f + ".mass", "must be >= 0 and finite");
    }
  } else if (type == "gaussian") {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw SpecError("beta", "must be positive and finite");
    if (!(scale >= 0.0) || !std::isfinite(scale)) throw SpecError("scale", "must be >= 0 and finite");
  } else if (type == "lebesgue") {
    if (!(scale >= 0.0) || !std::isfinite(scale)) throw SpecError("scale", "must be >= 0 and finite");
  } else if (type == "radial") {
    if (radial_samples.size() < 2) throw SpecError("samples", "need at least two samples");
    for (std::size_t k = 0; k < radial_samples.size(); ++k) {
      const auto [r, rho] = radial_samples[k];
      const std::string f = "samples[" + std::to_string(k) + "]";
      if (!std::isfinite(r) || !std::isfinite(rho)) throw SpecError(f, "non-finite value");
      if (rho < 0.0) throw SpecError(f, "density must be >= 0");
      if (k == 0 && r < 0.0) throw SpecError(f, "radius must be >= 0");
      if (k > 0 && !(r > radial_samples[k - 1].first)) throw SpecError(f, "radii must increase");
    }
  } else {
    if (!(grid_radius > 0.0) || !std::isfinite(grid_radius)) throw SpecError("radius", "must be positive and finite");
    if (grid_n < 2) throw SpecError("n", "must be at least 2");
    if (grid_values.size() != static_cast<std::size_t>(grid_n) * grid_n) {
      throw SpecError("values", "expected n*n = " + std::to_string(grid_n * grid_n) + " values, got " +
                                    std::to_string(grid_values.size()));
    }
    for (std::size_t k = 0; k < grid_values.size(); ++k) {
      if (!std::isfinite(grid_values[k]) || grid_values[k] < 0.0) {
        throw SpecError("values[" + std::to_string(k) + "]", "must be >= 0 and finite");
      }
    }
  }
  const auto check = [](const std::optional<double>& v, const char* name) {
    if (!v) return;
    if (!std::isfinite(*v) || !(*v > 0.0)) {
      throw SpecError(std::string("defaults.") + name, "must be positive");
    }
  };
  check(defaults.t, "t");
  check(defaults.p, "p");
  check(defaults.q, "q");
  check(defaults.lattice_r, "lattice_r");
  check(defaults.grid_radius, "grid_radius");
  if (defaults.p && *defaults.p < 1.0) throw SpecError("defaults.p", "must be >= 1");
}

Measure MeasureSpecFile::to_measure() const {
  validate();
  if (type == "atomic") return Measure::atomic(atoms);
  if (type == "gaussian") return Measure::gaussian(beta, scale);
  if (type == "lebesgue") return Measure::lebesgue(scale);
  if (type == "radial") {
    double bound = 0.0;
    for (const auto& s : radial_samples) bound = std::max(bound, s.second);
    return Measure::radial(linear_profile(radial_samples), bound, radial_samples.back().first);
  }
  const double bound = *std::max_element(grid_values.begin(), grid_values.end());
  return Measure::density(bilinear_grid(grid_radius, grid_n, grid_values), bound,
                          grid_radius * std::sqrt(2.0));
}

std::string MeasureSpecFile::to_json() const {
  json j = json::object();
  j["type"] = type;
  j["alpha"] = alpha;
  if (type == "atomic") {
    json a = json::array();
    for (const auto& at : atoms) a.push_back({{"re", at.point.re}, {"im", at.point.im}, {"mass", at.mass}});
    j["atoms"] = a;
  } else if (type == "gaussian") {
    j["beta"] = beta;
    j["scale"] = scale;
  } else if (type == "lebesgue") {
    j["scale"] = scale;
  } else if (type == "radial") {
    json s = json::array();
    for (const auto& [r, rho] : radial_samples) s.push_back({r, rho});
    j["samples"] = s;
  } else {
    j["radius"] = grid_radius;
    j["n"] = grid_n;
    j["values"] = grid_values;
  }
  json d = json::object();
  if (defaults.t) d["t"] = *defaults.t;
  if (defaults.p) d["p"] = *defaults.p;
  if (defaults.q) d["q"] = *defaults.q;
  if (defaults.lattice_r) d["lattice_r"] = *defaults.lattice_r;
  if (defaults.grid_radius) d["grid_radius"] = *defaults.grid_radius;
  if (!d.empty()) j["defaults"] = d;
  return j.dump(2) + "\n";
}

bool operator==(const MeasureSpecFile& a, const MeasureSpecFile& b) {
  const auto atoms_eq = [](const std::vector<Atom>& x, const std::vector<Atom>& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                      [](const Atom& u, const Atom& v) { return u.point == v.point && u.mass == v.mass; });
  };
  return a.type == b.type && a.alpha == b.alpha && atoms_eq(a.atoms, b.atoms) && a.beta == b.beta &&
         a.scale == b.scale && a.radial_samples == b.radial_samples && a.grid_radius == b.grid_radius &&
         a.grid_n == b.grid_n && a.grid_values == b.grid_values && a.defaults == b.defaults;
}

MeasureSpecFile parse_measure_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError("json", e.what());
  }
  if (!j.is_object()) throw SpecError("json", "top level must be an object");

  MeasureSpecFile s;
  const auto& type = member(j, "type", "");
  if (!type.is_string()) throw SpecError("type", "expected a string");
  s.type = type.get<std::string>();
  if (const auto it = j.find("alpha"); it != j.end()) s.alpha = real_field(*it, "alpha");

  if (s.type == "atomic") {
    require_keys(j, "", {"type", "alpha", "defaults", "atoms"});
    const auto& atoms = member(j, "atoms", "");
    if (!atoms.is_array()) throw SpecError("atoms", "expected an array");
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const std::string f = "atoms[" + std::to_string(k) + "]";
      const auto& a = atoms[k];
      if (!a.is_object()) throw SpecError(f, "expected an object");
      require_keys(a, f, {"re", "im", "mass"});
      Atom at;
      at.point = ComplexPoint(real_field(member(a, "re", f), f + ".re"), real_field(member(a, "im", f), f + ".im"));
      at.mass = real_field(member(a, "mass", f), f + ".mass");
      s.atoms.push_back(at);
    }
  } else if (s.type == "gaussian") {
    require_keys(j, "", {"type", "alpha", "defaults", "beta", "scale"});
    s.beta = real_field(member(j, "beta", ""), "beta");
    if (const auto it = j.find("scale"); it != j.end()) s.scale = real_field(*it, "scale");
  } else if (s.type == "lebesgue") {
    require_keys(j, "", {"type", "alpha", "defaults", "scale"});
    if (const auto it = j.find("scale"); it != j.end()) s.scale = real_field(*it, "scale");
  } else if (s.type == "radial") {
    require_keys(j, "", {"type", "alpha", "defaults", "samples"});
    const auto& samples = member(j, "samples", "");
    if (!samples.is_array()) throw SpecError("samples", "expected an array");
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const std::string f = "samples[" + std::to_string(k) + "]";
      if (!samples[k].is_array() || samples[k].size() != 2) throw SpecError(f, "expected [r, density]");
      s.radial_samples.emplace_back(real_field(samples[k][0], f), real_field(samples[k][1], f));
    }
  } else if (s.type == "density-grid") {
    require_keys(j, "", {"type", "alpha", "defaults", "radius", "n", "values"});
    s.grid_radius = real_field(member(j, "radius", ""), "radius");
    const auto& n = member(j, "n", "");
    if (!n.is_number_integer()) throw SpecError("n", "expected an integer");
    s.grid_n = n.get<int>();
    const auto& values = member(j, "values", "");
    if (!values.is_array()) throw SpecError("values", "expected an array");
    for (std::size_t k = 0; k < values.size(); ++k) {
      s.grid_values.push_back(real_field(values[k], "values[" + std::to_string(k) + "]"));
    }
  } else {
    throw SpecError("type", "unknown measure type \"" + s.type + "\"");
  }

  if (const auto it = j.find("defaults"); it != j.end()) {
    if (!it->is_object()) throw SpecError("defaults", "expected an object");
    require_keys(*it, "defaults", {"t", "p", "q", "lattice_r", "grid_radius"});
    s.defaults.t = optional_real(*it, "t", "defaults");
    s.defaults.p = optional_real(*it, "p", "defaults");
    s.defaults.q = optional_real(*it, "q", "defaults");
    s.defaults.lattice_r = optional_real(*it, "lattice_r", "defaults");
    s.defaults.grid_radius = optional_real(*it, "grid_radius", "defaults");
  }
  s.validate();
  return s;
}

MeasureSpecFile load_measure_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("file", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_measure_spec(ss.str());
}

// ---------------------------------------------------------------------------

std::vector<double> parse_real_list(std::string_view text, const std::string& field) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_real(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start), field));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

EntireFunction parse_function_spec(std::string_view spec) {
  const std::string s = trim(spec);
  if (s == "z") return EntireFunction::monomial(1);
  if (s.rfind("z^", 0) == 0) return EntireFunction::monomial(parse_index(s.substr(2)));
  if (s.rfind("e_", 0) == 0) return EntireFunction::orthonormal(parse_index(s.substr(2)));

  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    const auto c = finite_list(s);
    if (c.size() == 1) return EntireFunction::constant(c[0]);
    throw SpecError("function", "unrecognized function \"" + s + "\"");
  }
  const std::string head = s.substr(0, colon);
  const std::string_view rest = std::string_view(s).substr(colon + 1);
  if (head == "const") {
    const auto c = finite_list(rest);
    if (c.size() != 1) throw SpecError("function", "const takes one value");
    return EntireFunction::constant(c[0]);
  }
  if (head == "mono") return EntireFunction::monomial(parse_index(rest));
  if (head == "e") return EntireFunction::orthonormal(parse_index(rest));
  if (head == "poly") {
    const auto c = finite_list(rest);
    return EntireFunction::polynomial(std::vector<Complex>(c.begin(), c.end()));
  }
  if (head == "k") {
    const auto c = finite_list(rest);
    if (c.size() != 2) throw SpecError("function", "k takes re,im");
    return EntireFunction::normalized_kernel(ComplexPoint(c[0], c[1]));
  }
  if (head == "qexp") {
    const auto c = finite_list(rest);
    if (c.size() != 1) throw SpecError("function", "qexp takes one value");
    return EntireFunction::quadratic_exponential(c[0]);
  }
  throw SpecError("function", "unrecognized function \"" + s + "\"");
}

// ---------------------------------------------------------------------------

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_field_csv(std::ostream& os, const SampledField& field) {
  os << "re,im,value\n";
  for (const auto& s : field.samples) {
    os << csv_number(s.z.re) << ',' << csv_number(s.z.im) << ',' << csv_number(s.value) << '\n';
  }
}

void write_norms_csv(std::ostream& os, const std::vector<NormRow>& rows) {
  os << "p,fock_norm,fock_verdict,mu_norm,mu_verdict\n";
  for (const auto& r : rows) {
    os << csv_number(r.p) << ',' << csv_number(r.fock.value) << ',' << to_string(r.fock.verdict) << ','
       << csv_number(r.mu.value) << ',' << to_string(r.mu.verdict) << '\n';
  }
}

void write_carleson_csv(std::ostream& os, const CarlesonReport& report) {
  os << "kind,test,role,x,value,verdict,note\n";
  for (const auto& t : report.tests) {
    os << "test," << csv_text(t.name) << ',' << to_string(t.role) << ",," << csv_number(t.value) << ','
       << to_string(t.verdict) << ',' << csv_text(t.note) << '\n';
    for (const auto& [x, v] : t.curve) {
      os << "curve," << csv_text(t.name) << ',' << to_string(t.role) << ',' << csv_number(x) << ','
         << csv_number(v) << ",,\n";
    }
  }
  os << "summary," << csv_text(report.headline()) << ",,," << (report.consistent ? 1 : 0) << ','
     << to_string(report.classification) << ',' << csv_text(report.normalization) << '\n';
}

void write_matrix_csv(std::ostream& os, const ToeplitzMatrix& m) {
  os << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
      const Complex v = m.entries(r, c);
      os << r << ',' << c << ',' << csv_number(v.real()) << ',' << csv_number(v.imag()) << '\n';
    }
  }
}

void write_lattice_csv(std::ostream& os, const Lattice& lat, const std::vector<double>& ball_masses) {
  os << "index,re,im,mass\n";
  for (std::size_t k = 0; k < lat.centers.size(); ++k) {
    os << k << ',' << csv_number(lat.centers[k].re) << ',' << csv_number(lat.centers[k].im) << ','
       << (k < ball_masses.size() ? csv_number(ball_masses[k]) : "") << '\n';
  }
}

void write_bound_csv(std::ostream& os, const BoundednessEstimate& b) {
  os << "quantity,value\n";
  os << "upper_proxy," << csv_number(b.upper_proxy) << '\n';
  os << "lower_proxy," << csv_number(b.lower_proxy) << '\n';
  os << "growth," << to_string(b.growth) << '\n';
  os << "verdict," << to_string(b.verdict) << '\n';
}

void write_compact_csv(std::ostream& os, const CompactnessProbe& c) {
  os << "kind,x,value\n";
  for (const auto& [r, v] : c.ring_maxima) os << "ring_max," << csv_number(r) << ',' << csv_number(v) << '\n';
  for (Eigen::Index k = 0; k < c.singular_values.size(); ++k) {
    os << "singular_value," << k << ',' << csv_number(c.singular_values(k)) << '\n';
  }
  os << "trailing_ratio,," << csv_number(c.trailing_ratio) << '\n';
  os << "verdict,," << to_string(c.verdict) << '\n';
}

std::string format_report(const CarlesonReport& report) {
  std::ostringstream os;
  os << report.headline() << '\n';
  os << "  regime " << to_string(report.regime) << ", p = " << csv_number(report.p)
     << ", q = " << csv_number(report.q) << '\n';
  if (report.conjugate_exponents) {
    os << "  s = " << csv_number(report.conjugate_exponents->first)
       << ", s' = " << csv_number(report.conjugate_exponents->second) << '\n';
  }
  for (const auto& t : report.tests) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", t.value);
    os << "  [" << to_string(t.verdict) << "] " << t.name << " (" << to_string(t.role) << ") = " << buf;
    if (!t.note.empty()) os << "  " << t.note;
    os << '\n';
  }
  os << "  consistent: " << (report.consistent ? "yes" : "no") << '\n';
  os << "  normalization: " << report.normalization << '\n';
  for (const auto& n : report.notes) os << "  note: " << n << '\n';
  return os.str();
}

}  // namespace fock
