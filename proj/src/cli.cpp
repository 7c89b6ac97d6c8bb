#include "fock/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fock/carleson.hpp"
#include "fock/io.hpp"
#include "fock/lattice.hpp"
#include "fock/norms.hpp"
#include "fock/toeplitz.hpp"
#include "fock/transforms.hpp"
#include "fock/verify.hpp"

namespace fock::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string measure_file;
  std::string out_file;
  std::optional<double> radius;
  double spacing = 0.25;
  int cells_per_unit = 8;
};

struct Loaded {
  MeasureSpecFile file;
  Measure mu;
  FockWeight w;
  double radius;
  QuadratureSpec spec;
};

Loaded load(const Common& c) {
  MeasureSpecFile f = load_measure_spec(c.measure_file);
  Measure mu = f.to_measure();
  const FockWeight w = f.weight();
  double radius = c.radius.value_or(f.defaults.grid_radius.value_or(default_grid_radius(mu)));
  if (!(radius > 0.0)) throw SpecError("radius", "must be positive");
  if (!(c.spacing > 0.0)) throw SpecError("spacing", "must be positive");
  QuadratureSpec spec;
  spec.cells_per_unit = c.cells_per_unit;
  spec.validate();
  return {std::move(f), std::move(mu), w, radius, spec};
}

// CSV goes to --out when given, otherwise to stdout.
void emit(const Common& c, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (c.out_file.empty()) {
    write(out);
    return;
  }
  std::ofstream f(c.out_file);
  if (!f) throw SpecError("out", "cannot write " + c.out_file);
  write(f);
}

bool finite_field(const SampledField& f) {
  return std::all_of(f.samples.begin(), f.samples.end(), [](const FieldSample& s) { return std::isfinite(s.value); });
}

void add_common(CLI::App* sub, Common& c, bool with_grid) {
  sub->add_option("measure", c.measure_file, "measure specification (JSON)")->required();
  sub->add_option("--out", c.out_file, "CSV output file (default: stdout)");
  sub->add_option("--cells", c.cells_per_unit, "quadrature cells per unit length")->check(CLI::PositiveNumber);
  if (with_grid) {
    sub->add_option("--radius", c.radius, "grid radius");
    sub->add_option("--spacing", c.spacing, "grid spacing");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fock space Carleson measure diagnostics", "fockcarleson"};
  app.require_subcommand(1);

  Common common;
  std::function<int()> action;

  auto* berezin = app.add_subcommand("berezin", "Berezin transform field (re,im,value)");
  std::optional<double> t_berezin;
  add_common(berezin, common, true);
  berezin->add_option("--t", t_berezin, "Berezin parameter (default 2)");
  berezin->callback([&] {
    action = [&] {
      const auto L = load(common);
      const double t = t_berezin.value_or(L.file.defaults.t.value_or(2.0));
      if (!(t > 0.0)) throw SpecError("t", "must be positive");
      const BerezinField f = berezin_field(L.mu, t, L.w, L.radius, common.spacing, L.spec);
      emit(common, out, [&](std::ostream& os) { write_field_csv(os, f.field); });
      return finite_field(f.field) ? kExitOk : kExitDivergence;
    };
  });

  auto* ballmap = app.add_subcommand("ballmap", "ball-measure field mu(B(z,delta)) (re,im,value)");
  double delta = 1.0;
  add_common(ballmap, common, true);
  ballmap->add_option("--delta", delta, "ball radius");
  ballmap->callback([&] {
    action = [&] {
      const auto L = load(common);
      if (!(delta > 0.0)) throw SpecError("delta", "must be positive");
      const SampledField f = ball_measure_field(L.mu, delta, L.radius, common.spacing, L.spec);
      emit(common, out, [&](std::ostream& os) { write_field_csv(os, f); });
      return finite_field(f) ? kExitOk : kExitDivergence;
    };
  });

  auto* norms = app.add_subcommand("norms", "Fock and measure norms of one function over a list of p");
  std::string function_spec = "1";
  std::string p_list = "1,2,4,8,inf";
  add_common(norms, common, false);
  norms->add_option("--function", function_spec, "1, z^n, e_n, k:re,im, poly:c0,c1,..., qexp:a");
  norms->add_option("--p", p_list, "comma-separated exponents, inf allowed");
  norms->callback([&] {
    action = [&] {
      const auto L = load(common);
      const EntireFunction f = parse_function_spec(function_spec);
      std::vector<NormRow> rows;
      for (double p : parse_real_list(p_list, "p")) {
        if (!(p >= 1.0)) throw SpecError("p", "exponents must be >= 1");
        NormParams fock_params{p, L.w, std::nullopt};
        NormParams mu_params{p, L.w, L.mu};
        rows.push_back({p, fock_norm(f, fock_params, L.spec), mu_norm(f, mu_params, L.spec)});
      }
      emit(common, out, [&](std::ostream& os) { write_norms_csv(os, rows); });
      const bool diverging = std::any_of(rows.begin(), rows.end(),
                                         [](const NormRow& r) { return r.fock.diverging() || r.mu.diverging(); });
      return diverging ? kExitDivergence : kExitOk;
    };
  });

  auto* carleson = app.add_subcommand("carleson", "Carleson classification (report to stdout, CSV to --out)");
  std::string regime = "infq";
  std::optional<double> q_opt, p_opt, t_opt, lattice_r;
  add_common(carleson, common, true);
  carleson->add_option("--regime", regime, "infq, pinf or pq")
      ->check(CLI::IsMember({"infq", "pinf", "pq"}));
  carleson->add_option("--q", q_opt, "target exponent");
  carleson->add_option("--p", p_opt, "source exponent");
  carleson->add_option("--t", t_opt, "Berezin parameter (default q)");
  carleson->add_option("--delta", delta, "ball radius");
  carleson->add_option("--lattice-r", lattice_r, "lattice radius");
  carleson->callback([&] {
    action = [&] {
      const auto L = load(common);
      const double r = lattice_r.value_or(L.file.defaults.lattice_r.value_or(1.0));
      if (!(r > 0.0)) throw SpecError("lattice-r", "must be positive");
      if (!(delta > 0.0)) throw SpecError("delta", "must be positive");
      const Lattice lat = make_lattice(r, L.radius);
      FieldOptions opts;
      opts.t = t_opt.value_or(L.file.defaults.t.value_or(0.0));
      opts.delta = delta;
      opts.grid_radius = L.radius;
      opts.spacing = common.spacing;
      const auto exponent = [](std::optional<double> v, std::optional<double> dflt, const char* name) {
        if (!v) v = dflt;
        if (!v) throw SpecError(name, "required for this regime");
        if (!(*v >= 1.0)) throw SpecError(name, "must be >= 1");
        return *v;
      };
      CarlesonReport report;
      if (regime == "infq") {
        const double q = q_opt.value_or(L.file.defaults.q.value_or(2.0));
        if (!(q > 0.0) || std::isinf(q)) throw SpecError("q", "must be positive and finite");
        report = classify_infty_q(L.mu, q, L.w, lat, L.spec, opts);
      } else if (regime == "pinf") {
        report = classify_p_infty(L.mu, exponent(p_opt, L.file.defaults.p, "p"), L.w, lat, L.spec, opts);
      } else {
        const double p = exponent(p_opt, L.file.defaults.p, "p");
        const double q = exponent(q_opt, L.file.defaults.q, "q");
        const double t = opts.t > 0.0 ? opts.t : q;
        report = equivalence_crosscheck(L.mu, p, t, delta, L.w, lat, L.spec, q, L.radius, common.spacing);
      }
      out << format_report(report);
      if (!common.out_file.empty()) emit(common, out, [&](std::ostream& os) { write_carleson_csv(os, report); });
      return report.has_divergence() ? kExitDivergence : kExitOk;
    };
  });

  auto* toeplitz = app.add_subcommand("toeplitz", "Toeplitz operator matrix, boundedness or compactness");
  int matrix_n = 0;
  bool bound = false;
  bool compact = false;
  std::string rings = "2,4,6,8";
  add_common(toeplitz, common, true);
  auto* opt_matrix = toeplitz->add_option("--matrix", matrix_n, "matrix in the orthonormal basis (row,col,re,im)")
                         ->check(CLI::PositiveNumber);
  auto* opt_bound = toeplitz->add_flag("--bound", bound, "Berezin boundedness proxies");
  auto* opt_compact = toeplitz->add_flag("--compact", compact, "ring maxima and singular values");
  opt_matrix->excludes(opt_bound)->excludes(opt_compact);
  opt_bound->excludes(opt_compact);
  toeplitz->add_option("--rings", rings, "ring radii for --compact");
  toeplitz->callback([&] {
    action = [&] {
      if (matrix_n == 0 && !bound && !compact) throw UsageError("toeplitz: one of --matrix, --bound, --compact is required");
      const auto L = load(common);
      if (matrix_n > 0) {
        const ToeplitzMatrix m = toeplitz_matrix(L.mu, matrix_n, L.w, L.spec);
        emit(common, out, [&](std::ostream& os) { write_matrix_csv(os, m); });
        return m.verdict == Verdict::fails ? kExitDivergence : kExitOk;
      }
      if (bound) {
        const BoundednessEstimate b = boundedness_estimate(L.mu, L.w, L.radius, L.spec, common.spacing);
        emit(common, out, [&](std::ostream& os) { write_bound_csv(os, b); });
        return b.verdict == Verdict::fails ? kExitDivergence : kExitOk;
      }
      const CompactnessProbe c = compactness_probe(L.mu, L.w, parse_real_list(rings, "rings"), L.spec);
      emit(common, out, [&](std::ostream& os) { write_compact_csv(os, c); });
      const bool finite = std::all_of(c.ring_maxima.begin(), c.ring_maxima.end(),
                                      [](const auto& rm) { return std::isfinite(rm.second); });
      return finite ? kExitOk : kExitDivergence;
    };
  });

  auto* lattice = app.add_subcommand("lattice", "lattice centers and ball masses (index,re,im,mass)");
  double lattice_radius = 1.0;
  add_common(lattice, common, true);
  lattice->add_option("--r", lattice_radius, "lattice radius")->check(CLI::PositiveNumber);
  lattice->callback([&] {
    action = [&] {
      const auto L = load(common);
      const Lattice lat = make_lattice(lattice_radius, L.radius);
      const auto sums = lattice_ball_sums(L.mu, lat, L.spec);
      emit(common, out, [&](std::ostream& os) { write_lattice_csv(os, lat, sums); });
      const bool finite = std::all_of(sums.begin(), sums.end(), [](double s) { return std::isfinite(s); });
      return finite ? kExitOk : kExitDivergence;
    };
  });

  auto* verify = app.add_subcommand("verify", "closed-form oracle suite, one line per acceptance criterion");
  verify->callback([&] {
    action = [&] {
      int failed = 0;
      for (const auto& r : run_acceptance()) {
        out << format_result(r) << '\n';
        if (!r.passed) ++failed;
      }
      out << (10 - failed) << " of 10 criteria passed\n";
      return failed == 0 ? kExitOk : kExitDivergence;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    return action();
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInvalid;
}

}  // namespace fock::cli
