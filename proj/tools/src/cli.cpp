#include "pvzeta_cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "pvzeta_cli/census_io.hpp"
#include "pvzeta_cli/report_json.hpp"

namespace pvzeta::cli {

namespace {

struct Global {
  bool json = false;
  int threads = 0;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Io:
    case ErrorCode::UnsupportedSchema:
    case ErrorCode::ChecksumMismatch:
    case ErrorCode::WrongSpace:
    case ErrorCode::FieldRequired:
    case ErrorCode::ConvergenceRangeViolated:
    case ErrorCode::BoundaryPoint:
    case ErrorCode::NonInvertibleElement:  // only from reducing user input mod p
      return kExitUsage;
    default:
      return kExitCheckFailed;
  }
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

CensusOptions census_options(const Global& g, std::uint64_t budget) {
  CensusOptions o;
  o.threads = g.threads;
  o.budget = budget;
  return o;
}

// "c1,c2,...@level"
CosetFunction parse_coset(const std::string& s, std::uint64_t p) {
  auto at = s.find('@');
  if (at == std::string::npos) fail(ErrorCode::InvalidArgument, "test function must look like 'x1,...,xn@level'");
  auto center = parse_point(s.substr(0, at));
  int level = 0;
  try {
    level = std::stoi(s.substr(at + 1));
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "bad level in '" + s + "'");
  }
  return CosetFunction::indicator(p, center, level);
}

std::vector<CosetFunction> default_gamma_tests(SpaceId s, std::uint64_t p) {
  auto pt = [](std::initializer_list<int> v) {
    std::vector<BigRational> x;
    for (int c : v) x.emplace_back(c);
    return x;
  };
  switch (s) {
    case SpaceId::Tate:
      return {CosetFunction::indicator(p, pt({0}), 0), CosetFunction::indicator(p, pt({1}), 1),
              CosetFunction::indicator(p, pt({0}), 1)};
    case SpaceId::Matrix2:
      return {CosetFunction::indicator(p, pt({0, 0, 0, 0}), 0), CosetFunction::indicator(p, pt({0, 0, 0, 0}), 1),
              CosetFunction::indicator(p, pt({1, 0, 0, 1}), 1)};
    case SpaceId::CubeSplit: break;
  }
  fail(ErrorCode::InvalidArgument, "gamma is scalar only on tate and matrix2; use gamma-probe for cube-split");
}

std::string fmt_complex(const ComplexValue& z) {
  std::ostringstream os;
  os << std::setprecision(15) << z.real();
  if (z.imag() != 0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeta integrals of prehomogeneous vector spaces", "pvzeta"};
  app.set_config("--config", "", "INI file with key = value options; flags win over the file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_flag("--json", g.json, "Structured JSON on stdout");
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware)")->envname("PVZETA_THREADS")->check(
      CLI::NonNegativeNumber);

  std::string space_s = "tate";
  std::uint64_t p = 2, seed = 1, budget = 1000000000ULL;
  int trials = 0;

  // catalog list
  auto* catalog = app.add_subcommand("catalog", "Catalog of spaces");
  catalog->require_subcommand(1);
  auto* catalog_list = catalog->add_subcommand("list", "List the spaces");

  // check eigenchar
  auto* check = app.add_subcommand("check", "Identity checks");
  check->require_subcommand(1);
  auto* eigen = check->add_subcommand("eigenchar", "f(x g) = omega(g) f(x) on random integer data");
  std::string eigen_space = "all";
  int eigen_trials = 10000;
  eigen->add_option("--space", eigen_space, "Space or 'all'");
  eigen->add_option("--trials", eigen_trials)->check(CLI::NonNegativeNumber);
  eigen->add_option("--seed", seed);

  // invariant eval
  auto* inv = app.add_subcommand("invariant", "Relative invariants");
  inv->require_subcommand(1);
  auto* inv_eval = inv->add_subcommand("eval", "Evaluate f (or the dual invariant) at a rational point");
  std::string point_s;
  bool dual = false, gradient = false;
  inv_eval->add_option("--space", space_s)->required();
  inv_eval->add_option("--point", point_s, "Comma-separated rationals")->required();
  inv_eval->add_flag("--dual", dual, "Evaluate the dual invariant");
  inv_eval->add_flag("--gradient", gradient, "Also print the gradient and the log-derivative map");

  // orbit classify | verify-lfe | sweep
  auto* orbit = app.add_subcommand("orbit", "Cube-split orbits");
  orbit->require_subcommand(1);
  auto* classify_cmd = orbit->add_subcommand("classify", "Orbit label of a point");
  std::string field_s = "Q";
  classify_cmd->add_option("--point", point_s)->required();
  classify_cmd->add_option("--field", field_s, "Q or fp:<p>");
  auto* lfe = orbit->add_subcommand("verify-lfe", "Torus characters against the omega-flat table");
  int lfe_trials = 1000;
  lfe->add_option("--trials", lfe_trials)->check(CLI::NonNegativeNumber);
  lfe->add_option("--seed", seed);
  auto* sweep = orbit->add_subcommand("sweep", "Label stability of boundary representatives under random g");
  std::vector<std::string> sweep_fields{"fp:3", "fp:5", "fp:7", "Q"};
  int sweep_trials = 1000;
  sweep->add_option("--field", sweep_fields, "Fields to sweep (repeatable)");
  sweep->add_option("--trials", sweep_trials)->check(CLI::NonNegativeNumber);
  sweep->add_option("--seed", seed);

  // census
  auto* census = app.add_subcommand("census", "Valuation census c_m of the invariant");
  std::string strategy_s = "auto", output;
  int m_max = 3;
  std::uint64_t samples = 100000;
  unsigned precision_k = 0;
  census->add_option("--space", space_s)->required();
  census->add_option("--p", p)->required();
  census->add_option("--m", m_max, "Largest valuation")->check(CLI::NonNegativeNumber);
  census->add_option("--strategy", strategy_s, "auto, direct, branch-lift, fibered, monte-carlo");
  census->add_option("--budget", budget, "Evaluation budget");
  census->add_option("--samples", samples, "Monte Carlo samples");
  census->add_option("--precision-k", precision_k, "Monte Carlo working precision p^k (default m + 3)");
  census->add_option("--seed", seed);
  census->add_option("--output,-o", output, "Write the census cache file");

  // zeta
  auto* zeta = app.add_subcommand("zeta", "Rational zeta function from a census");
  std::string census_file;
  int num_deg = -1, den_deg = -1, holdout = -1;
  bool ansatz = false;
  zeta->add_option("--census", census_file, "Census cache file");
  zeta->add_option("--space", space_s);
  zeta->add_option("--p", p);
  zeta->add_option("--m", m_max);
  zeta->add_option("--strategy", strategy_s);
  zeta->add_option("--budget", budget);
  zeta->add_option("--num-deg", num_deg);
  zeta->add_option("--den-deg", den_deg);
  zeta->add_option("--holdout", holdout);
  zeta->add_flag("--ansatz", ansatz, "Structured denominators prod (1 - p^-a t^b)");

  // zeta-real
  auto* zreal = app.add_subcommand("zeta-real", "Archimedean Gaussian zeta integral");
  double s_re = 2.0, s_im = 0.0, sigma = 1.0;
  std::string orbit_s, scheme_s = "adaptive-global";
  QuadratureSpec qspec;
  std::uint64_t mc_samples = 0;
  zreal->add_option("--space", space_s);
  zreal->add_option("--s", s_re, "Integrand |f|^(s-1) e^(-pi sigma |x|^2)");
  zreal->add_option("--s-imag", s_im);
  zreal->add_option("--sigma", sigma)->check(CLI::PositiveNumber);
  zreal->add_option("--orbit", orbit_s, "+ or -: restrict to the sign of f")->check(CLI::IsMember({"+", "-"}));
  zreal->add_option("--scheme", scheme_s, "adaptive-global or tensor-gauss");
  zreal->add_option("--gh-degree", qspec.gh_degree);
  zreal->add_option("--gh-max-degree", qspec.gh_max_degree);
  zreal->add_option("--max-evals", qspec.max_evals);
  zreal->add_option("--mc-samples", mc_samples, "Also run a Monte Carlo cross-check");
  zreal->add_option("--seed", seed);

  // fourier check
  auto* fourier_cmd = app.add_subcommand("fourier", "Fourier transform of coset functions");
  fourier_cmd->require_subcommand(1);
  auto* fcheck = fourier_cmd->add_subcommand("check", "Involution and Plancherel over a random corpus");
  int f_trials = 100, max_terms = 8, max_level = 3;
  double f_tol = 1e-12;
  fcheck->add_option("--space", space_s);
  fcheck->add_option("--p", p);
  fcheck->add_option("--trials", f_trials)->check(CLI::NonNegativeNumber);
  fcheck->add_option("--seed", seed);
  fcheck->add_option("--max-terms", max_terms)->check(CLI::PositiveNumber);
  fcheck->add_option("--max-level", max_level)->check(CLI::NonNegativeNumber);
  fcheck->add_option("--tol", f_tol);

  // gamma
  auto* gamma = app.add_subcommand("gamma", "Scalar gamma factor from the functional equation");
  bool half_density = false;
  double g_tol = 1e-9;
  std::vector<std::string> test_specs;
  gamma->add_option("--space", space_s);
  gamma->add_option("--p", p);
  gamma->add_flag("--half-density", half_density, "Report in the half-density variable");
  gamma->add_option("--tol", g_tol);
  gamma->add_option("--test", test_specs, "Test function 'x1,...,xn@level' (repeatable)");
  gamma->add_option("--budget", budget);

  // gamma-probe
  auto* probe = app.add_subcommand("gamma-probe", "Least-squares gamma-matrix probe on cube-split");
  int probe_tests = 6, truncation = 2;
  bool single_stratum = false;
  std::vector<double> exponents{3.0, 4.0, 5.0};
  probe->add_option("--p", p);
  probe->add_option("--tests", probe_tests);
  probe->add_option("--seed", seed);
  probe->add_option("--truncation", truncation);
  probe->add_option("--exponent", exponents, "Dual exponents (repeatable)");
  probe->add_flag("--single-stratum", single_stratum, "Draw every test from one square class");
  probe->add_option("--budget", budget);

  // CLI11 drops an environment value that fails its check; reject it instead.
  if (const char* env = std::getenv("PVZETA_THREADS")) {
    std::string v = env;
    if (v.empty() || v.size() > 6 || v.find_first_not_of("0123456789") != std::string::npos) {
      err << "PVZETA_THREADS: expected a non-negative integer, got '" << v << "'\n";
      return kExitUsage;
    }
  }

  std::vector<const char*> argv{"pvzeta"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  (void)catalog_list;
  (void)trials;

  try {
    if (catalog->got_subcommand("list")) {
      json arr = json::array();
      for (auto s : all_spaces()) arr.push_back(to_json(descriptor(s)));
      if (g.json) {
        emit(out, json{{"spaces", arr}});
      } else {
        for (const auto& d : arr)
          out << d["name"].get<std::string>() << "  dim=" << d["dim"] << "  deg=" << d["invariant_degree"]
              << "  lambda0=" << d["density_shift"].get<std::string>() << "  f = " << d["invariant"].get<std::string>()
              << "\n";
      }
      return kExitOk;
    }

    if (eigen->parsed()) {
      std::vector<SpaceId> spaces =
          eigen_space == "all" ? all_spaces() : std::vector<SpaceId>{parse_space(eigen_space)};
      json arr = json::array();
      int failures = 0;
      for (auto s : spaces) {
        auto r = check_eigencharacter(s, eigen_trials, seed);
        failures += r.failures;
        arr.push_back(to_json(r));
        if (!g.json)
          out << to_string(s) << ": " << r.trials << " trials, " << r.failures << " failures\n";
        for (const auto& c : r.counterexamples)
          if (!g.json) out << "  counterexample: " << c << "\n";
      }
      if (g.json) emit(out, json{{"reports", arr}, {"ok", failures == 0}});
      return failures == 0 ? kExitOk : kExitCheckFailed;
    }

    if (inv_eval->parsed()) {
      SpaceId s = parse_space(space_s);
      auto x = parse_point(point_s);
      BigRational v = dual ? eval_dual_invariant(s, x) : eval_invariant(s, x);
      json j{{"space", to_string(s)}, {"point", format_point(x)}, {"dual", dual}, {"value", to_string(v)}};
      if (gradient) {
        j["gradient"] = format_point(invariant_gradient(s, x));
        if (v != 0) j["log_derivative"] = format_point(log_derivative_map(s, x));
      }
      if (g.json) {
        emit(out, j);
      } else {
        out << (dual ? "f_dual" : "f") << "(" << format_point(x) << ") = " << to_string(v) << "\n";
        if (j.contains("gradient")) out << "grad f = (" << j["gradient"].get<std::string>() << ")\n";
        if (j.contains("log_derivative")) out << "phi = (" << j["log_derivative"].get<std::string>() << ")\n";
      }
      return kExitOk;
    }

    if (classify_cmd->parsed()) {
      auto x = parse_point(point_s);
      FieldSpec f = parse_field(field_s);
      auto lab = classify(x, f);
      if (g.json) {
        json j = to_json(lab);
        j["field"] = f.str();
        emit(out, j);
      } else {
        out << lab.str() << "\n";
      }
      return kExitOk;
    }

    if (lfe->parsed()) {
      auto rows = verify_hypothesis_lfe(lfe_trials, seed);
      json arr = json::array();
      int failures = 0;
      for (const auto& r : rows) {
        failures += r.failures();
        arr.push_back(to_json(r));
        if (!g.json)
          out << std::left << std::setw(16) << to_string(r.row) << std::setw(14) << omega_flat_formula(r.row)
              << r.trials << " trials, " << r.stabilizer_failures << " stabilizer / " << r.character_failures
              << " character failures\n";
      }
      if (g.json) emit(out, json{{"rows", arr}, {"ok", failures == 0}});
      return failures == 0 ? kExitOk : kExitCheckFailed;
    }

    if (sweep->parsed()) {
      json arr = json::array();
      int changes = 0;
      for (const auto& fs : sweep_fields) {
        FieldSpec f = parse_field(fs);
        for (auto tag : boundary_tags()) {
          auto r = orbit_stability_sweep(boundary_representative(tag), sweep_trials, f, seed);
          changes += r.label_changes;
          arr.push_back(json{{"field", f.str()},
                             {"representative", to_string(tag)},
                             {"trials", r.trials},
                             {"label_changes", r.label_changes}});
          if (!g.json)
            out << std::left << std::setw(6) << f.str() << std::setw(16) << to_string(tag) << r.trials
                << " trials, " << r.label_changes << " label changes\n";
        }
      }
      if (g.json) emit(out, json{{"sweeps", arr}, {"ok", changes == 0}});
      return changes == 0 ? kExitOk : kExitCheckFailed;
    }

    auto run_census = [&](SpaceId s) -> ValuationCensus {
      CensusOptions o = census_options(g, budget);
      CensusStrategy st;
      if (strategy_s == "auto") {
        if (s == SpaceId::CubeSplit)
          st = CensusStrategy::Fibered;
        else
          st = direct_volume(s, p, m_max) <= budget ? CensusStrategy::Direct : CensusStrategy::BranchLift;
      } else {
        st = parse_strategy(strategy_s);
      }
      if (st == CensusStrategy::MonteCarlo) {
        unsigned k = precision_k ? precision_k : static_cast<unsigned>(m_max + 3);
        return census_monte_carlo(s, p, m_max, samples, k, seed, o);
      }
      return census_exact(s, p, m_max, st, o);
    };

    if (census->parsed()) {
      auto c = run_census(parse_space(space_s));
      if (!output.empty()) write_census(c, output);
      if (g.json) {
        emit(out, census_to_json(c));
      } else {
        out << to_string(c.space) << " p=" << c.p << " strategy=" << to_string(c.strategy) << "\n";
        for (const auto& e : c.entries) {
          out << "c_" << e.m << " = " << to_string(e.c);
          if (e.ci) out << " +- " << e.ci->get_d();
          out << "\n";
        }
        if (c.precision_flag()) out << "warning: more than 1% of samples reached the working precision\n";
      }
      return kExitOk;
    }

    if (zeta->parsed()) {
      ValuationCensus c;
      if (!census_file.empty()) {
        c = read_census(census_file);
      } else {
        if (zeta->count("--space") == 0 || zeta->count("--p") == 0)
          fail(ErrorCode::InvalidArgument, "zeta needs --census FILE or --space and --p");
        c = run_census(parse_space(space_s));
      }
      DegreeBounds db = default_degrees(c.space);
      if (num_deg >= 0) db.num_deg = num_deg;
      if (den_deg >= 0) db.den_deg = den_deg;
      if (holdout >= 0) db.holdout = holdout;
      ZetaResult r = ansatz ? zeta_igusa_ansatz(c.exact_prefix(), c.p, db.holdout)
                            : zeta_from_census(c, db.num_deg, db.den_deg, db.holdout);
      if (g.json) {
        emit(out, to_json(r, c.space, c.p));
      } else {
        out << "Z(t) = " << r.zeta.str() << "\n";
        out << "method: " << r.method << ", holdout " << (r.holdout_verified ? "verified" : "NOT verified") << " on "
            << r.holdout_checked << " coefficient(s)\n";
        if (!r.poles.empty()) {
          out << "rational poles:";
          for (const auto& q : r.poles) out << " " << to_string(q);
          out << "\n";
        }
      }
      return r.holdout_verified ? kExitOk : kExitCheckFailed;
    }

    if (zreal->parsed()) {
      SpaceId s = parse_space(space_s);
      qspec.scheme = parse_scheme(scheme_s);
      qspec.threads = g.threads;
      if (s == SpaceId::CubeSplit && zreal->count("--scheme") == 0) {
        qspec.scheme = QuadratureScheme::TensorGauss;
        if (zreal->count("--gh-degree") == 0) qspec.gh_degree = 4;
        if (zreal->count("--gh-max-degree") == 0) qspec.gh_max_degree = 6;
      }
      std::optional<int> filt;
      if (!orbit_s.empty()) filt = orbit_s == "+" ? 1 : -1;
      auto r = zeta_real(s, ComplexValue(s_re, s_im), sigma, qspec, filt);
      json j = to_json(r);
      if (mc_samples > 0) {
        auto mc = zeta_real_monte_carlo(s, ComplexValue(s_re, s_im), sigma, mc_samples, seed, filt);
        j["monte_carlo"] = json{{"value", json::array({mc.value.real(), mc.value.imag()})},
                                {"std_error", mc.std_error},
                                {"samples", mc_samples}};
      }
      if (g.json) {
        emit(out, j);
      } else {
        out << "value = " << fmt_complex(r.value) << "\nest_error = " << r.est_error << "\n";
        if (j.contains("monte_carlo"))
          out << "monte carlo = " << j["monte_carlo"]["value"][0].get<double>() << " +- "
              << j["monte_carlo"]["std_error"].get<double>() << "\n";
      }
      return kExitOk;
    }

    if (fcheck->parsed()) {
      SpaceId s = parse_space(space_s);
      auto r = fourier_check(s, p, f_trials, seed, max_terms, max_level);
      bool ok = r.max_involution_error < f_tol && r.max_plancherel_error < f_tol;
      if (g.json) {
        json j = to_json(r, s, p);
        j["ok"] = ok;
        emit(out, j);
      } else {
        out << r.trials << " trials: involution error " << r.max_involution_error << ", Plancherel error "
            << r.max_plancherel_error << (ok ? "" : "  (above tolerance)") << "\n";
      }
      return ok ? kExitOk : kExitCheckFailed;
    }

    if (gamma->parsed()) {
      SpaceId s = parse_space(space_s);
      std::vector<CosetFunction> tests;
      for (const auto& t : test_specs) tests.push_back(parse_coset(t, p));
      if (tests.empty()) tests = default_gamma_tests(s, p);
      GammaOptions o;
      o.half_density = half_density;
      o.tolerance = g_tol;
      o.census = census_options(g, budget);
      auto r = gamma_extract(s, p, tests, o);
      if (g.json) {
        emit(out, to_json(r));
      } else {
        out << "gamma(t) = " << (r.exact ? r.exact->str() : r.gamma.normalized().str()) << "\n";
        out << "residual = " << r.residual << (r.confirmed ? "" : " (unconfirmed: single test function)") << "\n";
        out << "convention: " << r.convention << "\n";
      }
      return kExitOk;
    }

    if (probe->parsed()) {
      ProbeOptions o;
      o.truncation = truncation;
      o.dual_exponents.clear();
      for (double e : exponents) o.dual_exponents.emplace_back(e, 0.0);
      o.census = census_options(g, budget);
      auto tests = default_probe_tests(p, probe_tests, seed, !single_stratum);
      auto r = gamma_matrix_probe(p, tests, o);
      if (g.json) {
        emit(out, to_json(r));
      } else {
        for (const auto& smp : r.samples) {
          out << "lambda' = " << fmt_complex(smp.exponent) << ": ";
          if (smp.skipped)
            out << smp.warning << "\n";
          else
            out << "residual " << smp.residual << ", tail bound " << smp.tail_bound << "\n";
        }
        for (const auto& smp : r.samples)
          if (smp.skipped) err << "warning: " << smp.warning << "\n";
      }
      return kExitOk;
    }
  } catch (const HoldoutMismatch& e) {
    err << "error: " << e.what() << " (m=" << e.index() << ")\n";
    return kExitCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace pvzeta::cli
