// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Each check uses an oracle that does not share code with the route under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pvzeta/census.hpp"
#include "pvzeta/gamma.hpp"
#include "pvzeta/invariants.hpp"
#include "pvzeta/orbits.hpp"
#include "pvzeta/schwartz.hpp"
#include "pvzeta/zeta_real.hpp"
#include "pvzeta_cli/cli.hpp"

using namespace pvzeta;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void note(Outcome& o, bool cond, const std::string& what) {
  if (!cond) {
    o.ok = false;
    o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
}

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

BigRational Q(long a, long b = 1) {
  BigRational q(a, b);
  q.canonicalize();
  return q;
}

// prod_{i<=k} (1 - p^-i) / (1 - p^-i t)
RationalFunction gl_zeta(long p, int k) {
  RationalFunction r = RationalFunction::constant(Q(1));
  for (int i = 1; i <= k; ++i) {
    BigRational q = rpow(p, -i);
    r = r * RationalFunction(QPoly::constant(1 - q), QPoly(std::vector<BigRational>{Q(1), -q}));
  }
  return r;
}

std::vector<BigRational> pt(std::initializer_list<long> v) {
  std::vector<BigRational> x;
  for (long c : v) x.push_back(Q(c));
  return x;
}

double gamma_r(double s) { return std::pow(std::numbers::pi, -s / 2) * std::tgamma(s / 2); }

Outcome eigenchar() {
  Outcome o;
  for (auto s : {SpaceId::Tate, SpaceId::Matrix2, SpaceId::CubeSplit}) {
    auto r = check_eigencharacter(s, 10000, 1);
    note(o, r.trials == 10000 && r.failures == 0, to_string(s) + ": " + std::to_string(r.failures) + " failures");
  }
  if (o.ok) o.detail = "3 spaces x 10^4 trials, 0 failures";
  return o;
}

Outcome tate_zeta() {
  Outcome o;
  for (long p : {2L, 3L, 5L}) {
    auto census = census_exact(SpaceId::Tate, static_cast<std::uint64_t>(p), 6, CensusStrategy::Direct);
    auto z = zeta_from_census(census, 0, 1, 2);
    note(o, z.holdout_verified, "p=" + std::to_string(p) + " holdout");
    note(o, z.zeta == gl_zeta(p, 1), "p=" + std::to_string(p) + ": got " + z.zeta.str());
  }
  if (o.ok) o.detail = "Z = (1-1/p)/(1-t/p) for p = 2, 3, 5";
  return o;
}

Outcome matrix2_zeta() {
  Outcome o;
  for (auto [p, m] : {std::pair{2L, 5}, {3L, 4}}) {
    auto census = census_exact(SpaceId::Matrix2, static_cast<std::uint64_t>(p), m, CensusStrategy::BranchLift);
    auto z = zeta_from_census(census, 0, 2, m - 2);
    std::string tag = "p=" + std::to_string(p);
    note(o, z.holdout_verified && z.holdout_checked >= 2, tag + " holdout");
    note(o, z.zeta == gl_zeta(p, 2), tag + ": got " + z.zeta.str());
  }
  if (o.ok) o.detail = "branch-lift m=5 (p=2), m=4 (p=3); Z = prod (1-p^-i)/(1-p^-i t)";
  return o;
}

Outcome cube_census() {
  Outcome o;
  CensusOptions opt;
  opt.budget = 1000000000ULL;
  auto direct = count_direct(descriptor(SpaceId::CubeSplit).basic_invariant, 2, 0, opt);
  note(o, direct.evaluations == 256, "direct used " + std::to_string(direct.evaluations) + " points");
  note(o, direct.measures()[0] == Q(15, 32), "c0 = " + direct.measures()[0].get_str());

  auto lifted = count_branch_lift(descriptor(SpaceId::CubeSplit).basic_invariant, 2, 4, opt);
  auto c = lifted.measures();
  note(o, lifted.evaluations <= opt.budget, "budget");
  // Second route: GL2 x GL2 reduction to three-variable quadrics.
  auto fib = cube_fibered_census(2, 12, opt);
  for (int m = 0; m <= 4; ++m)
    note(o, c[m] == fib[m], "c" + std::to_string(m) + " " + c[m].get_str() + " vs " + fib[m].get_str());

  std::string fit;
  try {
    auto z = zeta_igusa_ansatz(std::vector<BigRational>(fib.begin(), fib.begin() + 9), 2, 2);
    note(o, z.holdout_verified && z.holdout_checked >= 2, "ansatz holdout");
    // and beyond the fitted window
    auto series = series_expand(z.zeta, static_cast<int>(fib.size()));
    for (size_t m = 0; m < fib.size(); ++m) note(o, series[m] == fib[m], "ansatz off at m=" + std::to_string(m));
    fit = "ansatz " + z.zeta.str() + " holds on " + std::to_string(z.holdout_checked) + " + 4 more";
  } catch (const Error& e) {
    note(o, e.code() == ErrorCode::NoFit, e.what());
    fit = "ansatz reports NoFit";
  }
  if (o.ok)
    o.detail = "c0 = 15/32 from 256 points; c0..c4 by branch-lift in " + std::to_string(lifted.evaluations) +
               " evaluations = fibered route; " + fit;
  return o;
}

Outcome gamma_check() {
  Outcome o;
  double worst = 0;
  for (long p : {2L, 3L, 5L}) {
    auto up = static_cast<std::uint64_t>(p);
    std::vector<CosetFunction> tests{CosetFunction::indicator(up, pt({0}), 0), CosetFunction::indicator(up, pt({1}), 1),
                                     CosetFunction::indicator(up, pt({0}), 2)};
    auto g = gamma_extract(SpaceId::Tate, up, tests);
    std::string tag = "tate p=" + std::to_string(p);
    note(o, g.confirmed && g.residual < 1e-9, tag + " residual " + fmt(g.residual));
    for (double t : {0.3, 1.7, -2.5, 4.2})
      for (size_t i = 1; i < g.per_test.size(); ++i) {
        double d = std::abs(g.per_test[i].eval(t) - g.per_test[0].eval(t));
        worst = std::max(worst, d / std::max(1.0, std::abs(g.per_test[0].eval(t))));
      }
    // Ratio of the two zetas, each reconstructed from its own census.
    auto z = zeta_from_census(census_exact(SpaceId::Tate, up, 6, CensusStrategy::Direct), 0, 1, 2).zeta;
    auto zdual = zeta_from_census(census_exact(SpaceId::Tate, up, 6, CensusStrategy::BranchLift), 0, 1, 2).zeta;
    RationalFunction ratio = zdual.reciprocal_arg(Q(p)) / z;
    note(o, g.exact.has_value() && *g.exact == ratio, tag + " exact gamma differs from the zeta ratio");
  }
  note(o, worst < 1e-9, "tate per-test spread " + fmt(worst));
  for (long p : {2L, 3L}) {
    auto up = static_cast<std::uint64_t>(p);
    std::vector<CosetFunction> tests{CosetFunction::indicator(up, pt({0, 0, 0, 0}), 0),
                                     CosetFunction::indicator(up, pt({0, 0, 0, 0}), 1),
                                     CosetFunction::indicator(up, pt({1, 0, 0, 1}), 1),
                                     CosetFunction::indicator(up, pt({1, 1, 0, 1}), 1)};
    auto g = gamma_extract(SpaceId::Matrix2, up, tests);
    note(o, g.confirmed && g.residual < 1e-9, "matrix2 p=" + std::to_string(p) + " residual " + fmt(g.residual));
    worst = std::max(worst, g.residual);
  }
  if (o.ok) o.detail = "tate exact = Z(p/t)/Z(t), p = 2, 3, 5; worst spread/residual " + fmt(worst);
  return o;
}

Outcome fourier_corpus() {
  Outcome o;
  double worst = 0;
  struct Case {
    SpaceId s;
    std::uint64_t p;
    int level;
  };
  for (auto c : {Case{SpaceId::Tate, 3, 3}, Case{SpaceId::Tate, 5, 2}, Case{SpaceId::Matrix2, 2, 2},
                 Case{SpaceId::CubeSplit, 2, 1}}) {
    auto r = fourier_check(c.s, c.p, 100, 11, 8, c.level);
    double e = std::max(r.max_involution_error, r.max_plancherel_error);
    worst = std::max(worst, e);
    note(o, r.trials == 100 && e < 1e-12, to_string(c.s) + " p=" + std::to_string(c.p) + " error " + fmt(e));
  }
  if (o.ok) o.detail = "4 corpora x 100 functions, max error " + fmt(worst);
  return o;
}

Outcome orbit_sweeps() {
  Outcome o;
  int sweeps = 0;
  for (const char* f : {"fp:3", "fp:5", "fp:7", "Q"})
    for (auto tag : boundary_tags()) {
      auto r = orbit_stability_sweep(boundary_representative(tag), 1000, parse_field(f), 5);
      note(o, r.trials == 1000 && r.label_changes == 0,
           std::string(f) + " " + to_string(tag) + ": " + std::to_string(r.label_changes) + " changes");
      ++sweeps;
    }
  if (o.ok) o.detail = std::to_string(sweeps) + " sweeps x 10^3, 0 label changes";
  return o;
}

Outcome lfe() {
  Outcome o;
  auto rows = verify_hypothesis_lfe(1000, 3);
  note(o, rows.size() == boundary_tags().size(), "row count");
  for (const auto& r : rows)
    note(o, r.trials == 1000 && r.stabilizer_failures == 0 && r.character_failures == 0, to_string(r.row));
  if (o.ok) o.detail = std::to_string(rows.size()) + " rows x 10^3 parameters exact";
  return o;
}

Outcome real_zeta() {
  Outcome o;
  double worst = 0;
  for (double s : {0.5, 1.0, 2.0, 3.5}) {
    double want = gamma_r(s);
    double got = zeta_real(SpaceId::Tate, s, 1.0).value.real();
    double e = std::abs(got - want) / want;
    worst = std::max(worst, e);
    note(o, e < 1e-8, "tate s=" + fmt(s) + " rel error " + fmt(e));
  }
  for (auto space : {SpaceId::Tate, SpaceId::Matrix2})
    for (double s : {0.7, 2.0, 3.5}) {
      auto all = zeta_real(space, s, 1.0);
      auto pos = zeta_real(space, s, 1.0, {}, 1);
      auto neg = zeta_real(space, s, 1.0, {}, -1);
      double add = std::abs(pos.value + neg.value - all.value) / std::abs(all.value);
      note(o, add < 1e-8, to_string(space) + " additivity " + fmt(add));
      for (double sigma : {0.3, 2.5}) {
        auto want = sigma_scaling(space, s, sigma) * all.value;
        double h = std::abs(zeta_real(space, s, sigma).value - want) / std::abs(want);
        note(o, h < 1e-8, to_string(space) + " homogeneity " + fmt(h));
      }
    }
  if (o.ok) o.detail = "Gamma_R at s = 0.5, 1, 2, 3.5: max rel error " + fmt(worst) + "; additivity and scaling hold";
  return o;
}

Outcome determinism() {
  Outcome o;
  std::vector<std::vector<std::string>> commands{
      {"census", "--space", "cube-split", "--p", "2", "--m", "4", "--strategy", "branch-lift"},
      {"census", "--space", "matrix2", "--p", "3", "--m", "3", "--strategy", "monte-carlo", "--samples", "20000",
       "--seed", "9"},
      {"zeta", "--space", "matrix2", "--p", "3", "--m", "5", "--ansatz"},
      {"zeta", "--space", "cube-split", "--p", "2", "--m", "8", "--strategy", "fibered", "--ansatz"},
      {"gamma", "--space", "matrix2", "--p", "3"},
      {"gamma", "--space", "tate", "--p", "5"},
  };
  for (const auto& cmd : commands) {
    std::string first;
    for (const char* t : {"1", "4", "8"}) {
      std::vector<std::string> args{"--json", "--threads", t};
      args.insert(args.end(), cmd.begin(), cmd.end());
      std::ostringstream out, err;
      int rc = cli::dispatch(args, out, err);
      note(o, rc == 0, cmd[0] + " exit " + std::to_string(rc) + " " + err.str());
      if (std::string(t) == "1")
        first = out.str();
      else
        note(o, out.str() == first, cmd[0] + " " + cmd[2] + " differs at threads=" + t);
    }
  }
  if (o.ok) o.detail = std::to_string(commands.size()) + " commands byte-identical at threads 1, 4, 8";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "eigencharacter identity", 10, eigenchar},
      {2, "tate p-adic zeta", 1, tate_zeta},
      {3, "matrix2 p-adic zeta", 60, matrix2_zeta},
      {4, "cube census", 600, cube_census},
      {5, "functional-equation gamma", 1e9, gamma_check},
      {6, "fourier involution and plancherel", 5, fourier_corpus},
      {7, "orbit label stability", 30, orbit_sweeps},
      {8, "omega-flat table", 5, lfe},
      {9, "archimedean gaussian zeta", 5, real_zeta},
      {10, "thread determinism", 1e9, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("threw ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.ok = false;
      o.detail += "; took " + fmt(secs) + " s, limit " + fmt(c.limit_s) + " s";
    }
    std::printf("%s [%d] %s (%.2f s): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
