#include <doctest.h>

#include "pvzeta/census.hpp"
#include "pvzeta/error.hpp"
#include "support.hpp"

using namespace pvzeta;
using pvtest::brute_census;
using pvtest::Q;

namespace {

std::vector<BigRational> run(SpaceId s, std::uint64_t p, int m, CensusStrategy st, int threads = 1) {
  CensusOptions o;
  o.threads = threads;
  return census_exact(s, p, m, st, o).exact_prefix();
}

IntPoly var(int n, int i) { return IntPoly::variable(n, i); }

}  // namespace

TEST_CASE("census examples") {
  CHECK(run(SpaceId::Tate, 3, 1, CensusStrategy::Direct) == std::vector<BigRational>{Q(2, 3), Q(2, 9)});
  CHECK(run(SpaceId::Matrix2, 3, 0, CensusStrategy::Direct)[0] == Q(16, 27));
  CHECK(run(SpaceId::CubeSplit, 2, 0, CensusStrategy::Direct)[0] == Q(15, 32));
}

TEST_CASE("direct and branch-lift agree with plain enumeration") {
  struct Case {
    SpaceId s;
    std::uint64_t p;
    int m;
  };
  for (auto c : {Case{SpaceId::Tate, 2, 5}, Case{SpaceId::Tate, 3, 4}, Case{SpaceId::Tate, 5, 3},
                 Case{SpaceId::Matrix2, 2, 2}, Case{SpaceId::Matrix2, 3, 1}, Case{SpaceId::CubeSplit, 2, 1}}) {
    CAPTURE(to_string(c.s));
    CAPTURE(c.p);
    auto want = brute_census(descriptor(c.s).basic_invariant, static_cast<long>(c.p), c.m);
    CHECK(run(c.s, c.p, c.m, CensusStrategy::Direct) == want);
    CHECK(run(c.s, c.p, c.m, CensusStrategy::BranchLift) == want);
  }
}

TEST_CASE("branch-lift on singular polynomials matches plain enumeration") {
  // Cusps, nodes, non-reduced and smooth examples exercise both the lifting and the Hensel shortcut.
  IntPoly x = var(2, 0), y = var(2, 1);
  IntPoly x3 = var(3, 0), y3 = var(3, 1), z3 = var(3, 2);
  std::vector<IntPoly> polys{x * x * x - y * y,
                             x * x - y * y,
                             x * x * y,
                             x * x + y * BigInt(3),
                             x * y - IntPoly::constant(2, BigInt(6)),
                             x3 * x3 + y3 * z3 * BigInt(4),
                             x3 * y3 * z3 + x3 * x3 * BigInt(2),
                             x3 * x3 + y3 * y3 + z3 * z3};
  for (const auto& f : polys)
    for (long p : {2L, 3L}) {
      int m = f.nvars() == 2 ? 5 : (p == 2 ? 3 : 2);
      CAPTURE(f.str());
      CAPTURE(p);
      auto want = brute_census(f, p, m);
      CHECK(count_branch_lift(f, static_cast<std::uint64_t>(p), m, {}).measures() == want);
      CHECK(count_direct(f, static_cast<std::uint64_t>(p), m, {}).measures() == want);
    }
}

TEST_CASE("classes with vanishing gradient resolve at every depth") {
  // High-multiplicity zeros keep grad f = 0 mod p^j for several levels, so the
  // frontier is cut both by a constant value mod p^{2j} and by 2j > m.
  IntPoly x = var(2, 0), y = var(2, 1);
  IntPoly q = x * x - y * y * BigInt(2);
  std::vector<IntPoly> polys{q * q, x * x * x * x + y * y * y * y * BigInt(4), (x * x + y * y) * (x * x + y * y) * BigInt(2),
                             x * x * y * y + IntPoly::constant(2, BigInt(16))};
  for (const auto& f : polys)
    for (long p : {2L, 3L}) {
      CAPTURE(f.str());
      CAPTURE(p);
      for (int m : {3, 4, 6}) {
        if (p == 3 && m == 6) continue;
        CHECK(count_branch_lift(f, static_cast<std::uint64_t>(p), m, {}).measures() == brute_census(f, p, m));
      }
    }
}

TEST_CASE("branch-lift on random polynomials matches direct enumeration") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 25; ++t) {
    IntPoly f(3);
    for (int k = 0; k < 4; ++k) {
      IntPoly mono = IntPoly::constant(3, BigInt(static_cast<long>(rng() % 9) - 4));
      int deg = 1 + static_cast<int>(rng() % 3);
      for (int d = 0; d < deg; ++d) mono *= var(3, static_cast<int>(rng() % 3));
      f += mono;
    }
    if (f.is_zero()) continue;
    std::uint64_t p = t % 2 ? 3 : 2;
    int m = p == 2 ? 4 : 3;
    CAPTURE(f.str());
    CHECK(count_branch_lift(f, p, m, {}).measures() == count_direct(f, p, m, {}).measures());
  }
}

TEST_CASE("cube fibered census matches branch-lift") {
  CHECK(run(SpaceId::CubeSplit, 2, 2, CensusStrategy::Fibered) == run(SpaceId::CubeSplit, 2, 2, CensusStrategy::BranchLift));
  CHECK(run(SpaceId::CubeSplit, 3, 1, CensusStrategy::Fibered) == run(SpaceId::CubeSplit, 3, 1, CensusStrategy::BranchLift));
  CHECK(run(SpaceId::CubeSplit, 2, 4, CensusStrategy::Fibered) ==
        std::vector<BigRational>{Q(15, 32), Q(0), Q(135, 512), Q(27, 512), Q(879, 8192)});
  CHECK_THROWS_AS(run(SpaceId::Tate, 2, 2, CensusStrategy::Fibered), Error);
}

TEST_CASE("census measures stay below one") {
  for (auto s : all_spaces()) {
    auto c = run(s, 3, s == SpaceId::CubeSplit ? 3 : 4, s == SpaceId::CubeSplit ? CensusStrategy::Fibered
                                                                             : CensusStrategy::BranchLift);
    BigRational sum = 0;
    for (const auto& v : c) {
      CHECK(v >= 0);
      sum += v;
    }
    CHECK(sum <= 1);
  }
}

TEST_CASE("exact census does not depend on the thread count") {
  auto base = census_exact(SpaceId::Matrix2, 3, 3, CensusStrategy::BranchLift, {});
  for (int threads : {1, 2, 4, 8}) {
    CensusOptions o;
    o.threads = threads;
    CHECK(census_exact(SpaceId::Matrix2, 3, 3, CensusStrategy::BranchLift, o) == base);
    CHECK(census_exact(SpaceId::CubeSplit, 2, 4, CensusStrategy::Fibered, o).entries ==
          census_exact(SpaceId::CubeSplit, 2, 4, CensusStrategy::Fibered, {}).entries);
  }
}

TEST_CASE("budget is enforced, never truncated") {
  CensusOptions o;
  o.budget = 1000;
  CHECK_THROWS_AS(census_exact(SpaceId::Matrix2, 2, 2, CensusStrategy::Direct, o), Error);
  try {
    census_exact(SpaceId::CubeSplit, 2, 2, CensusStrategy::BranchLift, o);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
  CHECK_THROWS_AS(census_exact(SpaceId::Tate, 4, 1, CensusStrategy::Direct), Error);
  CHECK_THROWS_AS(census_exact(SpaceId::Tate, 2, 1, CensusStrategy::MonteCarlo), Error);
}

TEST_CASE("monte carlo census") {
  auto mc = census_monte_carlo(SpaceId::Tate, 5, 3, 1000000, 6, 1);
  REQUIRE(mc.entries.size() == 4);
  for (const auto& e : mc.entries) {
    CHECK_FALSE(e.exact);
    REQUIRE(e.ci);
  }
  double c0 = mc.entries[0].c.get_d(), hw = mc.entries[0].ci->get_d();
  CHECK(std::abs(c0 - 0.8) <= 3 * hw);
  CHECK(mc.exact_prefix().empty());
  CHECK(census_monte_carlo(SpaceId::Tate, 5, 3, 1000, 6, 9) == census_monte_carlo(SpaceId::Tate, 5, 3, 1000, 6, 9));
  CensusOptions eight;
  eight.threads = 8;
  CHECK(census_monte_carlo(SpaceId::CubeSplit, 2, 2, 20000, 5, 4, eight) ==
        census_monte_carlo(SpaceId::CubeSplit, 2, 2, 20000, 5, 4));
  CHECK_THROWS_AS(census_monte_carlo(SpaceId::Tate, 5, 3, 0, 6, 1), Error);
  CHECK_THROWS_AS(census_monte_carlo(SpaceId::Tate, 5, 3, 10, 3, 1), Error);
}

TEST_CASE("monte carlo brackets the exact cube census") {
  auto exact = run(SpaceId::CubeSplit, 3, 2, CensusStrategy::Fibered);
  auto mc = census_monte_carlo(SpaceId::CubeSplit, 3, 2, 400000, 5, 12);
  for (int m = 0; m <= 2; ++m)
    CHECK(std::abs(mc.entries[m].c.get_d() - exact[m].get_d()) <= 4 * mc.entries[m].ci->get_d() + 1e-12);
}
