#include <doctest.h>

#include "pvzeta/error.hpp"
#include "pvzeta/gamma.hpp"
#include "pvzeta/orbits.hpp"
#include "support.hpp"

using namespace pvzeta;
using pvtest::pt;
using pvtest::Q;

namespace {

RationalFunction gl_zeta(long p, int k) {
  RationalFunction r = RationalFunction::constant(Q(1));
  for (int i = 1; i <= k; ++i) {
    BigRational q = rpow(p, -i);
    r = r * RationalFunction(QPoly::constant(1 - q), QPoly(std::vector<BigRational>{Q(1), -q}));
  }
  return r;
}

// gamma(t) = Z(p^{2 lambda0} / t) / Z(t) for a self-dual test function.
RationalFunction ratio_oracle(long p, int k) {
  RationalFunction z = gl_zeta(p, k);
  return z.reciprocal_arg(rpow(p, k)) / z;
}

}  // namespace

TEST_CASE("tate gamma from three test functions") {
  for (long p : {2L, 3L, 5L}) {
    auto up = static_cast<std::uint64_t>(p);
    std::vector<CosetFunction> tests{CosetFunction::indicator(up, pt({0}), 0), CosetFunction::indicator(up, pt({1}), 1),
                                     CosetFunction::indicator(up, pt({0}), 1)};
    auto g = gamma_extract(SpaceId::Tate, up, tests);
    CHECK(g.confirmed);
    CHECK(g.residual < 1e-9);
    REQUIRE(g.exact);
    CHECK(*g.exact == ratio_oracle(p, 1));
    CHECK(*g.exact == classical_gamma(SpaceId::Tate, up));
    REQUIRE(g.per_test.size() == 3);
    for (double t : {0.3, 1.7, -2.5})
      for (const auto& per : g.per_test) CHECK(std::abs(per.eval(t) - g.exact->eval(ComplexValue(t, 0))) < 1e-9);
  }
}

TEST_CASE("matrix2 gamma is consistent and matches the product formula") {
  for (long p : {2L, 3L}) {
    auto up = static_cast<std::uint64_t>(p);
    std::vector<CosetFunction> tests{CosetFunction::indicator(up, pt({0, 0, 0, 0}), 0),
                                     CosetFunction::indicator(up, pt({0, 0, 0, 0}), 1),
                                     CosetFunction::indicator(up, pt({1, 0, 0, 1}), 1)};
    auto g = gamma_extract(SpaceId::Matrix2, up, tests);
    CHECK(g.confirmed);
    CHECK(g.residual < 1e-9);
    REQUIRE(g.exact);
    CHECK(*g.exact == ratio_oracle(p, 2));
    CHECK(*g.exact == classical_gamma(SpaceId::Matrix2, up));
  }
}

TEST_CASE("single test function is unconfirmed") {
  auto g = gamma_extract(SpaceId::Tate, 3, {CosetFunction::indicator(3, pt({0}), 0)});
  CHECK_FALSE(g.confirmed);
  CHECK(g.residual == 0);
  CHECK_THROWS_AS(gamma_extract(SpaceId::Tate, 3, {}), Error);
  CHECK_THROWS_AS(gamma_extract(SpaceId::CubeSplit, 3, {CosetFunction::indicator(3, std::vector<BigRational>(8, Q(0)), 0)}),
                  Error);
}

TEST_CASE("half-density convention is the shifted scalar gamma") {
  GammaOptions hd;
  hd.half_density = true;
  std::vector<CosetFunction> tests{CosetFunction::indicator(5, pt({0}), 0), CosetFunction::indicator(5, pt({0}), 1)};
  auto a = gamma_extract(SpaceId::Tate, 5, tests);
  auto b = gamma_extract(SpaceId::Tate, 5, tests, hd);
  CHECK(b.confirmed);
  double s5 = std::sqrt(5.0);
  for (double tau : {0.2, 0.9, 3.0}) {
    ComplexValue want = a.gamma.eval(ComplexValue(s5 * tau, 0));
    CHECK(std::abs(b.gamma.eval(ComplexValue(tau, 0)) - want) < 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("gamma probe argument checks") {
  auto tests = default_probe_tests(3, 6, 1);
  CHECK_THROWS_AS(gamma_matrix_probe(2, tests), Error);
  try {
    gamma_matrix_probe(3, default_probe_tests(3, 6, 1, false));
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankDeficient);
  }
  tests.pop_back();
  CHECK_THROWS_AS(gamma_matrix_probe(3, tests), Error);
}

TEST_CASE("gamma probe least squares is consistent") {
  ProbeOptions o;
  o.dual_exponents = {ComplexValue(3, 0), ComplexValue(-1, 0)};
  auto rep = gamma_matrix_probe(3, default_probe_tests(3, 8, 2), o);
  REQUIRE(rep.samples.size() == 2);
  CHECK_FALSE(rep.samples[0].skipped);
  CHECK(rep.samples[0].residual < 1e-9);
  CHECK(rep.samples[1].skipped);
  CHECK_FALSE(rep.samples[1].warning.empty());
  CHECK(rep.samples[0].gamma.size() == 4);
}

TEST_CASE("probe fibre measures are constant on group orbits") {
  std::mt19937_64 rng(6);
  ResidueRing f3(3, 1);
  std::vector<Point<BigRational>> seeds;
  for (auto t : boundary_tags()) seeds.push_back(boundary_representative(t));
  seeds.push_back(pt({1, 0, 0, 1, 1, 0, 0, -1}));
  for (const auto& s : seeds) {
    std::vector<std::uint64_t> y;
    Point<Residue> yr;
    for (const auto& c : s) {
      yr.emplace_back(f3, BigInt(c.get_num()));
      y.push_back(yr.back().value());
    }
    auto base = probe_fiber_measures(3, y, 2);
    for (int k = 0; k < 3; ++k) {
      auto g = random_group_element_residue(SpaceId::CubeSplit, f3, rng());
      auto moved = act(SpaceId::CubeSplit, yr, g);
      std::vector<std::uint64_t> y2;
      for (const auto& c : moved) y2.push_back(c.value());
      CHECK(probe_fiber_measures(3, y2, 2) == base);
    }
  }
}
