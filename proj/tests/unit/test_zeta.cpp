#include <doctest.h>

#include "pvzeta/census.hpp"
#include "pvzeta/error.hpp"
#include "support.hpp"

using namespace pvzeta;
using pvtest::Q;

namespace {

// prod_{i=1..k} (1 - p^-i) / (1 - p^-i t)
RationalFunction gl_zeta(long p, int k) {
  RationalFunction r = RationalFunction::constant(Q(1));
  for (int i = 1; i <= k; ++i) {
    BigRational q = rpow(p, -i);
    r = r * RationalFunction(QPoly::constant(1 - q), QPoly(std::vector<BigRational>{Q(1), -q}));
  }
  return r;
}

std::vector<BigRational> exact(SpaceId s, std::uint64_t p, int m, CensusStrategy st) {
  return census_exact(s, p, m, st).exact_prefix();
}

}  // namespace

TEST_CASE("tate zeta is the unramified local factor") {
  for (long p : {2L, 3L, 5L, 7L}) {
    auto c = census_exact(SpaceId::Tate, static_cast<std::uint64_t>(p), 3, CensusStrategy::BranchLift);
    auto r = zeta_from_census(c, 0, 1, 2);
    CHECK(r.zeta == gl_zeta(p, 1));
    CHECK(r.holdout_verified);
    CHECK(r.poles == std::vector<BigRational>{Q(p)});
  }
}

TEST_CASE("matrix2 zeta is the Godement-Jacquet factor") {
  auto r2 = zeta_from_coefficients(exact(SpaceId::Matrix2, 2, 5, CensusStrategy::BranchLift), 0, 2, 3);
  CHECK(r2.zeta == gl_zeta(2, 2));
  auto r3 = zeta_from_coefficients(exact(SpaceId::Matrix2, 3, 4, CensusStrategy::BranchLift), 0, 2, 2);
  CHECK(r3.zeta == gl_zeta(3, 2));
  CHECK(r3.poles == std::vector<BigRational>{Q(3), Q(9)});
}

TEST_CASE("corrupted census fails the holdout") {
  auto c = exact(SpaceId::Tate, 3, 5, CensusStrategy::Direct);
  c[4] += Q(1, 1000);
  try {
    zeta_from_coefficients(c, 0, 1, 3);
    FAIL("expected HoldoutMismatch");
  } catch (const HoldoutMismatch& e) {
    CHECK(e.index() == 4);
  }
  CHECK_THROWS_AS(zeta_from_coefficients(c, 0, 1, 10), Error);
}

TEST_CASE("structured ansatz on tate and matrix2") {
  auto t = zeta_igusa_ansatz(exact(SpaceId::Tate, 5, 3, CensusStrategy::Direct), 5, 2);
  CHECK(t.zeta == gl_zeta(5, 1));
  CHECK(t.method == "igusa-ansatz");
  auto m = zeta_igusa_ansatz(exact(SpaceId::Matrix2, 2, 5, CensusStrategy::BranchLift), 2, 2);
  CHECK(m.zeta == gl_zeta(2, 2));
  CHECK(m.holdout_checked >= 2);
}

TEST_CASE("structured ansatz rejects a non-Igusa series") {
  std::vector<BigRational> fib{Q(1), Q(1), Q(2), Q(3), Q(5), Q(8), Q(13), Q(21)};
  try {
    zeta_igusa_ansatz(fib, 2, 2);
    FAIL("expected NoFit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoFit);
  }
}

TEST_CASE("cube zeta at p = 2 via the ansatz reproduces its census") {
  auto c = exact(SpaceId::CubeSplit, 2, 8, CensusStrategy::Fibered);
  auto r = zeta_igusa_ansatz(c, 2, 2);
  CHECK(r.holdout_verified);
  CHECK(r.holdout_checked >= 2);
  CHECK(series_expand(r.zeta, 8) == c);
  CHECK(r.zeta.is_regular_at_zero());
  for (const auto& pole : r.poles) CHECK(abs(pole) > 1);
}

TEST_CASE("zeta on cosets") {
  auto z = zeta_on_coset(SpaceId::Tate, 3, {BigInt(0)}, 1, 0, 1);
  CHECK(z.zeta == gl_zeta(3, 1) * RationalFunction::power_of_t(1) * Q(1, 3));
  z = zeta_on_coset(SpaceId::Tate, 3, {BigInt(1)}, 1, 0, 1);
  CHECK(z.zeta == RationalFunction::constant(Q(1, 3)));
  z = zeta_on_coset(SpaceId::Matrix2, 2, {BigInt(1), BigInt(0), BigInt(0), BigInt(1)}, 1, 0, 1);
  CHECK(z.zeta == RationalFunction::constant(Q(1, 16)));
  // additivity: Z_p^4 is the union of its 16 cosets mod 2
  RationalFunction sum;
  for (int code = 0; code < 16; ++code) {
    std::vector<BigInt> c;
    for (int i = 0; i < 4; ++i) c.emplace_back((code >> i) & 1);
    auto d = default_degrees(SpaceId::Matrix2);
    sum = sum + zeta_on_coset(SpaceId::Matrix2, 2, c, 1, d.num_deg, d.den_deg, d.holdout).zeta;
  }
  CHECK(sum == gl_zeta(2, 2));
}

TEST_CASE("coset zeta cache canonicalises level-one cosets") {
  CosetZetaCache cache(SpaceId::Matrix2, 3);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 40; ++t) {
    std::vector<BigInt> c;
    for (int i = 0; i < 4; ++i) c.emplace_back(static_cast<long>(rng() % 9));
    auto d = default_degrees(SpaceId::Matrix2);
    CHECK(cache.get(c, 1) == zeta_on_coset(SpaceId::Matrix2, 3, c, 1, d.num_deg, d.den_deg, d.holdout).zeta);
  }
  CHECK(cache.size() <= 3);
}
