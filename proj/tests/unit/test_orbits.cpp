#include <doctest.h>

#include "pvzeta/error.hpp"
#include "pvzeta/orbits.hpp"
#include "support.hpp"

using namespace pvzeta;
using pvtest::pt;
using pvtest::Q;

TEST_CASE("classifier on table representatives") {
  CHECK(classify(pt({0, 0, 0, 0, 0, 1, 0, 0})).tag == OrbitTag::Rk1Span1);
  CHECK(classify(pt({0, 1, 0, 0, 1, 0, 0, 1})).tag == OrbitTag::DegenForm);
  CHECK(classify(pt({0, 0, 0, 0, 0, 0, 0, 0})).tag == OrbitTag::Zero);
  auto open = classify(pt({1, 0, 0, 1, 1, 0, 0, -1}), FieldSpec::fp(5));
  CHECK(open.tag == OrbitTag::Open);
  CHECK(open.signature == "1");
  for (auto t : boundary_tags()) {
    CHECK(classify(boundary_representative(t)).tag == t);
    for (std::uint64_t p : {3, 5, 7}) CHECK(classify(boundary_representative(t), FieldSpec::fp(p)).tag == t);
  }
}

TEST_CASE("open signature is the square class of P") {
  // P = 8: class 2 over Q, and a non-square mod 5
  auto x = pt({1, 0, 0, 1, 0, 2, 1, 0});
  CHECK(classify(x).signature == "2");
  auto a = classify(x, FieldSpec::fp(5));
  auto b = classify(pt({1, 0, 0, 1, 0, 3, 1, 0}), FieldSpec::fp(5));  // P = 12 = 2 mod 5
  CHECK(a == b);
  CHECK_FALSE(a == classify(pt({1, 0, 0, 1, 1, 0, 0, -1}), FieldSpec::fp(5)));
}

TEST_CASE("every F_p point gets exactly one label") {
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {3, 5, 7}) {
    std::map<OrbitTag, int> seen;
    for (int t = 0; t < 20000; ++t) {
      Point<BigRational> x(8);
      // bias towards sparse points so boundary strata are hit
      for (auto& v : x) v = (rng() % 3 == 0) ? static_cast<long>(rng() % p) : 0;
      auto l = classify(x, FieldSpec::fp(p));
      ++seen[l.tag];
    }
    CHECK(seen.size() == 7);
  }
}

TEST_CASE("field parsing") {
  CHECK(parse_field("Q").is_q());
  CHECK(parse_field("fp:7").p == 7);
  CHECK_THROWS_AS(parse_field("fp:9"), Error);
  CHECK_THROWS_AS(parse_field("R"), Error);
}

TEST_CASE("stabilizer examples") {
  using M = Mat2<BigRational>;
  M A{Q(2), Q(1), Q(1), Q(1)};
  auto y = pt({0, 0, 0, 0, 1, 0, 0, 1});
  CHECK(stabilizer_check(y, GroupElement<BigRational>(SpaceId::CubeSplit, {A.scaled(Q(2)), A, M{Q(1), Q(5), Q(0), Q(2)}})));
  CHECK(stabilizer_check(y, GroupElement<BigRational>(SpaceId::CubeSplit, {A, A, M{Q(1), Q(0), Q(0), Q(1)}})));
  // (0, E12): diag(a, x), diag(x', b), diag(x'', c) with a = bc
  BigRational b = 3, c = Q(-2, 5);
  GroupElement<BigRational> g(SpaceId::CubeSplit, {M{b * c, Q(0), Q(0), Q(7)}, M{Q(11), Q(0), Q(0), b},
                                                   M{Q(13), Q(0), Q(0), c}});
  CHECK(stabilizer_check(pt({0, 0, 0, 0, 0, 1, 0, 0}), g));
}

TEST_CASE("omega-flat table values") {
  CHECK(omega_flat(OrbitTag::Zero, {Q(1), Q(2), Q(3)}) == 1296);
  CHECK(omega_flat(OrbitTag::Rk2Span1, {Q(2), Q(1), Q(4), Q(2)}) == 4);
  for (auto t : boundary_tags()) {
    size_t arity = t == OrbitTag::Zero ? 3 : t == OrbitTag::Rk1Span1 ? 6 : 4;
    CHECK(omega_flat(t, std::vector<BigRational>(arity, Q(1))) == 1);
  }
  // (u, v, c', c) with u = c v violated
  CHECK_THROWS_AS(omega_flat(OrbitTag::Rk2Span1, {Q(3), Q(1), Q(4), Q(2)}), Error);
  CHECK_THROWS_AS(omega_flat(OrbitTag::Zero, {Q(1), Q(2)}), Error);
}

TEST_CASE("constructed stabilizers realise the omega-flat table") {
  auto rows = verify_hypothesis_lfe(300, 7);
  CHECK(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.trials == 300);
    CHECK(r.failures() == 0);
  }
}

TEST_CASE("orbit labels are stable under the group") {
  for (auto t : boundary_tags()) {
    auto rep = boundary_representative(t);
    for (auto f : {FieldSpec::fp(3), FieldSpec::fp(7), FieldSpec::rationals()}) {
      auto s = orbit_stability_sweep(rep, 200, f, 3);
      CHECK(s.label_changes == 0);
      CHECK(s.base.tag == t);
    }
  }
  auto open = orbit_stability_sweep(pt({1, 0, 0, 1, 1, 0, 0, -1}), 500, FieldSpec::fp(5), 1);
  CHECK(open.label_changes == 0);
  CHECK(open.base.tag == OrbitTag::Open);
}
