#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pvzeta/error.hpp"
#include "pvzeta/invariants.hpp"
#include "pvzeta/zeta_real.hpp"

using namespace pvzeta;

namespace {

constexpr double kPi = std::numbers::pi;

double gamma_r(double s) { return std::pow(kPi, -s / 2) * std::tgamma(s / 2); }

double rel(ComplexValue a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("tate gaussian zeta is Gamma_R") {
  for (double s : {0.5, 1.0, 2.0, 3.5, 7.25}) {
    auto r = zeta_real(SpaceId::Tate, s, 1.0);
    CHECK(rel(r.value, gamma_r(s)) < 1e-10);
    CHECK(r.est_error < 1e-8 * std::abs(r.value));
  }
  CHECK(std::abs(zeta_real(SpaceId::Tate, 1.0, 1.0).value - 1.0) < 1e-12);
}

TEST_CASE("matrix2 gaussian zeta is pi Gamma_R(s) Gamma_R(s+1)") {
  for (double s : {0.5, 1.0, 2.0, 3.5}) {
    double want = kPi * gamma_r(s) * gamma_r(s + 1);
    CHECK(rel(zeta_real(SpaceId::Matrix2, s, 1.0).value, want) < 1e-9);
  }
  // The generic tensor route: exact when |det|^{s-1} is a polynomial, and an
  // honest error estimate otherwise (the kink of |det| slows Gauss-Hermite down).
  QuadratureSpec tg;
  tg.scheme = QuadratureScheme::TensorGauss;
  tg.gh_degree = 4;
  tg.gh_max_degree = 8;
  for (double s : {3.0, 5.0}) {
    double want = kPi * gamma_r(s) * gamma_r(s + 1);
    CHECK(rel(zeta_real(SpaceId::Matrix2, s, 1.0, tg).value, want) < 1e-12);
  }
  tg.gh_degree = 10;
  tg.gh_max_degree = 16;
  double want = kPi * gamma_r(2.0) * gamma_r(3.0);
  auto kink = zeta_real(SpaceId::Matrix2, 2.0, 1.0, tg);
  CHECK(rel(kink.value, want) < 0.02);
  CHECK(std::abs(kink.value - want) <= kink.est_error);
}

TEST_CASE("complex s") {
  ComplexValue s(2.0, 1.5);
  auto a = zeta_real(SpaceId::Tate, s, 1.0);
  auto b = zeta_real(SpaceId::Tate, std::conj(s), 1.0);
  CHECK(std::abs(a.value - std::conj(b.value)) < 1e-12);
  CHECK(std::abs(a.value) <= zeta_real(SpaceId::Tate, 2.0, 1.0).value.real() + 1e-12);
  // no complex Gamma in the standard library; use Gamma_R(s + 2) = s / (2 pi) Gamma_R(s)
  auto c = zeta_real(SpaceId::Tate, s + 2.0, 1.0);
  CHECK(std::abs(c.value - s / (2 * kPi) * a.value) < 1e-10);
}

TEST_CASE("orbit additivity") {
  for (auto space : {SpaceId::Tate, SpaceId::Matrix2}) {
    for (double s : {0.7, 2.0, 3.5}) {
      auto all = zeta_real(space, s, 1.0);
      auto pos = zeta_real(space, s, 1.0, {}, 1);
      auto neg = zeta_real(space, s, 1.0, {}, -1);
      CHECK(std::abs(pos.value + neg.value - all.value) < 1e-8 * std::abs(all.value));
      CHECK(std::abs(pos.value - neg.value) < 1e-8 * std::abs(all.value));
    }
  }
}

TEST_CASE("sigma homogeneity") {
  for (auto space : {SpaceId::Tate, SpaceId::Matrix2}) {
    for (double s : {0.5, 2.0, 3.5})
      for (double sigma : {0.25, 2.0, 3.7}) {
        auto one = zeta_real(space, s, 1.0);
        auto scaled = zeta_real(space, s, sigma);
        auto want = sigma_scaling(space, s, sigma) * one.value;
        CHECK(std::abs(scaled.value - want) < 1e-8 * std::abs(want));
      }
  }
}

TEST_CASE("convergence range is enforced") {
  CHECK_THROWS_AS(zeta_real(SpaceId::Tate, 0.0, 1.0), Error);
  CHECK_THROWS_AS(zeta_real(SpaceId::Matrix2, -0.5, 1.0), Error);
  QuadratureSpec tg;
  tg.scheme = QuadratureScheme::TensorGauss;
  try {
    zeta_real(SpaceId::CubeSplit, 1.0, 1.0, tg);
    FAIL("expected ConvergenceRangeViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConvergenceRangeViolated);
  }
  CHECK_THROWS_AS(zeta_real(SpaceId::CubeSplit, 2.0, 1.0), Error);  // adaptive-global is not offered for the cube
  CHECK_THROWS_AS(zeta_real(SpaceId::Tate, 2.0, -1.0), Error);
}

TEST_CASE("gauss-hermite rule is exact on low moments") {
  std::vector<double> x, w;
  gauss_hermite(6, x, w);
  REQUIRE(x.size() == 6);
  for (int k = 0; k <= 11; ++k) {
    double q = 0;
    for (size_t i = 0; i < x.size(); ++i) q += w[i] * std::pow(x[i], k);
    double want = k % 2 ? 0.0 : std::tgamma((k + 1) / 2.0);
    CHECK(std::abs(q - want) < 1e-13 * (1.0 + std::tgamma((k + 2) / 2.0)));
  }
}

TEST_CASE("cube tensor quadrature against monte carlo") {
  QuadratureSpec tg;
  tg.scheme = QuadratureScheme::TensorGauss;
  tg.gh_degree = 4;
  tg.gh_max_degree = 4;
  auto q = zeta_real(SpaceId::CubeSplit, 3.0, 1.0, tg);
  CHECK(q.value.real() > 0);
  auto mc = zeta_real_monte_carlo(SpaceId::CubeSplit, 3.0, 1.0, 200000, 5);
  CHECK(std::abs(mc.value - q.value) < 5 * mc.std_error + 0.02 * std::abs(q.value));
  tg.threads = 8;
  auto q8 = zeta_real(SpaceId::CubeSplit, 3.0, 1.0, tg);
  CHECK(q8.value == q.value);
}

TEST_CASE("monte carlo estimate for matrix2") {
  double want = kPi * gamma_r(2.0) * gamma_r(3.0);
  auto mc = zeta_real_monte_carlo(SpaceId::Matrix2, 2.0, 1.0, 400000, 3);
  CHECK(std::abs(mc.value.real() - want) < 5 * mc.std_error);
  CHECK(mc.std_error < 0.01 * want);
}

TEST_CASE("rho split") {
  auto t = rho_split(SpaceId::Tate, {8.0});
  CHECK(t.unit == Point<double>{1.0});
  CHECK(t.scale == 8.0);
  auto m = rho_split(SpaceId::Tate, {-1.0});
  CHECK(m.unit == Point<double>{-1.0});
  CHECK(m.scale == 1.0);

  Point<double> x{1, 0, 0, 1, 1, 0, 0, -1};  // P = 4
  auto c = rho_split(SpaceId::CubeSplit, x);
  CHECK(eigencharacter(SpaceId::CubeSplit, c.a) == doctest::Approx(4.0));
  CHECK(std::abs(eval_invariant(SpaceId::CubeSplit, c.unit)) == doctest::Approx(1.0));
  auto back = act(SpaceId::CubeSplit, c.unit, c.a);
  for (int i = 0; i < 8; ++i) CHECK(back[i] == doctest::Approx(x[i]));

  Point<double> y{2, 1, -1, 3};
  auto r = rho_split(SpaceId::Matrix2, y);
  CHECK(std::abs(eval_invariant(SpaceId::Matrix2, r.unit)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(rho_split(SpaceId::Matrix2, {1, 1, 1, 1}), Error);
}

TEST_CASE("scheme names") {
  for (auto s : {QuadratureScheme::AdaptiveGlobal, QuadratureScheme::TensorGauss})
    CHECK(parse_scheme(to_string(s)) == s);
  CHECK_THROWS_AS(parse_scheme("simpson"), Error);
}
