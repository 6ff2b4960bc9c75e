#include <doctest.h>

#include "pvzeta/error.hpp"
#include "pvzeta/int_poly.hpp"
#include "pvzeta/rational_function.hpp"
#include "support.hpp"

using namespace pvzeta;
using pvtest::Q;

namespace {

QPoly qp(std::initializer_list<BigRational> c) { return QPoly(std::vector<BigRational>(c)); }

}  // namespace

TEST_CASE("series expansion by long division") {
  RationalFunction geo(qp({Q(1)}), qp({Q(1), Q(-1)}));
  CHECK(series_expand(geo, 3) == std::vector<BigRational>{Q(1), Q(1), Q(1), Q(1)});
  RationalFunction tate3(qp({Q(2, 3)}), qp({Q(1), Q(-1, 3)}));
  CHECK(series_expand(tate3, 2) == std::vector<BigRational>{Q(2, 3), Q(2, 9), Q(2, 27)});
  RationalFunction odd(qp({Q(0), Q(1)}), qp({Q(1), Q(0), Q(-1)}));
  CHECK(series_expand(odd, 4) == std::vector<BigRational>{Q(0), Q(1), Q(0), Q(1), Q(0)});
}

TEST_CASE("pade reconstruction") {
  auto r = pade_reconstruct({Q(2, 3), Q(2, 9), Q(2, 27), Q(2, 81), Q(2, 243)}, 0, 1, 2);
  REQUIRE(r);
  CHECK(*r == RationalFunction(qp({Q(2, 3)}), qp({Q(1), Q(-1, 3)})));

  auto c = pade_reconstruct({Q(1), Q(0), Q(0), Q(0)}, 0, 0, 2);
  REQUIRE(c);
  CHECK(*c == RationalFunction::constant(Q(1)));

  // Fibonacci needs a quadratic denominator.
  CHECK_FALSE(pade_reconstruct({Q(1), Q(1), Q(2), Q(3), Q(5)}, 0, 1, 1));
  auto fib = pade_reconstruct({Q(1), Q(1), Q(2), Q(3), Q(5), Q(8)}, 0, 2, 2);
  REQUIRE(fib);
  CHECK(*fib == RationalFunction(qp({Q(1)}), qp({Q(1), Q(-1), Q(-1)})));
}

TEST_CASE("pade recovers random rational functions from their series") {
  std::mt19937_64 rng(11);
  auto rnd = [&] { return Q(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 5) + 1); };
  for (int trial = 0; trial < 30; ++trial) {
    QPoly num = qp({rnd(), rnd()});
    QPoly den = qp({Q(1), rnd(), rnd()});
    RationalFunction f(num, den);
    auto s = series_expand(f, 9);
    auto g = pade_reconstruct(s, 1, 2, 4);
    REQUIRE(g);
    CHECK(*g == f);
  }
}

TEST_CASE("rational function arithmetic is canonical") {
  RationalFunction a(qp({Q(1)}), qp({Q(1), Q(-1, 2)}));
  RationalFunction b(qp({Q(1)}), qp({Q(1), Q(-1, 4)}));
  CHECK((a * b) / b == a);
  CHECK((a + b) - b == a);
  CHECK(a.eval(Q(1)) == Q(2));
  CHECK(a.scale_arg(Q(2)).eval(Q(1, 2)) == a.eval(Q(1)));
  auto r = a.reciprocal_arg(Q(4));  // t -> 4/t
  CHECK(r.eval(Q(4)) == a.eval(Q(1)));
}

TEST_CASE("polynomial gcd, division and rational roots") {
  QPoly f = qp({Q(-2), Q(1)}) * qp({Q(-1, 3), Q(1)}) * qp({Q(1), Q(0), Q(1)});
  auto roots = rational_roots(f);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Q(1, 3));
  CHECK(roots[1] == Q(2));
  auto [q, r] = divmod(f, qp({Q(-2), Q(1)}));
  CHECK(r.is_zero());
  CHECK(make_monic(gcd(f, qp({Q(-2), Q(1)}) * qp({Q(5), Q(1)}))) == qp({Q(-2), Q(1)}));
}

TEST_CASE("linear solver") {
  auto x = solve_linear({{Q(2), Q(1)}, {Q(1), Q(3)}}, {Q(3), Q(5)});
  REQUIRE(x);
  CHECK((*x)[0] == Q(4, 5));
  CHECK((*x)[1] == Q(7, 5));
  CHECK_FALSE(solve_linear({{Q(1), Q(2)}, {Q(2), Q(4)}}, {Q(1), Q(3)}));
}

TEST_CASE("integer polynomial substitution, content and derivative") {
  IntPoly x = IntPoly::variable(2, 0), y = IntPoly::variable(2, 1);
  IntPoly f = x * x - y * y * BigInt(3) + x * y;
  // f(1 + 2u, 3 + 2v)
  IntPoly g = f.substitute_affine({BigInt(1), BigInt(3)}, BigInt(2));
  for (long u = -3; u <= 3; ++u)
    for (long v = -3; v <= 3; ++v)
      CHECK(g.eval(std::vector<BigInt>{BigInt(u), BigInt(v)}) ==
            f.eval(std::vector<BigInt>{BigInt(1 + 2 * u), BigInt(3 + 2 * v)}));
  CHECK((x * BigInt(12) + y * BigInt(18)).content_valuation(3) == 1);
  CHECK(f.derivative(0) == x * BigInt(2) + y);
  CHECK(f.derivative(1) == x - y * BigInt(6));
  CHECK(f.total_degree() == 2);
}

TEST_CASE("compiled polynomial matches bignum evaluation") {
  IntPoly x = IntPoly::variable(3, 0), y = IntPoly::variable(3, 1), z = IntPoly::variable(3, 2);
  IntPoly f = x * x * y - z * BigInt(7) + y * z * z * BigInt(-5) + IntPoly::constant(3, BigInt(11));
  for (std::uint64_t mod : {std::uint64_t(8), std::uint64_t(27), std::uint64_t(625), std::uint64_t(1) << 20}) {
    CompiledPoly c(f, mod);
    std::mt19937_64 rng(mod);
    for (int t = 0; t < 200; ++t) {
      std::uint32_t v[3];
      std::vector<BigInt> b;
      for (auto& e : v) {
        e = static_cast<std::uint32_t>(rng() % mod);
        b.emplace_back(static_cast<unsigned long>(e));
      }
      BigInt want = f.eval(b) % BigInt(static_cast<unsigned long>(mod));
      if (want < 0) want += static_cast<unsigned long>(mod);
      CHECK(c.eval(v) == want.get_ui());
    }
  }
}
