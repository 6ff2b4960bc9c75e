#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pvzeta/catalog.hpp"

namespace pvzeta {

/// F_x(v1, v2) = det(v1 x1 + v2 x2) = a v1^2 + b v1 v2 + c v2^2.
template <class T>
struct QuadraticCoeffs {
  T a, b, c;
};

namespace detail {

inline size_t expected_dim(SpaceId s) { return s == SpaceId::Tate ? 1 : s == SpaceId::Matrix2 ? 4 : 8; }

template <class T>
T det2(const T* x) {
  return x[0] * x[3] - x[1] * x[2];
}

template <class T>
T times4(const T& x) {
  T y = x + x;
  return y + y;
}

}  // namespace detail

template <class T>
QuadraticCoeffs<T> coeffs_Fx(SpaceId s, const Point<T>& x) {
  require(s == SpaceId::CubeSplit, ErrorCode::WrongSpace, "F_x is defined on the cube space only");
  require(x.size() == 8, ErrorCode::InvalidArgument, "cube points have 8 coordinates");
  T a = detail::det2(x.data());
  T c = detail::det2(x.data() + 4);
  // det(x1 + x2) - det x1 - det x2, expanded.
  T b = x[0] * x[7] + x[4] * x[3] - x[1] * x[6] - x[5] * x[2];
  return {a, b, c};
}

/// tate: x; matrix2: det x; cube: disc F_x = b^2 - 4ac.
template <class T>
T eval_invariant(SpaceId s, const Point<T>& x) {
  require(x.size() == detail::expected_dim(s), ErrorCode::InvalidArgument, "point has wrong dimension");
  switch (s) {
    case SpaceId::Tate:
      return x[0];
    case SpaceId::Matrix2:
      return detail::det2(x.data());
    case SpaceId::CubeSplit: {
      auto q = coeffs_Fx(s, x);
      return q.b * q.b - detail::times4<T>(q.a * q.c);
    }
  }
  fail(ErrorCode::WrongSpace, "unknown space");
}

/// Basic invariant of the dual triplet. In the pairing coordinates used here
/// it is the same polynomial as on the primal side; its eigencharacter under
/// the contragredient action is the inverse of the primal one.
template <class T>
T eval_dual_invariant(SpaceId s, const Point<T>& y) {
  return eval_invariant(s, y);
}

/// Symbolic gradient of the basic invariant, in primal coordinates.
template <class T>
Point<T> invariant_gradient(SpaceId s, const Point<T>& x) {
  require(x.size() == detail::expected_dim(s), ErrorCode::InvalidArgument, "point has wrong dimension");
  T z = x[0] - x[0];
  switch (s) {
    case SpaceId::Tate:
      return {one_like(x[0])};
    case SpaceId::Matrix2:
      return {x[3], z - x[2], z - x[1], x[0]};
    case SpaceId::CubeSplit: {
      auto q = coeffs_Fx(s, x);
      // da, db, dc with respect to the 8 coordinates.
      Point<T> da{x[3], z - x[2], z - x[1], x[0], z, z, z, z};
      Point<T> dc{z, z, z, z, x[7], z - x[6], z - x[5], x[4]};
      Point<T> db{x[7], z - x[6], z - x[5], x[4], x[3], z - x[2], z - x[1], x[0]};
      Point<T> g(8, z);
      T b2 = q.b + q.b;
      T c4 = detail::times4<T>(q.c), a4 = detail::times4<T>(q.a);
      for (int i = 0; i < 8; ++i) g[i] = b2 * db[i] - c4 * da[i] - a4 * dc[i];
      return g;
    }
  }
  fail(ErrorCode::WrongSpace, "unknown space");
}

/// phi_f(x) = grad f / f, expressed in dual coordinates through the
/// pairing. Throws BoundaryPoint when f(x) = 0.
template <class T>
Point<T> log_derivative_map(SpaceId s, const Point<T>& x) {
  T f = eval_invariant(s, x);
  if (is_zero(f)) fail(ErrorCode::BoundaryPoint, "invariant vanishes at the point");
  T fi = inv(f);
  Point<T> g = invariant_gradient(s, x);
  const auto& perm = descriptor(s).pairing_perm;
  Point<T> phi(g.size(), g[0]);
  for (size_t k = 0; k < g.size(); ++k) phi[k] = g[perm[k]] * fi;
  return phi;
}

struct EigencharReport {
  SpaceId space;
  int trials = 0;
  int failures = 0;
  std::vector<std::string> counterexamples;  // at most a few, for diagnostics
};

/// Random integer points and group elements; exact comparison of
/// f(x rho(g)) with omega(g) f(x) over Q.
EigencharReport check_eigencharacter(SpaceId s, int trials, std::uint64_t seed);

}  // namespace pvzeta
