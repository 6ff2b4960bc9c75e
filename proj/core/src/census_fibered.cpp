// Exact cube census by fibering over x1.
//
// Write x1 = p^i U diag(1, p^d) V with U, V in GL2(Z_p). The subgroup
// GL2(Z_p) x GL2(Z_p) x {1} preserves Haar measure and changes P by a unit,
// so for x1 = p^i diag(1, p^d) and x2 = [[r, s], [u, z]]:
//
//   P / p^{2i} = (z + p^d r)^2 - 4 p^d (r z - s u) = (z - p^d r)^2 + 4 p^d s u,
//
// and the measure-preserving shift z -> z + p^d r reduces it to
// Q_d(z, s, u) = z^2 + 4 p^d s u, with r integrating out. Hence
//
//   c_m = sum_i p^{-4i} [ sum_{d<=r} mu_prim(d) mu_{Q_d}(r) + tail(r+1) mu_{z^2}(r) ]
//
// with r = m - 2i, mu_prim(d) the measure of primitive 2x2 matrices with
// val det = d, and tail(D) = sum_{d>=D} mu_prim(d). For d > r, Q_d agrees
// with z^2 modulo p^{r+1}.
//
// Only Q_0, Q_1 and z^2 (in one variable) are censused by branch-and-lift.
// For d >= 2, a unit z gives val 0 and z = p z' gives p^2 Q_{d-2}(z', s, u), so
//
//   mu_{Q_d}(r) = (1 - 1/p) [r = 0] + (1/p) mu_{Q_{d-2}}(r - 2).

#include <algorithm>

#include "pvzeta/census.hpp"

namespace pvzeta {

namespace {

BigRational mu_prim(long p, int d) {
  BigRational p2m1(p * p - 1);
  if (d == 0) return p2m1 * BigRational(p * p - p) * rpow(p, -4);
  return p2m1 * BigRational(p + 1) * rpow(p, -4) * (BigRational(1) - BigRational(1, p)) * rpow(p, 1 - d);
}

BigRational tail(long p, int from) {
  // sum_{d >= from} mu_prim(d) for from >= 1 (geometric).
  return BigRational(p * p - 1) * BigRational(p + 1) * rpow(p, -4) * rpow(p, 1 - from);
}

IntPoly slice(long p, int d) {
  IntPoly z = IntPoly::variable(3, 0), s = IntPoly::variable(3, 1), u = IntPoly::variable(3, 2);
  return z * z + s * u * (BigInt(4) * ipow(p, static_cast<unsigned>(d)));
}

}  // namespace

std::vector<BigRational> cube_fibered_census(std::uint64_t p, int m_max, const CensusOptions& opt) {
  require(is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  require(m_max >= 0, ErrorCode::InvalidArgument, "m_max must be >= 0");
  long lp = static_cast<long>(p);
  CensusOptions o = opt;
  auto run = [&](const IntPoly& f) {
    LevelCounts lc = count_branch_lift(f, p, m_max, o);
    o.budget -= lc.evaluations;
    return lc.measures();
  };
  IntPoly zsq = IntPoly::variable(1, 0) * IntPoly::variable(1, 0);
  std::vector<BigRational> mu_inf = run(zsq);
  std::vector<std::vector<BigRational>> mu_q;
  for (int d = 0; d <= std::min(m_max, 1); ++d) mu_q.push_back(run(slice(lp, d)));
  BigRational unit = BigRational(1) - BigRational(1, lp), inv_p(1, lp);
  for (int d = 2; d <= m_max; ++d) {
    std::vector<BigRational> mu(static_cast<size_t>(m_max) + 1, BigRational(0));
    mu[0] = unit;
    for (int r = 2; r <= m_max; ++r) mu[r] = inv_p * mu_q[d - 2][r - 2];
    mu_q.push_back(std::move(mu));
  }

  std::vector<BigRational> c(static_cast<size_t>(m_max) + 1, BigRational(0));
  for (int m = 0; m <= m_max; ++m) {
    for (int i = 0; 2 * i <= m; ++i) {
      int r = m - 2 * i;
      BigRational inner = tail(lp, r + 1) * mu_inf[r];
      for (int d = 0; d <= r; ++d) inner += mu_prim(lp, d) * mu_q[d][r];
      c[m] += rpow(lp, -4 * i) * inner;
    }
  }
  return c;
}

}  // namespace pvzeta
