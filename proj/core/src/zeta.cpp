#include <algorithm>
#include <sstream>

#include "pvzeta/census.hpp"

namespace pvzeta {

ZetaResult zeta_from_coefficients(const std::vector<BigRational>& c, int num_deg, int den_deg, int holdout) {
  int fit = num_deg + den_deg + 1;
  if (static_cast<int>(c.size()) < fit + holdout)
    fail(ErrorCode::InsufficientCoefficients, "need " + std::to_string(fit + holdout) + " exact coefficients, have " +
                                                  std::to_string(c.size()));
  std::vector<BigRational> prefix(c.begin(), c.begin() + fit);
  auto r = pade_reconstruct(prefix, num_deg, den_deg, 0);
  if (!r)
    fail(ErrorCode::NoFit, "no rational function of degree (" + std::to_string(num_deg) + "," +
                               std::to_string(den_deg) + ") fits the census");
  auto series = series_expand(*r, static_cast<int>(c.size()) - 1);
  for (int m = fit; m < static_cast<int>(c.size()); ++m)
    if (series[m] != c[m])
      throw HoldoutMismatch(m, "reconstruction predicts c_" + std::to_string(m) + " = " + to_string(series[m]) +
                                   " but the census has " + to_string(c[m]));
  ZetaResult out;
  out.zeta = *r;
  out.holdout_checked = static_cast<int>(c.size()) - fit;
  out.holdout_verified = out.holdout_checked >= 1 && out.holdout_checked >= holdout;
  out.poles = rational_roots(r->den());
  out.method = "pade";
  return out;
}

ZetaResult zeta_from_census(const ValuationCensus& census, int num_deg, int den_deg, int holdout) {
  return zeta_from_coefficients(census.exact_prefix(), num_deg, den_deg, holdout);
}

ZetaResult zeta_igusa_ansatz(const std::vector<BigRational>& c, std::uint64_t p, int holdout,
                             const AnsatzBounds& bounds) {
  require(holdout >= 0, ErrorCode::InvalidArgument, "holdout must be >= 0");
  long lp = static_cast<long>(p);
  int len = static_cast<int>(c.size());
  if (len < 1 + holdout) fail(ErrorCode::InsufficientCoefficients, "too few coefficients for the ansatz");
  std::vector<QPoly> factors;
  for (int b = 1; b <= bounds.max_b; ++b)
    for (int a = 1; a <= bounds.max_a; ++a)
      factors.push_back(QPoly::constant(BigRational(1)) - QPoly::monomial(rpow(lp, -a), b));
  QPoly series(c);

  struct Best {
    int cost = 1 << 30;
    int nfactors = 0;
    QPoly num, den;
    int checked = 0;
  } best;
  std::vector<int> idx;
  // Depth-first over non-decreasing index sequences (multisets).
  auto visit = [&](auto&& self, int start, const QPoly& den) -> void {
    QPoly prod = den * series;
    std::vector<BigRational> e(static_cast<size_t>(len), BigRational(0));
    for (int i = 0; i < len; ++i) e[i] = prod[i];
    int dn = -1;
    for (int i = len - 1; i >= 0; --i)
      if (e[i] != 0) {
        dn = i;
        break;
      }
    int checked = len - 1 - dn;
    if (dn <= bounds.max_num_deg && checked >= holdout && checked >= 1) {
      int cost = std::max(dn, 0) + den.degree();
      int nf = static_cast<int>(idx.size());
      if (cost < best.cost || (cost == best.cost && nf < best.nfactors)) {
        e.resize(static_cast<size_t>(std::max(dn, 0)) + 1);
        best = Best{cost, nf, QPoly(e), den, checked};
      }
    }
    if (static_cast<int>(idx.size()) == bounds.max_factors) return;
    for (int k = start; k < static_cast<int>(factors.size()); ++k) {
      idx.push_back(k);
      self(self, k, den * factors[k]);
      idx.pop_back();
    }
  };
  visit(visit, 0, QPoly::constant(BigRational(1)));
  if (best.cost == (1 << 30))
    fail(ErrorCode::NoFit, "no structured denominator within the ansatz bounds fits with holdout " +
                               std::to_string(holdout));
  ZetaResult out;
  out.zeta = RationalFunction(best.num, best.den);
  out.holdout_checked = best.checked;
  out.holdout_verified = best.checked >= std::max(1, holdout);
  out.poles = rational_roots(out.zeta.den());
  out.method = "igusa-ansatz";
  return out;
}

DegreeBounds default_degrees(SpaceId s) {
  switch (s) {
    case SpaceId::Tate: return {1, 1, 1};
    case SpaceId::Matrix2: return {1, 2, 1};
    case SpaceId::CubeSplit: return {4, 7, 2};
  }
  return {1, 1, 1};
}

ZetaResult zeta_on_coset(SpaceId s, std::uint64_t p, const std::vector<BigInt>& center, int level_k, int num_deg,
                         int den_deg, int holdout, const CensusOptions& opt) {
  require(level_k >= 0, ErrorCode::InvalidArgument, "coset level must be >= 0");
  const auto& d = descriptor(s);
  require(static_cast<int>(center.size()) == d.dim, ErrorCode::InvalidArgument, "center has wrong dimension");
  long lp = static_cast<long>(p);
  BigInt scale = ipow(lp, static_cast<unsigned>(level_k));
  IntPoly g = d.basic_invariant.substitute_affine(center, scale);
  ZetaResult out;
  out.method = "coset";
  if (g.is_zero()) return out;
  int e = g.content_valuation(lp);
  IntPoly h = g.divide_exact(ipow(lp, static_cast<unsigned>(e)));
  int len = num_deg + den_deg + 1 + holdout;
  auto c = count_branch_lift(h, p, len - 1, opt).measures();
  ZetaResult inner = zeta_from_coefficients(c, num_deg, den_deg, holdout);
  out = inner;
  out.zeta = inner.zeta * RationalFunction::power_of_t(e) * rpow(lp, -d.dim * level_k);
  out.method = "coset";
  return out;
}

CosetZetaCache::CosetZetaCache(SpaceId s, std::uint64_t p, CensusOptions opt) : s_(s), p_(p), opt_(opt) {}

std::string CosetZetaCache::key(const std::vector<BigInt>& center, int level_k, std::vector<BigInt>& canon) const {
  long lp = static_cast<long>(p_);
  BigInt mod = ipow(lp, static_cast<unsigned>(level_k));
  canon.clear();
  for (const auto& c : center) {
    BigInt r = level_k == 0 ? BigInt(0) : BigInt(c % mod);
    if (r < 0) r += mod;
    canon.push_back(r);
  }
  if (level_k == 1 && s_ != SpaceId::CubeSplit) {
    // The zeta of x + pZ_p^n only depends on the G(F_p)-orbit of x mod p.
    int rank = 0;
    if (s_ == SpaceId::Tate) {
      rank = canon[0] != 0 ? 1 : 0;
      canon = {BigInt(rank)};
    } else {
      bool zero = std::all_of(canon.begin(), canon.end(), [](const BigInt& v) { return v == 0; });
      BigInt det = (canon[0] * canon[3] - canon[1] * canon[2]) % mod;
      rank = zero ? 0 : det != 0 ? 2 : 1;
      canon = {BigInt(rank > 0), BigInt(0), BigInt(0), BigInt(rank == 2)};
    }
  }
  std::ostringstream os;
  os << level_k;
  for (const auto& v : canon) os << ":" << v.get_str();
  return os.str();
}

const RationalFunction& CosetZetaCache::get(const std::vector<BigInt>& center, int level_k) {
  std::vector<BigInt> canon;
  std::string k = key(center, level_k, canon);
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  DegreeBounds db = default_degrees(s_);
  auto z = zeta_on_coset(s_, p_, canon, level_k, db.num_deg, db.den_deg, db.holdout, opt_);
  return cache_.emplace(k, z.zeta).first->second;
}

}  // namespace pvzeta
