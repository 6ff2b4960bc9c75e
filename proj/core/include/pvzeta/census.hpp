#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvzeta/catalog.hpp"
#include "pvzeta/int_poly.hpp"
#include "pvzeta/rational_function.hpp"

namespace pvzeta {

enum class CensusStrategy { Direct, BranchLift, Fibered, MonteCarlo };

std::string to_string(CensusStrategy s);
CensusStrategy parse_strategy(const std::string& s);

struct CensusEntry {
  int m = 0;
  BigRational c;
  bool exact = true;
  /// 95% confidence half-width for sampled entries.
  std::optional<BigRational> ci;

  bool operator==(const CensusEntry&) const = default;
};

/// c_m = measure{x in Z_p^n : val f(x) = m}.
struct ValuationCensus {
  SpaceId space = SpaceId::Tate;
  std::uint64_t p = 2;
  int n = 1;
  CensusStrategy strategy = CensusStrategy::Direct;
  std::optional<std::uint64_t> seed;
  std::vector<CensusEntry> entries;
  /// Monte Carlo only: samples drawn and samples whose valuation reached
  /// the working precision.
  std::uint64_t samples = 0;
  std::uint64_t precision_exhausted = 0;

  bool precision_flag() const { return samples > 0 && precision_exhausted * 100 > samples; }
  /// Exact coefficients c_0, c_1, ... up to the first non-exact entry.
  std::vector<BigRational> exact_prefix() const;

  bool operator==(const ValuationCensus&) const = default;
};

struct CensusOptions {
  /// Maximum number of polynomial evaluations.
  std::uint64_t budget = 1000000000ULL;
  /// Maximum number of residues held in a branch-lift frontier.
  std::uint64_t frontier_cap = 1ULL << 24;
  int threads = 0;
};

/// Counts of x mod p^{m+1} with val f(x) = m, split by the unit part
/// (f(x) / p^m) mod p: counts[m][u] for u in [1, p).
struct LevelCounts {
  std::uint64_t p = 2;
  int n = 1;
  std::vector<std::vector<BigInt>> counts;
  std::uint64_t evaluations = 0;

  BigInt total(int m) const;
  /// counts summed into c_m = total(m) / p^{n(m+1)}.
  std::vector<BigRational> measures() const;
};

LevelCounts count_direct(const IntPoly& f, std::uint64_t p, int m_max, const CensusOptions& opt);
LevelCounts count_branch_lift(const IntPoly& f, std::uint64_t p, int m_max, const CensusOptions& opt);

/// Exact census by full enumeration of (Z/p^{m_max+1})^n, by frontier
/// lifting, or (cube space only) by fibering over the elementary divisors
/// of x1. BudgetExceeded when the work would exceed opt.budget.
ValuationCensus census_exact(SpaceId s, std::uint64_t p, int m_max, CensusStrategy strategy,
                             const CensusOptions& opt = {});

/// Evaluation count the strategy would need; used to pick a strategy and to
/// report budgets.
std::uint64_t direct_volume(SpaceId s, std::uint64_t p, int m_max);

/// Exact cube census via the fibration of x1 by elementary divisors.
std::vector<BigRational> cube_fibered_census(std::uint64_t p, int m_max, const CensusOptions& opt);

/// Sampled census at precision p^k. Samples are split over 64 fixed streams
/// seeded from (seed, stream), so results do not depend on thread count.
ValuationCensus census_monte_carlo(SpaceId s, std::uint64_t p, int m_max, std::uint64_t samples, unsigned precision_k,
                                   std::uint64_t seed, const CensusOptions& opt = {});

struct ZetaResult {
  RationalFunction zeta;
  bool holdout_verified = false;
  int holdout_checked = 0;
  /// Rational roots of the denominator, in t.
  std::vector<BigRational> poles;
  std::string method;
};

/// Pade fit on c_0..c_{a+b}; every further exact entry (at least `holdout`)
/// is checked. Throws NoFit or HoldoutMismatch (with the offending m).
ZetaResult zeta_from_census(const ValuationCensus& census, int num_deg, int den_deg, int holdout);
ZetaResult zeta_from_coefficients(const std::vector<BigRational>& c, int num_deg, int den_deg, int holdout);

struct AnsatzBounds {
  int max_a = 8;
  int max_b = 2;
  int max_factors = 4;
  int max_num_deg = 6;
};

/// Denominator restricted to products of (1 - p^{-a} t^b); the numerator is
/// read off from D * Z and the remaining coefficients must vanish, at least
/// `holdout` of them. Minimal total degree wins.
ZetaResult zeta_igusa_ansatz(const std::vector<BigRational>& c, std::uint64_t p, int holdout,
                             const AnsatzBounds& bounds = {});

/// Per-space degree bounds that the coset and gamma code rely on.
struct DegreeBounds {
  int num_deg;
  int den_deg;
  int holdout;
};
DegreeBounds default_degrees(SpaceId s);

/// Zeta integral of |f|^lambda over center + p^k Z_p^n (center integral),
/// as a rational function of t = p^{-lambda}.
ZetaResult zeta_on_coset(SpaceId s, std::uint64_t p, const std::vector<BigInt>& center, int level_k, int num_deg,
                         int den_deg, int holdout = 1, const CensusOptions& opt = {});

/// Same integral with results cached. Level-1 cosets are keyed by the
/// G(F_p)-orbit of the residue (unit/zero for tate, rank for matrix2), other
/// cosets by their exact residue. Not safe for concurrent use.
class CosetZetaCache {
 public:
  CosetZetaCache(SpaceId s, std::uint64_t p, CensusOptions opt = {});
  const RationalFunction& get(const std::vector<BigInt>& center, int level_k);
  std::size_t size() const { return cache_.size(); }

 private:
  std::string key(const std::vector<BigInt>& center, int level_k, std::vector<BigInt>& canonical) const;
  SpaceId s_;
  std::uint64_t p_;
  CensusOptions opt_;
  std::map<std::string, RationalFunction> cache_;
};

}  // namespace pvzeta
