#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pvzeta/census.hpp"

namespace pvzeta {

/// coeff * 1_{center + p^level Z_p^n}. Centers are rationals with p-power
/// denominators; level may be negative.
struct CosetTerm {
  std::vector<BigRational> center;
  int level = 0;
  ComplexValue coeff{1.0, 0.0};
  /// Exact value of coeff when it is rational.
  std::optional<BigRational> exact;
};

struct CosetFunction {
  std::uint64_t p = 2;
  int n = 1;
  std::vector<CosetTerm> terms;

  static CosetFunction indicator(std::uint64_t p, std::vector<BigRational> center, int level);
  bool is_exact() const;
  std::string str() const;
};

/// a * xi + b * eta, terms concatenated (not canonical).
CosetFunction combine(const ComplexValue& a, const CosetFunction& xi, const ComplexValue& b, const CosetFunction& eta);
CosetFunction scaled(const CosetFunction& xi, const BigRational& c);

/// Unramified psi(x) = exp(2 pi i sign {x}_p).
struct AdditiveCharacter {
  int conductor_exponent = 0;
  int sign = 1;
  AdditiveCharacter negated() const { return {conductor_exponent, -sign}; }
};

/// Dense form: support in p^{-L} Z_p^n, constant on cosets of p^R Z_p^n.
/// Cell X in (Z/p^{L+R})^n stands for p^{-L} X + p^R Z_p^n.
struct CosetGrid {
  std::uint64_t p = 2;
  int n = 1;
  int L = 0, R = 0;
  std::vector<ComplexValue> values;
  std::optional<std::vector<BigRational>> exact;

  std::uint64_t side() const;
  /// Haar measure of one cell.
  double cell_measure() const;
  /// Same function on a finer grid (L2 >= L, R2 >= R).
  CosetGrid refined(int L2, int R2) const;
};

/// Largest number of cells a grid may hold.
constexpr std::uint64_t kMaxGridCells = 1ULL << 22;

CosetGrid to_grid(const CosetFunction& xi);
CosetGrid to_grid(const CosetFunction& xi, int L, int R);
/// Canonical disjoint form: one term per nonzero cell, then full families of
/// p^n equal children merged into their parent.
CosetFunction from_grid(const CosetGrid& g);
CosetFunction canonicalize(const CosetFunction& xi);

/// hat xi(y) = int xi(x) psi(<y, x>) dx with Z_p^n of volume 1. The transform
/// of 1_{a + p^k Z_p^n} is p^{-kn} psi(<y, a>) 1_{p^{-k} Z_p^n}(y). Exact
/// coefficients are carried along when every phase is +-1.
CosetGrid fourier(const CosetGrid& xi, const AdditiveCharacter& psi, SpaceId s);
CosetFunction fourier(const CosetFunction& xi, const AdditiveCharacter& psi, SpaceId s);

/// sum |c|^2 * measure over cells.
double l2_norm_squared(const CosetGrid& g);
/// max |a - b| after refining both to a common grid.
double max_difference(const CosetGrid& a, const CosetGrid& b);

/// Uniform random coset function (<= max_terms terms, integral centers,
/// levels in [0, max_level], coefficients with |re|, |im| <= 1).
CosetFunction random_coset_function(std::uint64_t p, int n, int max_terms, int max_level, std::uint64_t seed);

struct FourierCheckReport {
  int trials = 0;
  double max_involution_error = 0;
  double max_plancherel_error = 0;
};

/// Double transform and Plancherel over a seeded random corpus.
FourierCheckReport fourier_check(SpaceId s, std::uint64_t p, int trials, std::uint64_t seed, int max_terms = 8,
                                 int max_level = 3);

enum class Side { Primal, Dual };

struct CosetZeta {
  ComplexRational zeta;
  /// Present when every coefficient is exact.
  std::optional<RationalFunction> exact;
};

/// sum_j coeff_j * Z(term_j) where Z is the integral of |f|^lambda (f the
/// invariant, or the dual invariant on the dual side) as a function of
/// t = p^{-lambda}. Non-integral cosets are rescaled into Z_p^n.
CosetZeta zeta_of_cosetfn(SpaceId s, const CosetFunction& xi, Side side, CosetZetaCache& cache);
CosetZeta zeta_of_cosetfn(SpaceId s, const CosetFunction& xi, Side side, const CensusOptions& opt = {});

}  // namespace pvzeta
