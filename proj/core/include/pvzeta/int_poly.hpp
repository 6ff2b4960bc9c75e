#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pvzeta/arith.hpp"

namespace pvzeta {

/// Sparse multivariate polynomial with integer coefficients.
class IntPoly {
 public:
  using Monomial = std::vector<int>;

  explicit IntPoly(int nvars = 0) : nvars_(nvars) {}
  static IntPoly constant(int nvars, const BigInt& c);
  static IntPoly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  const std::map<Monomial, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator-() const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const BigInt& c) const;
  IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
  IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
  IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }
  bool operator==(const IntPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  /// f(center + scale * y).
  IntPoly derivative(int i) const;
  IntPoly substitute_affine(const std::vector<BigInt>& center, const BigInt& scale) const;
  /// Minimum p-adic valuation of the coefficients; kInfiniteValuation for 0.
  int content_valuation(long p) const;
  /// Exact division of every coefficient by d.
  IntPoly divide_exact(const BigInt& d) const;

  BigInt eval(const std::vector<BigInt>& x) const;
  BigRational eval(const std::vector<BigRational>& x) const;

  std::string str() const;

 private:
  void add_term(const Monomial& m, const BigInt& c);
  int nvars_;
  std::map<Monomial, BigInt> terms_;
};

/// IntPoly reduced modulo M <= 2^32 as a flat straight-line evaluator.
/// Inputs are residues already reduced mod M.
class CompiledPoly {
 public:
  CompiledPoly(const IntPoly& f, std::uint64_t modulus);

  std::uint64_t modulus() const { return mod_; }
  int nvars() const { return nvars_; }

  std::uint64_t eval(const std::uint32_t* x) const {
    return pow2_ ? eval_impl<true>(x) : eval_impl<false>(x);
  }

 private:
  template <bool Pow2>
  std::uint64_t eval_impl(const std::uint32_t* x) const {
    std::uint64_t acc = 0;
    size_t pos = 0;
    for (size_t t = 0; t < coef_.size(); ++t) {
      std::uint64_t m = coef_[t];
      for (int j = 0; j < len_[t]; ++j) {
        m *= x[vars_[pos++]];
        m = Pow2 ? (m & mask_) : (m % mod_);
      }
      acc += m;
    }
    return Pow2 ? (acc & mask_) : (acc % mod_);
  }

  std::uint64_t mod_, mask_;
  bool pow2_;
  int nvars_;
  std::vector<std::uint64_t> coef_;
  std::vector<int> len_;
  std::vector<int> vars_;
};

}  // namespace pvzeta
