#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pvzeta/polynomial.hpp"

namespace pvzeta {

/// Exact rational function N(t)/D(t) over Q in canonical form: gcd(N, D) = 1
/// and D monic. Two equal functions have identical fields.
///
/// Zeta integrals are regular at t = 0; quotients such as gamma factors need
/// not be, so regularity is checked where it matters (series_expand) rather
/// than in the constructor.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(QPoly::constant(BigRational(1))) {}
  RationalFunction(QPoly num, QPoly den);
  static RationalFunction constant(const BigRational& c) {
    return RationalFunction(QPoly::constant(c), QPoly::constant(BigRational(1)));
  }
  /// t^k for any integer k.
  static RationalFunction power_of_t(int k);

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_regular_at_zero() const { return den_[0] != 0; }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator*(const BigRational& c) const;
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// R(a / t).
  RationalFunction reciprocal_arg(const BigRational& a) const;
  /// R(a t).
  RationalFunction scale_arg(const BigRational& a) const;

  ComplexValue eval(const ComplexValue& t) const;
  BigRational eval(const BigRational& t) const;

  /// Numerator and denominator rescaled so that D(0) = 1 when D(0) != 0;
  /// the same function, easier to read.
  std::pair<QPoly, QPoly> display_form() const;
  std::string str(const std::string& var = "t") const;

 private:
  QPoly num_, den_;
};

/// First m + 1 Taylor coefficients at t = 0. Requires D(0) != 0.
std::vector<BigRational> series_expand(const RationalFunction& r, int m);

/// Minimal-degree rational function whose expansion matches every supplied
/// coefficient. Degrees are searched by total degree, then by lower
/// denominator degree. nullopt means no fit within the bounds.
/// Throws InsufficientCoefficients if there are fewer than
/// max_num_deg + max_den_deg + 1 + holdout coefficients.
std::optional<RationalFunction> pade_reconstruct(const std::vector<BigRational>& coeffs, int max_num_deg,
                                                 int max_den_deg, int holdout);

/// Solves A x = b exactly; nullopt if inconsistent. Free variables are set
/// to zero.
std::optional<std::vector<BigRational>> solve_linear(std::vector<std::vector<BigRational>> a,
                                                     std::vector<BigRational> b);

/// Rational function with complex numerator and exact denominator, times
/// t^shift. Produced when character values enter zeta integrals.
struct ComplexRational {
  CPoly num;
  QPoly den = QPoly::constant(BigRational(1));
  int shift = 0;

  static ComplexRational from(const RationalFunction& r, int shift = 0);
  ComplexRational operator+(const ComplexRational& o) const;
  ComplexRational operator*(const ComplexValue& c) const;
  ComplexValue eval(const ComplexValue& t) const;
  /// Folds the shift into num/den so that shift = 0.
  ComplexRational normalized() const;
  std::string str(const std::string& var = "t") const;
};

}  // namespace pvzeta
