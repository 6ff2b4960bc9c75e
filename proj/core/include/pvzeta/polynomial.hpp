#pragma once

#include <algorithm>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "pvzeta/arith.hpp"

namespace pvzeta {

template <class U, class T>
U scalar_cast(const T& x) {
  if constexpr (std::is_same_v<T, BigRational> && !std::is_same_v<U, BigRational>)
    return U(x.get_d());
  else
    return U(x);
}

/// Dense univariate polynomial, coefficients stored low degree first with no
/// trailing zeros. The zero polynomial has an empty coefficient vector.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
  Poly(std::initializer_list<T> c) : c_(c) { trim(); }
  static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
  static Poly monomial(const T& a, int deg) {
    std::vector<T> c(static_cast<size_t>(deg) + 1, T(0));
    c.back() = a;
    return Poly(std::move(c));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : T(0); }
  T lead() const { return c_.empty() ? T(0) : c_.back(); }

  Poly operator+(const Poly& o) const {
    std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
  }
  Poly operator-() const {
    std::vector<T> r(c_);
    for (auto& x : r) x = -x;
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<T> r(c_.size() + o.c_.size() - 1, T(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
  }
  Poly operator*(const T& a) const {
    std::vector<T> r(c_);
    for (auto& x : r) x *= a;
    return Poly(std::move(r));
  }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  template <class U>
  U eval(const U& x) const {
    U acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + scalar_cast<U>(c_[i]);
    return acc;
  }

  /// p(a t) for a scalar a.
  Poly scale_arg(const T& a) const {
    std::vector<T> r(c_);
    T pw(1);
    for (auto& x : r) {
      x *= pw;
      pw *= a;
    }
    return Poly(std::move(r));
  }

  /// t^d p(a / t) where d >= degree.
  Poly reciprocal(const T& a, int d) const {
    std::vector<T> r(static_cast<size_t>(d) + 1, T(0));
    T pw(1);
    for (size_t i = 0; i < c_.size(); ++i) {
      r[static_cast<size_t>(d) - i] = c_[i] * pw;
      pw *= a;
    }
    return Poly(std::move(r));
  }

  Poly shift_up(int k) const {
    if (is_zero()) return Poly();
    std::vector<T> r(static_cast<size_t>(k), T(0));
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

using QPoly = Poly<BigRational>;
using CPoly = Poly<ComplexValue>;

/// Euclidean division over Q. Throws InvalidArgument on division by zero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly make_monic(const QPoly& a);
CPoly to_complex(const QPoly& a);

/// Rational roots of a polynomial with rational coefficients, with
/// multiplicity, sorted ascending.
std::vector<BigRational> rational_roots(const QPoly& a);

/// Human-readable rendering in the variable `var`, highest degree first.
std::string format_poly(const QPoly& a, const std::string& var = "t");
std::string format_poly(const CPoly& a, const std::string& var = "t");

}  // namespace pvzeta
