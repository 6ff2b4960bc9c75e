#pragma once

#include <gmpxx.h>

#include <climits>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "pvzeta/error.hpp"

namespace pvzeta {

using BigInt = mpz_class;
using BigRational = mpq_class;
using ComplexValue = std::complex<double>;

bool is_prime(std::uint64_t n);

/// p^e as an exact integer.
BigInt ipow(long p, unsigned e);
/// p^e for possibly negative e.
BigRational rpow(long p, int e);
BigRational rpow(const BigRational& base, int e);

/// p^e in 64 bits; throws PrecisionOverflow above 2^62.
std::uint64_t upow(std::uint64_t p, unsigned e);

constexpr int kInfiniteValuation = INT_MAX;

/// p-adic valuation of a nonzero integer; kInfiniteValuation for 0.
int vp(const BigInt& x, long p);
/// p-adic valuation of a rational, kInfiniteValuation for 0.
int vp(const BigRational& x, long p);
int vp(std::uint64_t x, std::uint64_t p);

BigRational parse_rational(const std::string& s);
std::string to_string(const BigRational& q);

/// Finite check used before storing floating results.
bool is_finite(const ComplexValue& z);

/// Result of a truncated valuation: either an exact level < k, or the
/// marker meaning the residue vanishes mod p^k.
class Valuation {
 public:
  static Valuation exact(int v) { return Valuation(v, false); }
  static Valuation at_least(int k) { return Valuation(k, true); }

  bool is_at_least_k() const { return at_least_; }
  /// Exact level; throws if the marker is set.
  int value() const;
  /// k when the marker is set.
  int bound() const { return v_; }

  bool operator==(const Valuation&) const = default;

 private:
  Valuation(int v, bool a) : v_(v), at_least_(a) {}
  int v_;
  bool at_least_;
};

/// The ring Z/p^k with p^k < 2^62.
class ResidueRing {
 public:
  ResidueRing(std::uint64_t p, unsigned k);

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t modulus() const { return mod_; }
  bool is_field() const { return k_ == 1; }

  std::uint64_t reduce(const BigInt& x) const;
  std::uint64_t reduce(std::int64_t x) const;

  bool operator==(const ResidueRing& o) const { return p_ == o.p_ && k_ == o.k_; }

 private:
  std::uint64_t p_;
  unsigned k_;
  std::uint64_t mod_;
};

class Residue {
 public:
  Residue(const ResidueRing& ring, std::int64_t x) : ring_(ring), v_(ring.reduce(x)) {}
  Residue(const ResidueRing& ring, const BigInt& x) : ring_(ring), v_(ring.reduce(x)) {}

  const ResidueRing& ring() const { return ring_; }
  std::uint64_t value() const { return v_; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  bool operator==(const Residue& o) const { return ring_ == o.ring_ && v_ == o.v_; }

  bool is_unit() const { return v_ % ring_.p() != 0; }
  /// Inverse of a unit; NonInvertibleElement otherwise.
  Residue inverse() const;

 private:
  static Residue raw(const ResidueRing& ring, std::uint64_t v);
  ResidueRing ring_;
  std::uint64_t v_;
};

Valuation valuation(const Residue& x);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Inverse of a mod m, requires gcd(a, m) = 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Legendre symbol (a/p) for odd prime p, values -1, 0, 1.
int legendre(std::int64_t a, std::int64_t p);

/// Squarefree part with sign: the canonical representative of the class of
/// a nonzero rational in Q^x / (Q^x)^2. Uses trial division.
BigInt squarefree_class(const BigRational& x);

}  // namespace pvzeta
