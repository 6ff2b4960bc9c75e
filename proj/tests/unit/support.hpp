#pragma once

#include <vector>

#include "pvzeta/arith.hpp"
#include "pvzeta/catalog.hpp"
#include "pvzeta/int_poly.hpp"

namespace pvtest {

using pvzeta::BigInt;
using pvzeta::BigRational;

inline BigRational Q(long a, long b = 1) {
  BigRational r(a, b);
  r.canonicalize();
  return r;
}

inline std::vector<BigRational> pt(std::initializer_list<long> xs) {
  std::vector<BigRational> out;
  for (long x : xs) out.push_back(Q(x));
  return out;
}

// Plain census by full enumeration of (Z/p^M)^n with bignum evaluation.
// Deliberately shares no code with the census module.
inline std::vector<BigRational> brute_census(const pvzeta::IntPoly& f, long p, int m_max) {
  int n = f.nvars();
  int M = m_max + 1;
  long mod = 1;
  for (int i = 0; i < M; ++i) mod *= p;
  std::vector<long> hits(static_cast<size_t>(M), 0);
  std::vector<BigInt> x(static_cast<size_t>(n), BigInt(0));
  std::vector<long> idx(static_cast<size_t>(n), 0);
  BigInt big_mod(mod);
  while (true) {
    for (int i = 0; i < n; ++i) x[i] = idx[i];
    BigInt v = f.eval(x);
    v %= big_mod;
    if (v < 0) v += big_mod;
    if (v != 0) {
      int k = 0;
      while (v % p == 0) {
        v /= p;
        ++k;
      }
      ++hits[k];
    }
    int i = n - 1;
    while (i >= 0 && ++idx[i] == mod) idx[i--] = 0;
    if (i < 0) break;
  }
  BigRational vol(1);
  for (int i = 0; i < n * M; ++i) vol *= p;
  std::vector<BigRational> c;
  for (long h : hits) {
    BigRational r = BigRational(h) / vol;
    r.canonicalize();
    c.push_back(r);
  }
  return c;
}

}  // namespace pvtest
