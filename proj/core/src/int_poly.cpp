#include "pvzeta/int_poly.hpp"

#include <algorithm>
#include <sstream>

namespace pvzeta {

IntPoly IntPoly::constant(int nvars, const BigInt& c) {
  IntPoly f(nvars);
  f.add_term(Monomial(static_cast<size_t>(nvars), 0), c);
  return f;
}

IntPoly IntPoly::variable(int nvars, int i) {
  require(i >= 0 && i < nvars, ErrorCode::InvalidArgument, "variable index out of range");
  IntPoly f(nvars);
  Monomial m(static_cast<size_t>(nvars), 0);
  m[i] = 1;
  f.add_term(m, BigInt(1));
  return f;
}

void IntPoly::add_term(const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int IntPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  IntPoly r = *this;
  r.nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
  require(nvars_ == o.nvars_ || terms_.empty() || o.terms_.empty(), ErrorCode::InvalidArgument,
          "variable count mismatch");
  IntPoly r(std::max(nvars_, o.nvars_));
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m(m1.size());
      for (size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
      r.add_term(m, c1 * c2);
    }
  }
  return r;
}

IntPoly IntPoly::operator*(const BigInt& c) const {
  IntPoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [m, a] : terms_) r.terms_.emplace(m, a * c);
  return r;
}

IntPoly IntPoly::substitute_affine(const std::vector<BigInt>& center, const BigInt& scale) const {
  require(static_cast<int>(center.size()) == nvars_, ErrorCode::InvalidArgument, "center dimension mismatch");
  // Powers of each linear form c_i + s y_i, built on demand.
  std::vector<std::vector<IntPoly>> pw(static_cast<size_t>(nvars_));
  auto power = [&](int i, int e) -> const IntPoly& {
    auto& v = pw[i];
    if (v.empty()) v.push_back(constant(nvars_, BigInt(1)));
    IntPoly lin = constant(nvars_, center[i]) + variable(nvars_, i) * scale;
    while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * lin);
    return v[e];
  };
  IntPoly r(nvars_);
  for (const auto& [m, c] : terms_) {
    IntPoly t = constant(nvars_, c);
    for (int i = 0; i < nvars_; ++i)
      if (m[i] > 0) t *= power(i, m[i]);
    r += t;
  }
  return r;
}

IntPoly IntPoly::derivative(int i) const {
  require(i >= 0 && i < nvars_, ErrorCode::InvalidArgument, "variable index out of range");
  IntPoly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    --d[i];
    r.add_term(d, c * m[i]);
  }
  return r;
}

int IntPoly::content_valuation(long p) const {
  int v = kInfiniteValuation;
  for (const auto& [m, c] : terms_) v = std::min(v, vp(c, p));
  return v;
}

IntPoly IntPoly::divide_exact(const BigInt& d) const {
  IntPoly r(nvars_);
  for (const auto& [m, c] : terms_) {
    require(mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()) != 0, ErrorCode::InvalidArgument,
            "coefficient not divisible");
    BigInt q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    r.terms_.emplace(m, q);
  }
  return r;
}

BigInt IntPoly::eval(const std::vector<BigInt>& x) const {
  BigInt acc = 0;
  for (const auto& [m, c] : terms_) {
    BigInt t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e) t *= x[i];
    acc += t;
  }
  return acc;
}

BigRational IntPoly::eval(const std::vector<BigRational>& x) const {
  BigRational acc = 0;
  for (const auto& [m, c] : terms_) {
    BigRational t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e) t *= x[i];
    acc += t;
  }
  return acc;
}

std::string IntPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    os << (first ? "" : (c < 0 ? " - " : " + ")) << (first && c < 0 ? "-" : "");
    first = false;
    BigInt a = abs(c);
    bool unit = a == 1;
    bool any = false;
    if (!unit) os << a.get_str();
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      os << (unit && !any ? "" : "*") << "x" << i;
      if (m[i] > 1) os << "^" << m[i];
      any = true;
    }
    if (unit && !any) os << "1";
  }
  return os.str();
}

CompiledPoly::CompiledPoly(const IntPoly& f, std::uint64_t modulus)
    : mod_(modulus), mask_(modulus - 1), pow2_((modulus & (modulus - 1)) == 0), nvars_(f.nvars()) {
  require(modulus >= 1 && modulus <= (std::uint64_t(1) << 32), ErrorCode::PrecisionOverflow,
          "compiled modulus must be <= 2^32");
  for (const auto& [m, c] : f.terms()) {
    BigInt r = c % BigInt(static_cast<unsigned long>(modulus));
    if (r < 0) r += static_cast<unsigned long>(modulus);
    if (r == 0) continue;
    coef_.push_back(r.get_ui());
    int len = 0;
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e) {
        vars_.push_back(i);
        ++len;
      }
    len_.push_back(len);
  }
}

}  // namespace pvzeta
