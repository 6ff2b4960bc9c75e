#include "pvzeta/polynomial.hpp"

#include <cstdio>
#include <sstream>

namespace pvzeta {

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  require(!b.is_zero(), ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<BigRational> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<BigRational> q(static_cast<size_t>(a.degree() - db) + 1, BigRational(0));
  BigRational lb = b.lead();
  for (int i = a.degree(); i >= db; --i) {
    BigRational f = r[i] / lb;
    q[i - db] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b[j];
  }
  r.resize(static_cast<size_t>(db));
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly make_monic(const QPoly& a) {
  if (a.is_zero()) return a;
  return a * (BigRational(1) / a.lead());
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

CPoly to_complex(const QPoly& a) {
  std::vector<ComplexValue> c;
  for (const auto& q : a.coeffs()) c.emplace_back(q.get_d(), 0.0);
  return CPoly(std::move(c));
}

namespace {

std::vector<BigInt> divisors(BigInt n) {
  if (n < 0) n = -n;
  std::vector<BigInt> out;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace

std::vector<BigRational> rational_roots(const QPoly& a) {
  std::vector<BigRational> roots;
  if (a.degree() < 1) return roots;
  QPoly p = a;
  while (p.degree() >= 1 && p[0] == 0) {
    roots.emplace_back(0);
    p = divmod(p, QPoly{BigRational(0), BigRational(1)}).first;
  }
  if (p.degree() < 1) return roots;
  // Clear denominators to get integer coefficients.
  BigInt l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  BigInt c0 = BigInt(p[0] * l), cn = BigInt(p.lead() * l);
  // Candidate divisors are bounded by coefficient sizes, which are small for
  // the zeta denominators handled here.
  auto num_divs = divisors(c0), den_divs = divisors(cn);
  for (const auto& u : num_divs) {
    for (const auto& v : den_divs) {
      for (int s : {1, -1}) {
        BigRational r(s * u, v);
        r.canonicalize();
        while (p.degree() >= 1 && p.eval(r) == 0) {
          roots.push_back(r);
          p = divmod(p, QPoly{-r, BigRational(1)}).first;
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string format_poly(const QPoly& a, const std::string& var) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = a.degree(); i >= 0; --i) {
    BigRational c = a[i];
    if (c == 0) continue;
    bool neg = c < 0;
    if (neg) c = -c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    bool unit = c == 1;
    if (!unit || i == 0) os << to_string(c);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string format_poly(const CPoly& a, const std::string& var) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  char buf[96];
  for (int i = a.degree(); i >= 0; --i) {
    ComplexValue c = a[i];
    if (c == ComplexValue(0)) continue;
    if (!first) os << " + ";
    first = false;
    if (c.imag() == 0.0)
      std::snprintf(buf, sizeof buf, "%.17g", c.real());
    else
      std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
    os << buf;
    if (i > 0) os << "*" << var << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

}  // namespace pvzeta
