#include "pvzeta/rational_function.hpp"

#include <cmath>

namespace pvzeta {

RationalFunction::RationalFunction(QPoly num, QPoly den) {
  require(!den.is_zero(), ErrorCode::InvalidArgument, "zero denominator");
  if (num.is_zero()) {
    num_ = QPoly();
    den_ = QPoly::constant(BigRational(1));
    return;
  }
  QPoly g = gcd(num, den);
  if (g.degree() > 0) {
    num = divmod(num, g).first;
    den = divmod(den, g).first;
  }
  BigRational l = den.lead();
  num_ = num * (BigRational(1) / l);
  den_ = den * (BigRational(1) / l);
}

RationalFunction RationalFunction::power_of_t(int k) {
  QPoly one = QPoly::constant(BigRational(1));
  if (k >= 0) return RationalFunction(QPoly::monomial(BigRational(1), k), one);
  return RationalFunction(one, QPoly::monomial(BigRational(1), -k));
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  require(!o.is_zero(), ErrorCode::InvalidArgument, "division by zero rational function");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::operator*(const BigRational& c) const { return RationalFunction(num_ * c, den_); }

RationalFunction RationalFunction::reciprocal_arg(const BigRational& a) const {
  int d = std::max(num_.degree(), den_.degree());
  return RationalFunction(num_.reciprocal(a, d), den_.reciprocal(a, d));
}

RationalFunction RationalFunction::scale_arg(const BigRational& a) const {
  return RationalFunction(num_.scale_arg(a), den_.scale_arg(a));
}

ComplexValue RationalFunction::eval(const ComplexValue& t) const { return num_.eval(t) / den_.eval(t); }

BigRational RationalFunction::eval(const BigRational& t) const {
  BigRational d = den_.eval(t);
  require(d != 0, ErrorCode::InvalidArgument, "evaluation at a pole");
  return num_.eval(t) / d;
}

std::pair<QPoly, QPoly> RationalFunction::display_form() const {
  BigRational c0 = den_[0];
  if (c0 == 0) return {num_, den_};
  BigRational s = BigRational(1) / c0;
  return {num_ * s, den_ * s};
}

std::string RationalFunction::str(const std::string& var) const {
  auto [n, d] = display_form();
  if (d.degree() == 0 && d[0] == 1) return "(" + format_poly(n, var) + ")";
  return "(" + format_poly(n, var) + ")/(" + format_poly(d, var) + ")";
}

std::vector<BigRational> series_expand(const RationalFunction& r, int m) {
  require(r.is_regular_at_zero(), ErrorCode::InvalidArgument, "series expansion needs D(0) != 0");
  const QPoly& n = r.num();
  const QPoly& d = r.den();
  std::vector<BigRational> c(static_cast<size_t>(m) + 1);
  BigRational inv0 = BigRational(1) / d[0];
  for (int i = 0; i <= m; ++i) {
    BigRational acc = n[i];
    for (int j = 1; j <= std::min(i, d.degree()); ++j) acc -= d[j] * c[i - j];
    c[i] = acc * inv0;
  }
  return c;
}

std::optional<std::vector<BigRational>> solve_linear(std::vector<std::vector<BigRational>> a,
                                                     std::vector<BigRational> b) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    BigRational inv = BigRational(1) / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      BigRational f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<BigRational> x(cols, BigRational(0));
  for (size_t i = 0; i < r; ++i) x[static_cast<size_t>(pivot_col[i])] = b[i];
  return x;
}

namespace {

// Tries a fixed (a, b): denominator 1 + q_1 t + ... + q_b t^b with
// sum_j q_j c_{i-j} = 0 for every i in (a, N).
std::optional<RationalFunction> try_degrees(const std::vector<BigRational>& c, int a, int b) {
  int n = static_cast<int>(c.size());
  auto at = [&](int i) { return i >= 0 ? c[i] : BigRational(0); };
  std::vector<BigRational> q(static_cast<size_t>(b) + 1, BigRational(0));
  q[0] = 1;
  if (b > 0) {
    std::vector<std::vector<BigRational>> m;
    std::vector<BigRational> rhs;
    for (int i = a + 1; i < n; ++i) {
      std::vector<BigRational> row(static_cast<size_t>(b));
      for (int j = 1; j <= b; ++j) row[j - 1] = at(i - j);
      m.push_back(std::move(row));
      rhs.push_back(-c[i]);
    }
    auto sol = solve_linear(std::move(m), std::move(rhs));
    if (!sol) return std::nullopt;
    for (int j = 1; j <= b; ++j) q[j] = (*sol)[j - 1];
  } else {
    for (int i = a + 1; i < n; ++i)
      if (c[i] != 0) return std::nullopt;
  }
  std::vector<BigRational> num(static_cast<size_t>(a) + 1, BigRational(0));
  for (int i = 0; i <= a && i < n; ++i) {
    BigRational acc = 0;
    for (int j = 0; j <= b; ++j) acc += q[j] * at(i - j);
    num[i] = acc;
  }
  return RationalFunction(QPoly(std::move(num)), QPoly(std::move(q)));
}

}  // namespace

std::optional<RationalFunction> pade_reconstruct(const std::vector<BigRational>& coeffs, int max_num_deg,
                                                 int max_den_deg, int holdout) {
  require(max_num_deg >= 0 && max_den_deg >= 0 && holdout >= 0, ErrorCode::InvalidArgument,
          "degrees and holdout must be non-negative");
  if (static_cast<int>(coeffs.size()) < max_num_deg + max_den_deg + 1 + holdout)
    fail(ErrorCode::InsufficientCoefficients, "need " + std::to_string(max_num_deg + max_den_deg + 1 + holdout) +
                                                  " coefficients, have " + std::to_string(coeffs.size()));
  for (int total = 0; total <= max_num_deg + max_den_deg; ++total) {
    for (int b = std::max(0, total - max_num_deg); b <= std::min(total, max_den_deg); ++b) {
      auto r = try_degrees(coeffs, total - b, b);
      if (r) return r;
    }
  }
  return std::nullopt;
}

ComplexRational ComplexRational::from(const RationalFunction& r, int shift) {
  return ComplexRational{to_complex(r.num()), r.den(), shift};
}

ComplexRational ComplexRational::operator+(const ComplexRational& o) const {
  if (num.is_zero()) return o;
  if (o.num.is_zero()) return *this;
  // Bring both to the smaller shift, then over the lcm of denominators.
  int s = std::min(shift, o.shift);
  CPoly a = num.shift_up(shift - s), b = o.num.shift_up(o.shift - s);
  if (den == o.den) return ComplexRational{a + b, den, s};
  QPoly g = gcd(den, o.den);
  QPoly fa = divmod(o.den, g).first, fb = divmod(den, g).first;
  return ComplexRational{a * to_complex(fa) + b * to_complex(fb), den * fa, s};
}

ComplexRational ComplexRational::operator*(const ComplexValue& c) const {
  return ComplexRational{num * c, den, shift};
}

ComplexValue ComplexRational::eval(const ComplexValue& t) const {
  return num.eval(t) / den.eval(t) * std::pow(t, shift);
}

ComplexRational ComplexRational::normalized() const {
  if (shift >= 0) return ComplexRational{num.shift_up(shift), den, 0};
  return ComplexRational{num, den.shift_up(-shift), 0};
}

std::string ComplexRational::str(const std::string& var) const {
  std::string s = "(" + format_poly(num, var) + ")/(" + format_poly(den, var) + ")";
  if (shift != 0) s = var + "^" + std::to_string(shift) + "*" + s;
  return s;
}

}  // namespace pvzeta
