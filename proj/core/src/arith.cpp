#include "pvzeta/arith.hpp"

#include <cmath>
#include <sstream>

namespace pvzeta {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsufficientCoefficients: return "InsufficientCoefficients";
    case ErrorCode::NoFit: return "NoFit";
    case ErrorCode::HoldoutMismatch: return "HoldoutMismatch";
    case ErrorCode::NonInvertibleElement: return "NonInvertibleElement";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::WrongSpace: return "WrongSpace";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::FieldRequired: return "FieldRequired";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::PrecisionOverflow: return "PrecisionOverflow";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::EmptyTestFunction: return "EmptyTestFunction";
    case ErrorCode::InconsistentGamma: return "InconsistentGamma";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ConvergenceRangeViolated: return "ConvergenceRangeViolated";
    case ErrorCode::MaxEvalsExceeded: return "MaxEvalsExceeded";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::UnsupportedSchema: return "UnsupportedSchema";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

BigInt ipow(long p, unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
  return r;
}

BigRational rpow(long p, int e) {
  if (e >= 0) return BigRational(ipow(p, static_cast<unsigned>(e)));
  return BigRational(BigInt(1), ipow(p, static_cast<unsigned>(-e)));
}

BigRational rpow(const BigRational& base, int e) {
  BigInt n, d;
  unsigned a = static_cast<unsigned>(e < 0 ? -e : e);
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), a);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), a);
  BigRational r = e >= 0 ? BigRational(n, d) : BigRational(d, n);
  r.canonicalize();
  return r;
}

std::uint64_t upow(std::uint64_t p, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > (std::uint64_t(1) << 62) / p) fail(ErrorCode::PrecisionOverflow, "p^k exceeds 2^62");
    r *= p;
  }
  return r;
}

int vp(const BigInt& x, long p) {
  if (x == 0) return kInfiniteValuation;
  BigInt y = x;
  int v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

int vp(const BigRational& x, long p) {
  if (x == 0) return kInfiniteValuation;
  return vp(BigInt(x.get_num()), p) - vp(BigInt(x.get_den()), p);
}

int vp(std::uint64_t x, std::uint64_t p) {
  if (x == 0) return kInfiniteValuation;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

BigRational parse_rational(const std::string& s) {
  BigRational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    fail(ErrorCode::InvalidArgument, "not a rational: '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const BigRational& q) { return q.get_str(10); }

bool is_finite(const ComplexValue& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

int Valuation::value() const {
  if (at_least_) fail(ErrorCode::InvalidArgument, "valuation is AtLeastK");
  return v_;
}

ResidueRing::ResidueRing(std::uint64_t p, unsigned k) : p_(p), k_(k) {
  require(is_prime(p), ErrorCode::InvalidArgument, "modulus base must be prime");
  require(k >= 1, ErrorCode::InvalidArgument, "level must be >= 1");
  mod_ = upow(p, k);
}

std::uint64_t ResidueRing::reduce(const BigInt& x) const {
  BigInt r = x % BigInt(static_cast<unsigned long>(mod_));
  if (r < 0) r += static_cast<unsigned long>(mod_);
  return r.get_ui();
}

std::uint64_t ResidueRing::reduce(std::int64_t x) const {
  std::int64_t m = static_cast<std::int64_t>(mod_);
  std::int64_t r = x % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) fail(ErrorCode::NonInvertibleElement, "element is not a unit");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

Residue Residue::raw(const ResidueRing& ring, std::uint64_t v) {
  Residue r(ring, std::int64_t(0));
  r.v_ = v;
  return r;
}

Residue Residue::operator+(const Residue& o) const {
  std::uint64_t s = v_ + o.v_;
  if (s >= ring_.modulus()) s -= ring_.modulus();
  return raw(ring_, s);
}

Residue Residue::operator-(const Residue& o) const {
  return raw(ring_, v_ >= o.v_ ? v_ - o.v_ : v_ + ring_.modulus() - o.v_);
}

Residue Residue::operator*(const Residue& o) const { return raw(ring_, mulmod(v_, o.v_, ring_.modulus())); }

Residue Residue::operator-() const { return raw(ring_, v_ == 0 ? 0 : ring_.modulus() - v_); }

Residue Residue::inverse() const {
  if (!is_unit()) fail(ErrorCode::NonInvertibleElement, "residue is not a unit");
  return raw(ring_, invmod(v_, ring_.modulus()));
}

Valuation valuation(const Residue& x) {
  if (x.value() == 0) return Valuation::at_least(static_cast<int>(x.ring().k()));
  return Valuation::exact(vp(x.value(), x.ring().p()));
}

int legendre(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  std::uint64_t e = powmod(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>((p - 1) / 2),
                           static_cast<std::uint64_t>(p));
  return e == 1 ? 1 : -1;
}

BigInt squarefree_class(const BigRational& x) {
  require(x != 0, ErrorCode::InvalidArgument, "square class of zero");
  // num/den ~ num*den modulo squares.
  BigInt n = x.get_num() * x.get_den();
  int sign = n < 0 ? -1 : 1;
  if (n < 0) n = -n;
  BigInt out = 1;
  for (unsigned long d = 2; BigInt(d) * d <= n; ++d) {
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
      ++e;
    }
    if (e % 2) out *= d;
  }
  out *= n;
  return sign * out;
}

}  // namespace pvzeta
