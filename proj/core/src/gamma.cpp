#include "pvzeta/gamma.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "pvzeta/invariants.hpp"
#include "pvzeta/orbits.hpp"

namespace pvzeta {

namespace {

// C(a / t) for C = t^shift N / D.
ComplexRational reciprocal_arg(const ComplexRational& c, const BigRational& a) {
  int dn = std::max(c.num.degree(), 0), dd = std::max(c.den.degree(), 0);
  ComplexValue ac(a.get_d(), 0);
  CPoly num = c.num.reciprocal(ac, dn) * std::pow(ac, c.shift);
  return ComplexRational{num, c.den.reciprocal(a, dd), -c.shift - dn + dd};
}

// Denominator made monic.
ComplexRational monic(const ComplexRational& c) {
  if (c.den.is_zero()) return c;
  BigRational lead = c.den.lead();
  return ComplexRational{c.num * ComplexValue(1.0 / lead.get_d(), 0), c.den * (BigRational(1) / lead), c.shift};
}

// Divides out rational roots the numerator shares with the denominator.
ComplexRational cancel_common(ComplexRational c) {
  double scale = 0;
  for (int i = 0; i <= c.num.degree(); ++i) scale = std::max(scale, std::abs(c.num[i]));
  for (const auto& r : rational_roots(c.den)) {
    ComplexValue rc(r.get_d(), 0);
    while (c.num.degree() >= 1 && std::abs(c.num.eval(rc)) <= 1e-9 * scale * std::max(1.0, std::pow(std::abs(rc.real()), c.num.degree()))) {
      QPoly lin = QPoly::monomial(BigRational(1), 1) - QPoly::constant(r);
      auto [q, rem] = divmod(c.den, lin);
      if (!rem.is_zero()) break;
      // Synthetic division of the numerator by (t - r).
      std::vector<ComplexValue> out(static_cast<size_t>(c.num.degree()));
      ComplexValue carry(0, 0);
      for (int i = c.num.degree(); i >= 1; --i) {
        carry = c.num[i] + carry * rc;
        out[static_cast<size_t>(i - 1)] = carry;
      }
      c.num = CPoly(out);
      c.den = q;
    }
  }
  return c;
}

double cross_residual(const ComplexRational& x, const ComplexRational& y) {
  int s = std::min(x.shift, y.shift);
  CPoly a = (x.num * to_complex(y.den)).shift_up(x.shift - s);
  CPoly b = (y.num * to_complex(x.den)).shift_up(y.shift - s);
  double scale = 0, diff = 0;
  int deg = std::max(a.degree(), b.degree());
  for (int i = 0; i <= deg; ++i) {
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return scale == 0 ? diff : diff / scale;
}

// p^{lambda0}: lambda0 is a half-integer on every catalog space.
struct ArgScale {
  BigRational rational;  // p^{floor part}
  bool sqrt_p = false;
};

ArgScale half_density_scale(SpaceId s, long p) {
  BigRational l0 = density_shift(s);
  BigRational twice = l0 * 2;
  require(twice.get_den() == 1, ErrorCode::InvalidArgument, "density shift is not a half-integer");
  long k = twice.get_num().get_si();
  return ArgScale{rpow(p, static_cast<int>(k / 2)), k % 2 != 0};
}

// C(a t) with a = r sqrt(p)^{odd}; the denominator is kept rational by
// multiplying through by its conjugate under sqrt(p) -> -sqrt(p).
ComplexRational scale_arg(const ComplexRational& c, const ArgScale& a, long p) {
  ComplexValue ac(a.rational.get_d() * (a.sqrt_p ? std::sqrt(static_cast<double>(p)) : 1.0), 0);
  CPoly num = c.num.scale_arg(ac) * std::pow(ac, c.shift);
  if (!a.sqrt_p) return ComplexRational{num, c.den.scale_arg(a.rational), c.shift};
  // den(r sqrt(p) t) = E(t) + sqrt(p) t O(t) with E, O rational.
  std::vector<BigRational> e, o;
  BigRational pw(1);
  for (int i = 0; i <= c.den.degree(); ++i) {
    BigRational coef = c.den[i] * pw;
    // sqrt(p)^i = p^{i/2} (even) or p^{(i-1)/2} sqrt(p) (odd)
    BigRational sp = rpow(p, i / 2);
    if (i % 2 == 0) {
      if (e.size() <= static_cast<size_t>(i)) e.resize(static_cast<size_t>(i) + 1, BigRational(0));
      e[i] = coef * sp;
    } else {
      if (o.size() <= static_cast<size_t>(i - 1)) o.resize(static_cast<size_t>(i), BigRational(0));
      o[i - 1] = coef * sp;
    }
    pw *= a.rational;
  }
  QPoly E(e), O(o);
  QPoly t = QPoly::monomial(BigRational(1), 1);
  // (E + sqrt(p) t O)(E - sqrt(p) t O) = E^2 - p t^2 O^2.
  QPoly den = E * E - t * t * O * O * BigRational(p);
  CPoly conj = to_complex(E) - to_complex(t * O) * ComplexValue(std::sqrt(static_cast<double>(p)), 0);
  return ComplexRational{num * conj, den, c.shift};
}

}  // namespace

RationalFunction classical_gamma(SpaceId s, std::uint64_t p) {
  long lp = static_cast<long>(p);
  QPoly t = QPoly::monomial(BigRational(1), 1);
  QPoly one = QPoly::constant(BigRational(1));
  auto lin = [&](int e) { return one - t * rpow(lp, -e); };  // 1 - t/p^e
  switch (s) {
    case SpaceId::Tate: return RationalFunction(t * lin(1), t - one);
    case SpaceId::Matrix2:
      return RationalFunction(t * t * lin(1) * lin(2), (t - QPoly::constant(BigRational(lp))) * (t - one));
    case SpaceId::CubeSplit: break;
  }
  fail(ErrorCode::InvalidArgument, "no scalar gamma factor for cube-split");
}

GammaResult gamma_extract(SpaceId s, std::uint64_t p, const std::vector<CosetFunction>& tests,
                          const GammaOptions& opt) {
  require(is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  if (tests.empty()) fail(ErrorCode::EmptyTestFunction, "no test functions");
  // Several open orbits: gamma is a matrix there, see gamma_matrix_probe.
  if (s == SpaceId::CubeSplit) fail(ErrorCode::WrongSpace, "scalar gamma is defined for tate and matrix2 only");
  long lp = static_cast<long>(p);
  BigRational two_l0 = density_shift(s) * 2;
  BigRational a = rpow(lp, static_cast<int>(two_l0.get_num().get_si()));
  CosetZetaCache cache(s, p, opt.census);
  GammaResult out;
  out.space = s;
  out.p = p;
  std::vector<std::optional<RationalFunction>> exact;
  for (size_t j = 0; j < tests.size(); ++j) {
    const auto& xi = tests[j];
    require(xi.p == p, ErrorCode::InvalidArgument, "test function has a different prime");
    require(xi.is_exact(), ErrorCode::InvalidArgument, "test functions must have rational coefficients");
    auto z = zeta_of_cosetfn(s, xi, Side::Primal, cache);
    if (z.exact->is_zero())
      fail(ErrorCode::EmptyTestFunction, "test function " + std::to_string(j) + " has zero zeta integral");
    auto zd = zeta_of_cosetfn(s, fourier(xi, opt.psi, s), Side::Dual, cache);
    ComplexRational dual = reciprocal_arg(zd.zeta, a);
    ComplexRational g{dual.num * to_complex(z.exact->den()), dual.den * z.exact->num(), dual.shift};
    out.per_test.push_back(monic(g));
    if (zd.exact)
      exact.push_back(zd.exact->reciprocal_arg(a) / *z.exact);
    else
      exact.push_back(std::nullopt);
  }
  for (size_t j = 0; j < out.per_test.size(); ++j)
    for (size_t k = j + 1; k < out.per_test.size(); ++k)
      out.residual = std::max(out.residual, cross_residual(out.per_test[j], out.per_test[k]));
  for (const auto& e : exact) {
    if (!e) continue;
    if (!out.exact)
      out.exact = *e;
    else if (!(*out.exact == *e))
      fail(ErrorCode::InconsistentGamma, "exact gamma factors differ between test functions");
  }
  if (out.exact)
    for (const auto& g : out.per_test)
      out.residual = std::max(out.residual, cross_residual(g, ComplexRational::from(*out.exact)));
  out.confirmed = tests.size() >= 2;
  out.gamma = out.exact ? ComplexRational::from(*out.exact) : monic(cancel_common(out.per_test.front()));
  out.convention = "t = p^-lambda, gamma(t) = Zdual(p^" + to_string(density_shift(s) * 2) + "/t) / Z(t)";
  if (opt.half_density) {
    ArgScale sc = half_density_scale(s, lp);
    if (out.exact && !sc.sqrt_p)
      out.exact = out.exact->scale_arg(sc.rational);
    else
      out.exact.reset();
    out.gamma = monic(scale_arg(out.gamma, sc, lp));
    for (auto& g : out.per_test) g = monic(scale_arg(g, sc, lp));
    out.convention += "; reported in tau = p^-(lambda - lambda0), t = p^lambda0 tau";
  }
  if (out.residual > opt.tolerance)
    fail(ErrorCode::InconsistentGamma,
         "gamma factors disagree across test functions (residual " + std::to_string(out.residual) + ")");
  return out;
}

namespace {

int square_class(std::uint64_t u, std::uint64_t p) {
  return legendre(static_cast<std::int64_t>(u % p), static_cast<std::int64_t>(p)) == 1 ? 0 : 1;
}

std::uint64_t cube_invariant_mod(const std::vector<std::uint64_t>& y, std::uint64_t p) {
  Point<BigRational> x;
  for (auto v : y) x.emplace_back(BigInt(static_cast<unsigned long>(v)));
  BigRational P = eval_invariant(SpaceId::CubeSplit, x);
  BigInt r = P.get_num() % BigInt(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

}  // namespace

std::vector<std::vector<BigRational>> probe_fiber_measures(std::uint64_t p, const std::vector<std::uint64_t>& y,
                                                           int truncation, const CensusOptions& opt) {
  require(y.size() == 8, ErrorCode::InvalidArgument, "cube residues have 8 coordinates");
  long lp = static_cast<long>(p);
  std::vector<std::vector<BigRational>> mu(static_cast<size_t>(truncation) + 1,
                                           std::vector<BigRational>(2, BigRational(0)));
  std::uint64_t v = cube_invariant_mod(y, p);
  if (v != 0) {
    mu[0][square_class(v, p)] = 1;
    return mu;
  }
  std::vector<BigInt> center;
  for (auto c : y) center.emplace_back(static_cast<unsigned long>(c));
  IntPoly g = descriptor(SpaceId::CubeSplit).basic_invariant.substitute_affine(center, BigInt(lp));
  if (g.is_zero()) return mu;
  int e = g.content_valuation(lp);
  if (e > truncation) return mu;
  IntPoly h = g.divide_exact(ipow(lp, static_cast<unsigned>(e)));
  LevelCounts lc = count_branch_lift(h, p, truncation - e, opt);
  for (int m = 0; m <= truncation - e; ++m)
    for (std::uint64_t u = 1; u < p; ++u) {
      BigRational c(lc.counts[m][u], ipow(lp, static_cast<unsigned>(8 * (m + 1))));
      c.canonicalize();
      mu[m + e][square_class(u, p)] += c;
    }
  return mu;
}

std::vector<std::vector<std::uint64_t>> default_probe_tests(std::uint64_t p, int count, std::uint64_t seed,
                                                            bool both_signatures) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::uint64_t>> out;
  int want[2] = {both_signatures ? (count + 1) / 2 : count, both_signatures ? count / 2 : 0};
  int have[2] = {0, 0};
  for (int guard = 0; static_cast<int>(out.size()) < count; ++guard) {
    if (guard > 100000) fail(ErrorCode::SamplingExhausted, "could not draw open residues");
    std::vector<std::uint64_t> y(8);
    for (auto& c : y) c = rng() % p;
    std::uint64_t v = cube_invariant_mod(y, p);
    if (v == 0) continue;
    int k = square_class(v, p);
    if (have[k] >= want[k]) continue;
    ++have[k];
    out.push_back(std::move(y));
  }
  return out;
}

ProbeReport gamma_matrix_probe(std::uint64_t p, const std::vector<std::vector<std::uint64_t>>& tests,
                               const ProbeOptions& opt) {
  require(is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  if (p == 2) fail(ErrorCode::FieldRequired, "the probe needs odd p (square classes of units)");
  require(opt.truncation >= 0, ErrorCode::InvalidArgument, "truncation must be >= 0");
  constexpr int K = 2, S = 4;
  if (static_cast<int>(tests.size()) < K * K + 2)
    fail(ErrorCode::InvalidArgument, "need at least " + std::to_string(K * K + 2) + " test functions");
  ProbeReport rep;
  rep.p = p;
  rep.tests = tests;
  rep.signatures = {"square", "nonsquare"};
  rep.dual_strata = {"even/square", "even/nonsquare", "odd/square", "odd/nonsquare"};

  int T = static_cast<int>(tests.size());
  double vol = std::pow(static_cast<double>(p), -8.0);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(T, K);
  for (int j = 0; j < T; ++j) {
    require(tests[j].size() == 8, ErrorCode::InvalidArgument, "cube residues have 8 coordinates");
    std::uint64_t v = cube_invariant_mod(tests[j], p);
    require(v != 0, ErrorCode::InvalidArgument, "test coset is not inside the open set");
    A(j, square_class(v, p)) = vol;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  auto sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-12 * sv(0)) ++rank;
  if (rank < K) fail(ErrorCode::RankDeficient, "primal integral matrix has rank " + std::to_string(rank));

  // Fibre measures depend only on the G(F_p)-orbit of y; boundary orbits are
  // computed once on the label's representative.
  std::uint64_t count = upow(p, 8);
  ResidueRing field(p, 1);
  std::map<std::string, std::vector<std::vector<double>>> by_label;
  std::vector<const std::vector<std::vector<double>>*> fibre(count);
  std::vector<double> tail(count);
  std::vector<std::uint64_t> y(8);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t r = idx;
    for (int i = 7; i >= 0; --i) {
      y[i] = r % p;
      r /= p;
    }
    Point<Residue> yr;
    for (auto c : y) yr.emplace_back(field, static_cast<std::int64_t>(c));
    OrbitLabel lab = classify(yr);
    std::string key = lab.str();
    auto it = by_label.find(key);
    if (it == by_label.end()) {
      std::vector<std::uint64_t> rep_y(y);
      if (lab.tag != OrbitTag::Open) {
        auto b = boundary_representative(lab.tag);
        for (int i = 0; i < 8; ++i) rep_y[i] = b[i].get_num().get_ui();
      }
      auto mu = probe_fiber_measures(p, rep_y, opt.truncation, opt.census);
      std::vector<std::vector<double>> md(mu.size(), std::vector<double>(2));
      for (size_t m = 0; m < mu.size(); ++m)
        for (int c = 0; c < 2; ++c) md[m][c] = mu[m][c].get_d();
      it = by_label.emplace(key, std::move(md)).first;
    }
    fibre[idx] = &it->second;
    double s = 0;
    for (const auto& row : it->second) s += row[0] + row[1];
    tail[idx] = std::max(0.0, 1.0 - s);
  }

  // Additive character values psi(<Y, c>/p) via the pairing permutation.
  const auto& perm = descriptor(SpaceId::CubeSplit).pairing_perm;
  std::vector<ComplexValue> w(p);
  for (std::uint64_t k = 0; k < p; ++k) w[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / static_cast<double>(p));

  for (const auto& ep : opt.dual_exponents) {
    ProbeSample smp;
    smp.exponent = ep;
    if (ep.real() <= 0) {
      smp.skipped = true;
      smp.warning = "dual exponent outside the convergent range; sample skipped";
      rep.samples.push_back(smp);
      continue;
    }
    double logp = std::log(static_cast<double>(p));
    std::vector<ComplexValue> decay(static_cast<size_t>(opt.truncation) + 1);
    for (int m = 0; m <= opt.truncation; ++m) decay[m] = std::exp(-static_cast<double>(m) * ep * logp);
    ComplexValue pref = vol * std::exp(4.0 * ep * logp);
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(T, S);
    double tail_sum = 0;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t r = idx;
      for (int i = 7; i >= 0; --i) {
        y[i] = r % p;
        r /= p;
      }
      ComplexValue M[S] = {};
      const auto& mu = *fibre[idx];
      for (int m = 0; m <= opt.truncation; ++m)
        for (int c = 0; c < 2; ++c) M[(m % 2) * 2 + c] += mu[m][c] * decay[m];
      tail_sum += tail[idx];
      for (int j = 0; j < T; ++j) {
        std::uint64_t dot = 0;
        for (int k = 0; k < 8; ++k) dot += y[k] * tests[j][perm[k]];
        ComplexValue ch = w[dot % p];
        for (int i = 0; i < S; ++i) B(j, i) += ch * M[i];
      }
    }
    B *= pref;
    smp.tail_bound = std::abs(pref) * tail_sum * std::exp(-(opt.truncation + 1) * ep.real() * logp);
    auto cod = A.completeOrthogonalDecomposition();
    smp.gamma.assign(S, std::vector<ComplexValue>(K));
    for (int i = 0; i < S; ++i) {
      Eigen::VectorXcd b = B.col(i);
      Eigen::VectorXcd g = cod.solve(b);
      double scale = b.cwiseAbs().maxCoeff();
      double res = (A * g - b).cwiseAbs().maxCoeff();
      smp.residual = std::max(smp.residual, scale > 0 ? res / scale : res);
      for (int k = 0; k < K; ++k) smp.gamma[i][k] = g(k);
    }
    rep.max_residual = std::max(rep.max_residual, smp.residual);
    rep.samples.push_back(std::move(smp));
  }
  return rep;
}

}  // namespace pvzeta
