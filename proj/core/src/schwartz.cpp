#include "pvzeta/schwartz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace pvzeta {

CosetFunction CosetFunction::indicator(std::uint64_t p, std::vector<BigRational> center, int level) {
  CosetFunction f;
  f.p = p;
  f.n = static_cast<int>(center.size());
  f.terms.push_back(CosetTerm{std::move(center), level, {1.0, 0.0}, BigRational(1)});
  return f;
}

bool CosetFunction::is_exact() const {
  return std::all_of(terms.begin(), terms.end(), [](const CosetTerm& t) { return t.exact.has_value(); });
}

std::string CosetFunction::str() const {
  std::ostringstream os;
  if (terms.empty()) return "0";
  for (size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (i) os << " + ";
    if (t.exact)
      os << to_string(*t.exact);
    else
      os << "(" << t.coeff.real() << (t.coeff.imag() < 0 ? "" : "+") << t.coeff.imag() << "i)";
    os << "*1[(";
    for (size_t k = 0; k < t.center.size(); ++k) os << (k ? "," : "") << to_string(t.center[k]);
    os << ")+" << p << "^" << t.level << "]";
  }
  return os.str();
}

CosetFunction combine(const ComplexValue& a, const CosetFunction& xi, const ComplexValue& b,
                      const CosetFunction& eta) {
  require(xi.p == eta.p && xi.n == eta.n, ErrorCode::InvalidArgument, "coset functions live on different spaces");
  CosetFunction out{xi.p, xi.n, {}};
  auto add = [&](const ComplexValue& c, const CosetFunction& f) {
    for (auto t : f.terms) {
      t.coeff *= c;
      if (t.exact && c.imag() == 0 && std::isfinite(c.real()) && c.real() == std::round(c.real()))
        *t.exact *= BigRational(static_cast<long>(c.real()));
      else
        t.exact.reset();
      out.terms.push_back(std::move(t));
    }
  };
  add(a, xi);
  add(b, eta);
  return out;
}

CosetFunction scaled(const CosetFunction& xi, const BigRational& c) {
  CosetFunction out = xi;
  for (auto& t : out.terms) {
    t.coeff *= c.get_d();
    if (t.exact) *t.exact *= c;
  }
  return out;
}

std::uint64_t CosetGrid::side() const { return upow(p, static_cast<unsigned>(L + R)); }

double CosetGrid::cell_measure() const { return std::pow(static_cast<double>(p), -static_cast<double>(R) * n); }

namespace {

std::uint64_t cell_count(std::uint64_t side, int n) {
  std::uint64_t c = 1;
  for (int i = 0; i < n; ++i) {
    if (c > kMaxGridCells / side) fail(ErrorCode::BudgetExceeded, "coset grid exceeds the cell cap");
    c *= side;
  }
  return c;
}

// Cell index with axis 0 most significant.
std::vector<std::uint64_t> unflatten(std::uint64_t idx, std::uint64_t side, int n) {
  std::vector<std::uint64_t> x(static_cast<size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    x[i] = idx % side;
    idx /= side;
  }
  return x;
}

std::uint64_t flatten(const std::vector<std::uint64_t>& x, std::uint64_t side) {
  std::uint64_t idx = 0;
  for (auto v : x) idx = idx * side + v;
  return idx;
}

std::uint64_t reduce_mod(const BigInt& x, std::uint64_t mod) {
  BigInt r = x % BigInt(static_cast<unsigned long>(mod));
  if (r < 0) r += static_cast<unsigned long>(mod);
  return r.get_ui();
}

}  // namespace

CosetGrid CosetGrid::refined(int L2, int R2) const {
  require(L2 >= L && R2 >= R, ErrorCode::InvalidArgument, "refinement must not coarsen");
  CosetGrid g{p, n, L2, R2, {}, std::nullopt};
  std::uint64_t s_old = side(), s_new = g.side();
  std::uint64_t total = cell_count(s_new, n);
  std::uint64_t shift = upow(p, static_cast<unsigned>(L2 - L));
  // Per-axis map from new cell coordinate to old, or -1 outside the support.
  std::vector<std::int64_t> axis(s_new);
  for (std::uint64_t x = 0; x < s_new; ++x)
    axis[x] = x % shift == 0 ? static_cast<std::int64_t>((x / shift) % s_old) : -1;
  g.values.assign(total, ComplexValue(0, 0));
  if (exact) g.exact = std::vector<BigRational>(total, BigRational(0));
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t idx = i, old = 0, mul = 1;
    bool inside = true;
    for (int k = n - 1; k >= 0; --k) {
      std::int64_t a = axis[idx % s_new];
      idx /= s_new;
      if (a < 0) {
        inside = false;
        break;
      }
      old += static_cast<std::uint64_t>(a) * mul;
      mul *= s_old;
    }
    if (!inside) continue;
    g.values[i] = values[old];
    if (exact) (*g.exact)[i] = (*exact)[old];
  }
  return g;
}

CosetGrid to_grid(const CosetFunction& xi, int L, int R) {
  long lp = static_cast<long>(xi.p);
  require(L + R >= 0, ErrorCode::InvalidArgument, "grid needs L + R >= 0");
  CosetGrid g{xi.p, xi.n, L, R, {}, std::nullopt};
  std::uint64_t side = g.side();
  std::uint64_t total = cell_count(side, xi.n);
  g.values.assign(total, ComplexValue(0, 0));
  bool exact = xi.is_exact();
  if (exact) g.exact = std::vector<BigRational>(total, BigRational(0));
  BigRational scale = rpow(lp, L);
  for (const auto& t : xi.terms) {
    require(static_cast<int>(t.center.size()) == xi.n, ErrorCode::InvalidArgument, "center has wrong dimension");
    require(t.level <= R && t.level >= -L, ErrorCode::InvalidArgument, "term level outside the grid");
    std::uint64_t stride = upow(xi.p, static_cast<unsigned>(L + t.level));
    std::uint64_t reps = upow(xi.p, static_cast<unsigned>(R - t.level));
    std::vector<std::uint64_t> base(static_cast<size_t>(xi.n));
    for (int i = 0; i < xi.n; ++i) {
      BigRational c = t.center[i] * scale;
      c.canonicalize();
      require(c.get_den() == 1, ErrorCode::InvalidArgument, "center denominator exceeds the grid");
      base[i] = reduce_mod(c.get_num(), stride);
    }
    std::vector<std::uint64_t> j(static_cast<size_t>(xi.n), 0), x(static_cast<size_t>(xi.n));
    while (true) {
      for (int i = 0; i < xi.n; ++i) x[i] = base[i] + stride * j[i];
      std::uint64_t idx = flatten(x, side);
      g.values[idx] += t.coeff;
      if (exact) (*g.exact)[idx] += *t.exact;
      int i = xi.n - 1;
      while (i >= 0 && ++j[i] == reps) j[i--] = 0;
      if (i < 0) break;
    }
  }
  return g;
}

CosetGrid to_grid(const CosetFunction& xi) {
  long lp = static_cast<long>(xi.p);
  int L = 0, R = 0;
  bool first = true;
  for (const auto& t : xi.terms) {
    int need = -t.level;
    for (const auto& c : t.center)
      if (c != 0) need = std::max(need, -vp(c, lp));
    L = std::max(L, need);
    R = first ? t.level : std::max(R, t.level);
    first = false;
  }
  R = std::max(R, -L);
  return to_grid(xi, L, R);
}

CosetFunction from_grid(const CosetGrid& g) {
  CosetFunction out{g.p, g.n, {}};
  long lp = static_cast<long>(g.p);
  double peak = 0;
  for (const auto& v : g.values) peak = std::max(peak, std::abs(v));
  double tol = 1e-13 * peak;
  struct Cell {
    ComplexValue v;
    std::optional<BigRational> e;
  };
  auto is_zero_cell = [&](const Cell& c) { return c.e ? *c.e == 0 : std::abs(c.v) <= tol; };
  auto same = [&](const Cell& a, const Cell& b) { return a.e && b.e ? *a.e == *b.e : std::abs(a.v - b.v) <= tol; };

  std::uint64_t side = g.side();
  std::map<std::vector<std::uint64_t>, Cell> level;
  for (std::uint64_t i = 0; i < g.values.size(); ++i) {
    Cell c{g.values[i], g.exact ? std::optional<BigRational>((*g.exact)[i]) : std::nullopt};
    if (c.e) c.v = c.e->get_d();
    if (!is_zero_cell(c)) level.emplace(unflatten(i, side, g.n), c);
  }
  std::uint64_t children = upow(g.p, static_cast<unsigned>(g.n));
  BigRational inv_scale = rpow(lp, -g.L);
  auto emit = [&](const std::vector<std::uint64_t>& x, const Cell& c, int lvl) {
    CosetTerm t;
    for (auto v : x) {
      BigRational q = BigRational(BigInt(static_cast<unsigned long>(v))) * inv_scale;
      q.canonicalize();
      t.center.push_back(q);
    }
    t.level = lvl;
    t.coeff = c.v;
    t.exact = c.e;
    out.terms.push_back(std::move(t));
  };
  for (int lvl = g.R; lvl > -g.L; --lvl) {
    std::uint64_t parent_mod = upow(g.p, static_cast<unsigned>(g.L + lvl - 1));
    std::map<std::vector<std::uint64_t>, std::vector<std::pair<std::vector<std::uint64_t>, Cell>>> groups;
    for (auto& [x, c] : level) {
      std::vector<std::uint64_t> par(x);
      for (auto& v : par) v %= parent_mod;
      groups[par].emplace_back(x, c);
    }
    std::map<std::vector<std::uint64_t>, Cell> up;
    for (auto& [par, kids] : groups) {
      bool full = kids.size() == children &&
                  std::all_of(kids.begin(), kids.end(), [&](const auto& k) { return same(k.second, kids[0].second); });
      if (full)
        up.emplace(par, kids[0].second);
      else
        for (auto& [x, c] : kids) emit(x, c, lvl);
    }
    level = std::move(up);
  }
  for (auto& [x, c] : level) emit(x, c, -g.L);
  return out;
}

CosetFunction canonicalize(const CosetFunction& xi) { return from_grid(to_grid(xi)); }

CosetGrid fourier(const CosetGrid& xi, const AdditiveCharacter& psi, SpaceId s) {
  require(psi.conductor_exponent == 0, ErrorCode::InvalidArgument, "only the unramified character is supported");
  require(psi.sign == 1 || psi.sign == -1, ErrorCode::InvalidArgument, "character sign must be +-1");
  const auto& d = descriptor(s);
  require(d.dim == xi.n, ErrorCode::InvalidArgument, "coset function has the wrong dimension for the space");
  int n = xi.n;
  std::uint64_t N = xi.side();
  std::uint64_t total = xi.values.size();

  // Per-axis DFT: b(Z) = sum_X a_X w^{sum_j X_j Z_j}.
  std::vector<ComplexValue> w(N);
  for (std::uint64_t j = 0; j < N; ++j) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(N);
    w[j] = ComplexValue(std::cos(ang), psi.sign * std::sin(ang));
  }
  std::vector<ComplexValue> b = xi.values, line(N);
  std::uint64_t stride = total;
  for (int axis = 0; axis < n; ++axis) {
    stride /= N;
    for (std::uint64_t outer = 0; outer < total; outer += stride * N)
      for (std::uint64_t inner = 0; inner < stride; ++inner) {
        std::uint64_t base = outer + inner;
        for (std::uint64_t z = 0; z < N; ++z) {
          ComplexValue acc(0, 0);
          for (std::uint64_t x = 0; x < N; ++x) acc += b[base + x * stride] * w[(x * z) % N];
          line[z] = acc;
        }
        for (std::uint64_t z = 0; z < N; ++z) b[base + z * stride] = line[z];
      }
  }

  // <Y, X> = sum_k Y_k X_{perm[k]} = sum_j X_j Y_{perm^-1[j]}.
  std::vector<int> inv(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) inv[d.pairing_perm[k]] = k;
  CosetGrid out{xi.p, n, xi.R, xi.L, std::vector<ComplexValue>(total), std::nullopt};
  double scale = xi.cell_measure();
  std::vector<std::uint64_t> z(static_cast<size_t>(n));
  for (std::uint64_t i = 0; i < total; ++i) {
    auto y = unflatten(i, N, n);
    for (int j = 0; j < n; ++j) z[j] = y[inv[j]];
    out.values[i] = b[flatten(z, N)] * scale;
  }

  if (xi.exact) {
    bool signs = true;
    std::vector<std::pair<std::vector<std::uint64_t>, BigRational>> nz;
    for (std::uint64_t i = 0; i < total && signs; ++i) {
      if ((*xi.exact)[i] == 0) continue;
      auto x = unflatten(i, N, n);
      for (auto v : x) signs = signs && (2 * v) % N == 0;
      nz.emplace_back(std::move(x), (*xi.exact)[i]);
    }
    if (signs) {
      BigRational escale = rpow(static_cast<long>(xi.p), -xi.R * n);
      std::vector<BigRational> ex(total, BigRational(0));
      for (std::uint64_t i = 0; i < total; ++i) {
        auto y = unflatten(i, N, n);
        BigRational acc(0);
        for (const auto& [x, a] : nz) {
          std::uint64_t odd = 0;
          for (int k = 0; k < n; ++k)
            if (x[d.pairing_perm[k]] != 0) odd += y[k];
          if (odd % 2 == 0)
            acc += a;
          else
            acc -= a;
        }
        ex[i] = acc * escale;
        out.values[i] = ex[i].get_d();
      }
      out.exact = std::move(ex);
    }
  }
  return out;
}

CosetFunction fourier(const CosetFunction& xi, const AdditiveCharacter& psi, SpaceId s) {
  return from_grid(fourier(to_grid(xi), psi, s));
}

double l2_norm_squared(const CosetGrid& g) {
  // Neumaier summation: grids reach millions of cells.
  double acc = 0, comp = 0;
  for (const auto& v : g.values) {
    double x = std::norm(v), t = acc + x;
    comp += std::abs(acc) >= x ? (acc - t) + x : (x - t) + acc;
    acc = t;
  }
  return (acc + comp) * g.cell_measure();
}

double max_difference(const CosetGrid& a, const CosetGrid& b) {
  int L = std::max(a.L, b.L), R = std::max(a.R, b.R);
  CosetGrid x = a.refined(L, R), y = b.refined(L, R);
  double m = 0;
  for (size_t i = 0; i < x.values.size(); ++i) m = std::max(m, std::abs(x.values[i] - y.values[i]));
  return m;
}

CosetFunction random_coset_function(std::uint64_t p, int n, int max_terms, int max_level, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nterms(1, max_terms), lvl(0, max_level);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  CosetFunction f{p, n, {}};
  int count = nterms(rng);
  for (int i = 0; i < count; ++i) {
    CosetTerm t;
    t.level = lvl(rng);
    std::uint64_t mod = upow(p, static_cast<unsigned>(t.level));
    for (int k = 0; k < n; ++k) t.center.emplace_back(BigInt(static_cast<unsigned long>(rng() % mod)));
    t.coeff = ComplexValue(coef(rng), coef(rng));
    f.terms.push_back(std::move(t));
  }
  return f;
}

FourierCheckReport fourier_check(SpaceId s, std::uint64_t p, int trials, std::uint64_t seed, int max_terms,
                                 int max_level) {
  require(is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  require(trials >= 0, ErrorCode::InvalidArgument, "trials must be >= 0");
  FourierCheckReport rep;
  rep.trials = trials;
  AdditiveCharacter psi;
  int n = descriptor(s).dim;
  for (int i = 0; i < trials; ++i) {
    auto xi = random_coset_function(p, n, max_terms, max_level, seed + static_cast<std::uint64_t>(i));
    CosetGrid g = to_grid(xi);
    CosetGrid f = fourier(g, psi, s);
    CosetGrid back = fourier(f, psi.negated(), s);
    rep.max_involution_error = std::max(rep.max_involution_error, max_difference(g, back));
    double a = l2_norm_squared(g), b = l2_norm_squared(f);
    double rel = a == 0 ? std::abs(b) : std::abs(a - b) / a;
    rep.max_plancherel_error = std::max(rep.max_plancherel_error, rel);
  }
  return rep;
}

CosetZeta zeta_of_cosetfn(SpaceId s, const CosetFunction& xi, Side /*side*/, CosetZetaCache& cache) {
  // Every catalog space has the same polynomial as its dual invariant, so the
  // side only records which space the coordinates live on.
  const auto& d = descriptor(s);
  require(xi.n == d.dim, ErrorCode::InvalidArgument, "coset function has the wrong dimension for the space");
  long lp = static_cast<long>(xi.p);
  CosetZeta out;
  bool exact = xi.is_exact();
  RationalFunction ex;
  for (const auto& t : xi.terms) {
    if (t.exact ? *t.exact == 0 : t.coeff == ComplexValue(0, 0)) continue;
    int sft = std::max(0, -t.level);
    for (const auto& c : t.center)
      if (c != 0) sft = std::max(sft, -vp(c, lp));
    std::vector<BigInt> z;
    BigRational sc = rpow(lp, sft);
    for (const auto& c : t.center) {
      BigRational q = c * sc;
      q.canonicalize();
      z.push_back(q.get_num());
    }
    // x = p^{-sft} z: dx = p^{sft n} dz and |f(x)|^lambda = t^{-sft deg} |f(z)|^lambda.
    RationalFunction zt = cache.get(z, t.level + sft) * RationalFunction::power_of_t(-sft * d.invariant_degree) *
                          rpow(lp, sft * d.dim);
    out.zeta = out.zeta + ComplexRational::from(zt) * t.coeff;
    if (exact) ex = ex + zt * *t.exact;
  }
  if (exact) out.exact = ex;
  return out;
}

CosetZeta zeta_of_cosetfn(SpaceId s, const CosetFunction& xi, Side side, const CensusOptions& opt) {
  CosetZetaCache cache(s, xi.p, opt);
  return zeta_of_cosetfn(s, xi, side, cache);
}

}  // namespace pvzeta
