#include "pvzeta/census.hpp"

#include <atomic>
#include <cmath>
#include <optional>
#include <random>

#include "pvzeta/parallel.hpp"

namespace pvzeta {

std::string to_string(CensusStrategy s) {
  switch (s) {
    case CensusStrategy::Direct: return "direct";
    case CensusStrategy::BranchLift: return "branch-lift";
    case CensusStrategy::Fibered: return "fibered";
    case CensusStrategy::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

CensusStrategy parse_strategy(const std::string& s) {
  for (auto x : {CensusStrategy::Direct, CensusStrategy::BranchLift, CensusStrategy::Fibered,
                 CensusStrategy::MonteCarlo})
    if (to_string(x) == s) return x;
  fail(ErrorCode::InvalidArgument, "unknown strategy '" + s + "'");
}

std::vector<BigRational> ValuationCensus::exact_prefix() const {
  std::vector<BigRational> out;
  for (const auto& e : entries) {
    if (!e.exact || e.m != static_cast<int>(out.size())) break;
    out.push_back(e.c);
  }
  return out;
}

BigInt LevelCounts::total(int m) const {
  BigInt s = 0;
  for (const auto& c : counts[m]) s += c;
  return s;
}

std::vector<BigRational> LevelCounts::measures() const {
  std::vector<BigRational> out;
  for (int m = 0; m < static_cast<int>(counts.size()); ++m) {
    BigRational c(total(m), ipow(static_cast<long>(p), static_cast<unsigned>(n * (m + 1))));
    c.canonicalize();
    out.push_back(c);
  }
  return out;
}

namespace {

// Fixed task count so the work split never depends on the thread count.
constexpr int kTasks = 64;

using Counter = std::vector<std::vector<std::uint64_t>>;

Counter new_counter(int levels, std::uint64_t p) {
  return Counter(static_cast<size_t>(levels), std::vector<std::uint64_t>(p, 0));
}

void merge(LevelCounts& out, const Counter& c) {
  for (size_t m = 0; m < c.size(); ++m)
    for (size_t u = 0; u < c[m].size(); ++u) out.counts[m][u] += static_cast<unsigned long>(c[m][u]);
}

LevelCounts empty_counts(std::uint64_t p, int n, int m_max) {
  LevelCounts lc;
  lc.p = p;
  lc.n = n;
  lc.counts.assign(static_cast<size_t>(m_max) + 1, std::vector<BigInt>(p, BigInt(0)));
  return lc;
}

// Records v != 0 (mod p^M) at its valuation.
inline void record(Counter& c, std::uint64_t v, std::uint64_t p) {
  int j = 0;
  while (v % p == 0) {
    v /= p;
    ++j;
  }
  ++c[j][v % p];
}

std::uint64_t checked_pow(std::uint64_t p, int e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / p) return cap + 1;
    r *= p;
  }
  return r;
}

}  // namespace

LevelCounts count_direct(const IntPoly& f, std::uint64_t p, int m_max, const CensusOptions& opt) {
  require(is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  require(m_max >= 0, ErrorCode::InvalidArgument, "m_max must be >= 0");
  int n = f.nvars();
  std::uint64_t mod = upow(p, static_cast<unsigned>(m_max + 1));
  std::uint64_t volume = checked_pow(mod, n, opt.budget);
  if (volume > opt.budget)
    fail(ErrorCode::BudgetExceeded, "direct enumeration needs more than " + std::to_string(opt.budget) + " points");
  CompiledPoly cf(f, mod);
  LevelCounts out = empty_counts(p, n, m_max);
  out.evaluations = volume;
  // Task t takes first coordinates x0 = t, t + kTasks, ...
  std::vector<Counter> local(kTasks, new_counter(m_max + 1, p));
  parallel_for(kTasks, opt.threads, [&](int t) {
    std::vector<std::uint32_t> x(static_cast<size_t>(n), 0);
    Counter& c = local[t];
    for (std::uint64_t x0 = static_cast<std::uint64_t>(t); x0 < mod; x0 += kTasks) {
      x[0] = static_cast<std::uint32_t>(x0);
      std::fill(x.begin() + 1, x.end(), 0);
      while (true) {
        std::uint64_t v = cf.eval(x.data());
        if (v != 0) record(c, v, p);
        int i = n - 1;
        while (i >= 1 && ++x[i] == mod) x[i--] = 0;
        if (i < 1) break;
      }
    }
  });
  for (const auto& c : local) merge(out, c);
  // Residues mod p^{m_max+1} with val m are the p^{n(m_max-m)} lifts of
  // residues mod p^{m+1}; keep counts per level like branch-lift does.
  for (int m = 0; m <= m_max; ++m) {
    BigInt lifts = ipow(static_cast<long>(p), static_cast<unsigned>(n * (m_max - m)));
    for (auto& c : out.counts[m]) c /= lifts;
  }
  return out;
}

namespace {

// Hensel step. On a class c + p^j Z_p^n with f(c) = 0 mod p^j and
// v = min val grad f(c) < j, Taylor expansion gives
//   f(c + p^j y) = f(c) + p^{j+v} W(y)
// with y -> W(y) measure preserving onto Z_p. So either val f = val f(c) < j + v
// on the whole class, or val f - (j + v) is distributed as val of a uniform
// p-adic integer. Either way the class leaves the frontier.
// When v >= j the higher Taylor terms are divisible by p^{2j}, so f is
// constant mod p^{2j}: the class resolves unless p^{2j} | f(c), and even then
// it is dropped once 2j > m_max.
struct HenselTally {
  Counter fixed;                     // [k][digit]: classes with constant val k
  std::vector<std::uint64_t> smooth;  // [v]: classes with uniform tail from j + v
};

class HenselStep {
 public:
  HenselStep(const IntPoly& f, std::uint64_t p, int j) : p_(p), j_(j) {
    // p^K <= 2^32 is the widest compiled modulus.
    std::uint64_t pk = 1;
    while (k_ < 2 * j && pk <= (std::uint64_t(1) << 32) / p) {
      pk *= p;
      ++k_;
    }
    if (k_ <= j) return;
    value_.emplace(f, pk);
    std::uint64_t pj = upow(p, static_cast<unsigned>(j));
    for (int i = 0; i < f.nvars(); ++i) grad_.emplace_back(f.derivative(i), pj);
  }
  bool enabled() const { return value_.has_value(); }

  // Returns false when the class has to be split further.
  bool resolve(const std::uint32_t* x, int m_max, HenselTally& t) const {
    int v = j_;
    for (const auto& g : grad_) {
      std::uint64_t d = g.eval(x);
      if (d != 0) v = std::min(v, val(d));
    }
    if (v >= j_) {
      // grad f = 0 mod p^j, so f = f(c) mod p^{2j} on the class.
      if (2 * j_ > k_) return false;
      std::uint64_t fc = value_->eval(x) % upow(p_, static_cast<unsigned>(2 * j_));
      if (fc == 0) return 2 * j_ > m_max;  // val >= 2j everywhere: nothing left to count
      int k = val(fc);
      if (k <= m_max) ++t.fixed[k][(fc / upow(p_, static_cast<unsigned>(k))) % p_];
      return true;
    }
    if (j_ + v > k_) return false;
    std::uint64_t fc = value_->eval(x) % upow(p_, static_cast<unsigned>(j_ + v));
    if (fc != 0) {
      int k = val(fc);
      if (k <= m_max) ++t.fixed[k][(fc / upow(p_, static_cast<unsigned>(k))) % p_];
      return true;
    }
    ++t.smooth[v];
    return true;
  }

 private:
  int val(std::uint64_t d) const {
    int r = 0;
    while (d % p_ == 0) {
      d /= p_;
      ++r;
    }
    return r;
  }
  std::uint64_t p_;
  int j_;
  int k_ = 0;
  std::optional<CompiledPoly> value_;
  std::vector<CompiledPoly> grad_;
};

// Classes mod p^{m+1} contributed by the resolved classes of level j.
void merge_hensel(LevelCounts& out, const HenselTally& t, int j, int m_max) {
  long lp = static_cast<long>(out.p);
  int n = out.n;
  for (int k = j; k <= m_max; ++k)
    for (std::uint64_t u = 1; u < out.p; ++u)
      if (t.fixed[k][u] != 0)
        out.counts[k][u] += BigInt(static_cast<unsigned long>(t.fixed[k][u])) *
                            ipow(lp, static_cast<unsigned>(n * (k + 1 - j)));
  for (int v = 0; v < static_cast<int>(t.smooth.size()); ++v) {
    if (t.smooth[v] == 0) continue;
    BigInt cnt(static_cast<unsigned long>(t.smooth[v]));
    // measure p^{-jn} (1 - 1/p) p^{-r} at m = j + v + r, split evenly over the p - 1 digits
    for (int m = j + v; m <= m_max; ++m) {
      int r = m - j - v;
      BigInt per = cnt * ipow(lp, static_cast<unsigned>(n * (m + 1 - j) - r - 1));
      for (std::uint64_t u = 1; u < out.p; ++u) out.counts[m][u] += per;
    }
  }
}

}  // namespace

LevelCounts count_branch_lift(const IntPoly& f, std::uint64_t p, int m_max, const CensusOptions& opt) {
  require(is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  require(m_max >= 0, ErrorCode::InvalidArgument, "m_max must be >= 0");
  int n = f.nvars();
  std::uint64_t digits = checked_pow(p, n, opt.budget);
  LevelCounts out = empty_counts(p, n, m_max);
  // Frontier S_j: residues mod p^j with p^j | f, stored flat.
  std::vector<std::uint32_t> frontier(static_cast<size_t>(n), 0);
  std::uint64_t used = 0;
  std::uint64_t pj = 1;
  std::uint64_t cap = opt.frontier_cap;
  for (int j = 0; j <= m_max; ++j) {
    std::uint64_t size = frontier.size() / static_cast<size_t>(n);
    if (size == 0) break;
    if (j > 0) {
      HenselStep hs(f, p, j);
      if (hs.enabled()) {
        used += size * static_cast<std::uint64_t>(n + 1);
        if (used > opt.budget)
          fail(ErrorCode::BudgetExceeded, "branch-and-lift at level " + std::to_string(j) + " needs more than " +
                                              std::to_string(opt.budget) + " evaluations");
        std::vector<HenselTally> tally(kTasks, HenselTally{new_counter(m_max + 1, p),
                                                           std::vector<std::uint64_t>(static_cast<size_t>(j), 0)});
        std::vector<std::vector<std::uint32_t>> keep(kTasks);
        std::uint64_t chunk = (size + kTasks - 1) / kTasks;
        parallel_for(kTasks, opt.threads, [&](int t) {
          std::uint64_t lo = chunk * static_cast<std::uint64_t>(t), hi = std::min(size, lo + chunk);
          for (std::uint64_t r = lo; r < hi; ++r) {
            const std::uint32_t* x = frontier.data() + r * static_cast<std::uint64_t>(n);
            if (!hs.resolve(x, m_max, tally[t])) keep[t].insert(keep[t].end(), x, x + n);
          }
        });
        for (const auto& t : tally) merge_hensel(out, t, j, m_max);
        frontier.clear();
        for (auto& v : keep) frontier.insert(frontier.end(), v.begin(), v.end());
        size = frontier.size() / static_cast<size_t>(n);
        if (size == 0) break;
      }
    }
    if (digits > opt.budget || size > (opt.budget - std::min(used, opt.budget)) / digits)
      fail(ErrorCode::BudgetExceeded, "branch-and-lift at level " + std::to_string(j) + " needs more than " +
                                          std::to_string(opt.budget) + " evaluations");
    used += size * digits;
    CompiledPoly cf(f, pj * p);
    bool last = j == m_max;
    std::vector<Counter> local(kTasks, new_counter(m_max + 1, p));
    std::vector<std::vector<std::uint32_t>> next(kTasks);
    std::atomic<std::uint64_t> kept{0};
    std::uint64_t chunk = (size + kTasks - 1) / kTasks;
    parallel_for(kTasks, opt.threads, [&](int t) {
      std::uint64_t lo = chunk * static_cast<std::uint64_t>(t), hi = std::min(size, lo + chunk);
      std::vector<std::uint32_t> x(static_cast<size_t>(n)), d(static_cast<size_t>(n));
      for (std::uint64_t r = lo; r < hi; ++r) {
        const std::uint32_t* base = frontier.data() + r * static_cast<std::uint64_t>(n);
        std::copy(base, base + n, x.begin());
        std::fill(d.begin(), d.end(), 0);
        while (true) {
          std::uint64_t v = cf.eval(x.data());
          if (v != 0) {
            record(local[t], v, p);
          } else if (!last) {
            if (kept.fetch_add(1, std::memory_order_relaxed) >= cap)
              fail(ErrorCode::BudgetExceeded, "branch-and-lift frontier exceeds the memory cap");
            next[t].insert(next[t].end(), x.begin(), x.end());
          }
          int i = n - 1;
          while (i >= 0) {
            x[i] += static_cast<std::uint32_t>(pj);
            if (++d[i] < p) break;
            d[i] = 0;
            x[i] = base[i];
            --i;
          }
          if (i < 0) break;
        }
      }
    });
    for (const auto& c : local) merge(out, c);
    frontier.clear();
    std::uint64_t total = 0;
    for (const auto& v : next) total += v.size() / static_cast<size_t>(n);
    if (total > cap) fail(ErrorCode::BudgetExceeded, "branch-and-lift frontier exceeds the memory cap");
    frontier.reserve(total * static_cast<std::uint64_t>(n));
    for (auto& v : next) frontier.insert(frontier.end(), v.begin(), v.end());
    pj *= p;
  }
  out.evaluations = used;
  return out;
}

std::uint64_t direct_volume(SpaceId s, std::uint64_t p, int m_max) {
  std::uint64_t mod = upow(p, static_cast<unsigned>(m_max + 1));
  return checked_pow(mod, descriptor(s).dim, ~std::uint64_t(0) / 2);
}

ValuationCensus census_exact(SpaceId s, std::uint64_t p, int m_max, CensusStrategy strategy,
                             const CensusOptions& opt) {
  require(is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  require(m_max >= 0, ErrorCode::InvalidArgument, "m_max must be >= 0");
  const auto& d = descriptor(s);
  ValuationCensus out;
  out.space = s;
  out.p = p;
  out.n = d.dim;
  out.strategy = strategy;
  std::vector<BigRational> c;
  switch (strategy) {
    case CensusStrategy::Direct: c = count_direct(d.basic_invariant, p, m_max, opt).measures(); break;
    case CensusStrategy::BranchLift: c = count_branch_lift(d.basic_invariant, p, m_max, opt).measures(); break;
    case CensusStrategy::Fibered:
      require(s == SpaceId::CubeSplit, ErrorCode::InvalidArgument, "the fibered strategy is specific to cube-split");
      c = cube_fibered_census(p, m_max, opt);
      break;
    case CensusStrategy::MonteCarlo:
      fail(ErrorCode::InvalidArgument, "monte-carlo is not an exact strategy");
  }
  for (int m = 0; m <= m_max; ++m) out.entries.push_back(CensusEntry{m, c[m], true, std::nullopt});
  return out;
}

namespace {

constexpr int kStreams = 64;

BigRational approx_rational(double x) {
  // Fixed 1e-15 resolution is plenty for a confidence width.
  BigRational r(BigInt(static_cast<long>(std::llround(x * 1e15))), BigInt(1000000000000000UL));
  r.canonicalize();
  return r;
}

}  // namespace

ValuationCensus census_monte_carlo(SpaceId s, std::uint64_t p, int m_max, std::uint64_t samples, unsigned precision_k,
                                   std::uint64_t seed, const CensusOptions& opt) {
  if (samples == 0) fail(ErrorCode::EmptySample, "monte-carlo census needs at least one sample");
  require(is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  require(static_cast<int>(precision_k) > m_max, ErrorCode::InvalidArgument, "precision_k must exceed m_max");
  const auto& d = descriptor(s);
  std::uint64_t mod = upow(p, precision_k);
  CompiledPoly cf(d.basic_invariant, mod);
  int n = d.dim;
  int levels = static_cast<int>(precision_k);
  std::vector<Counter> local(kStreams, new_counter(levels, p));
  std::vector<std::uint64_t> exhausted(kStreams, 0);
  parallel_for(kStreams, opt.threads, [&](int st) {
    std::uint64_t count = samples / kStreams + (static_cast<std::uint64_t>(st) < samples % kStreams ? 1 : 0);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(st)};
    std::mt19937_64 rng(seq);
    std::vector<std::uint32_t> x(static_cast<size_t>(n));
    for (std::uint64_t i = 0; i < count; ++i) {
      for (auto& v : x) v = static_cast<std::uint32_t>(rng() % mod);
      std::uint64_t v = cf.eval(x.data());
      if (v == 0)
        ++exhausted[st];
      else
        record(local[st], v, p);
    }
  });
  ValuationCensus out;
  out.space = s;
  out.p = p;
  out.n = n;
  out.strategy = CensusStrategy::MonteCarlo;
  out.seed = seed;
  out.samples = samples;
  for (auto e : exhausted) out.precision_exhausted += e;
  for (int m = 0; m <= m_max; ++m) {
    std::uint64_t hits = 0;
    for (const auto& c : local)
      for (auto v : c[m]) hits += v;
    BigRational c(BigInt(static_cast<unsigned long>(hits)), BigInt(static_cast<unsigned long>(samples)));
    c.canonicalize();
    double ph = static_cast<double>(hits) / static_cast<double>(samples);
    double half = 1.959963984540054 * std::sqrt(ph * (1.0 - ph) / static_cast<double>(samples));
    out.entries.push_back(CensusEntry{m, c, false, approx_rational(half)});
  }
  return out;
}

}  // namespace pvzeta
