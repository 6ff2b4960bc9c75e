#include "pvzeta/zeta_real.hpp"

#include <algorithm>
#include <Eigen/Eigenvalues>
#include <atomic>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "pvzeta/invariants.hpp"
#include "pvzeta/parallel.hpp"

namespace pvzeta {

std::string to_string(QuadratureScheme s) {
  return s == QuadratureScheme::AdaptiveGlobal ? "adaptive-global" : "tensor-gauss";
}

QuadratureScheme parse_scheme(const std::string& s) {
  if (s == "adaptive-global") return QuadratureScheme::AdaptiveGlobal;
  if (s == "tensor-gauss") return QuadratureScheme::TensorGauss;
  fail(ErrorCode::InvalidArgument, "unknown quadrature scheme '" + s + "'");
}

double convergence_abscissa(SpaceId s) { return s == SpaceId::CubeSplit ? 1.0 : 0.0; }

ComplexValue sigma_scaling(SpaceId space, ComplexValue s, double sigma) {
  const auto& d = descriptor(space);
  ComplexValue power = -(static_cast<double>(d.dim) + static_cast<double>(d.invariant_degree) * (s - 1.0)) / 2.0;
  return std::exp(power * std::log(sigma));
}

void gauss_hermite(int degree, std::vector<double>& nodes, std::vector<double>& weights) {
  require(degree >= 1, ErrorCode::InvalidArgument, "Gauss-Hermite degree must be >= 1");
  // Jacobi matrix of the Hermite weight: off-diagonal sqrt(k/2).
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(degree, degree);
  for (int k = 1; k < degree; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes.resize(static_cast<size_t>(degree));
  weights.resize(static_cast<size_t>(degree));
  double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < degree; ++i) {
    nodes[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    weights[i] = mu0 * v * v;
  }
}

namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::sinh_sinh;
using boost::math::quadrature::tanh_sinh;

struct Piece {
  ComplexValue value;
  double error = 0;
};

// |v|^e as a complex number, v != 0.
inline ComplexValue cpow_abs(double v, ComplexValue e) {
  double l = std::log(std::abs(v));
  return std::exp(e * l);
}

// Integrates a complex-valued g over (a, b) with a, b possibly infinite by
// splitting into real and imaginary parts.
template <class G>
Piece integrate(G&& g, double a, double b, bool complex_part, double tol, std::atomic<std::uint64_t>& evals) {
  Piece out;
  for (int part = 0; part < (complex_part ? 2 : 1); ++part) {
    auto f = [&](double x) {
      evals.fetch_add(1, std::memory_order_relaxed);
      ComplexValue v = g(x);
      double r = part == 0 ? v.real() : v.imag();
      return std::isfinite(r) ? r : 0.0;
    };
    double err = 0, l1 = 0, val = 0;
    if (std::isinf(a) && std::isinf(b)) {
      static thread_local sinh_sinh<double> q;
      val = q.integrate(f, tol, &err, &l1);
    } else if (std::isinf(b)) {
      static thread_local exp_sinh<double> q;
      val = q.integrate([&](double u) { return f(a + u); }, tol, &err, &l1);
    } else if (std::isinf(a)) {
      static thread_local exp_sinh<double> q;
      val = q.integrate([&](double u) { return f(b - u); }, tol, &err, &l1);
    } else {
      static thread_local tanh_sinh<double> q;
      val = q.integrate(f, a, b, tol, &err, &l1);
    }
    (part == 0 ? out.value.real(val) : out.value.imag(val));
    out.error += err * l1;
  }
  return out;
}

// int over the real line of |c0 + c1 t + c2 t^2|^e e^{-pi sigma t^2} dt,
// split at real roots; `filter` keeps only intervals of that sign.
Piece line_integral(double c0, double c1, double c2, ComplexValue e, double sigma, std::optional<int> filter,
                    double tol, std::atomic<std::uint64_t>& evals) {
  std::vector<double> roots;
  if (c2 != 0) {
    double disc = c1 * c1 - 4 * c2 * c0;
    if (disc > 0) {
      double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
      double r1 = q / c2, r2 = q != 0 ? c0 / q : r1;
      roots = {std::min(r1, r2), std::max(r1, r2)};
    }
  } else if (c1 != 0) {
    roots = {-c0 / c1};
  }
  // Roots far outside the Gaussian carry no mass (e^{-pi 144} ~ 1e-197).
  double reach = 12.0 / std::sqrt(sigma);
  std::vector<double> cuts{-INFINITY};
  for (double r : roots)
    if (std::abs(r) < reach) cuts.push_back(r);
  cuts.push_back(INFINITY);
  bool cplx = e.imag() != 0;
  Piece total;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    double mid = std::isinf(a) ? (std::isinf(b) ? 0.0 : b - 1) : (std::isinf(b) ? a + 1 : (a + b) / 2);
    double pm = c0 + mid * (c1 + mid * c2);
    int sgn = pm > 0 ? 1 : -1;
    if (filter && *filter != sgn) continue;
    auto g = [&](double t) {
      double v = c0 + t * (c1 + t * c2);
      if (v == 0) return ComplexValue(0, 0);
      return cpow_abs(v, e) * std::exp(-std::numbers::pi * sigma * t * t);
    };
    Piece p = integrate(g, a, b, cplx, tol, evals);
    total.value += p.value;
    total.error += p.error;
  }
  return total;
}

// Tensor Gauss-Hermite over the first n - 1 coordinates, line integral on the
// last one. Outer nodes are split over 64 fixed tasks and summed in task order.
Piece tensor_gauss(SpaceId space, ComplexValue e, double sigma, int degree, std::optional<int> filter,
                   const QuadratureSpec& spec, std::atomic<std::uint64_t>& evals) {
  int n = descriptor(space).dim;
  int outer = n - 1;
  std::vector<double> u, w;
  gauss_hermite(degree, u, w);
  double sc = 1.0 / std::sqrt(std::numbers::pi * sigma);
  std::uint64_t nodes = 1;
  for (int i = 0; i < outer; ++i) nodes *= static_cast<std::uint64_t>(degree);
  constexpr int kTasks = 64;
  std::vector<Piece> parts(kTasks);
  double tol = std::max(1e-12, spec.rel_tol * 1e-2);
  parallel_for(kTasks, spec.threads, [&](int task) {
    Point<double> x(static_cast<size_t>(n), 0.0);
    std::vector<int> idx(static_cast<size_t>(outer));
    Piece acc;
    for (std::uint64_t node = static_cast<std::uint64_t>(task); node < nodes; node += kTasks) {
      std::uint64_t r = node;
      double weight = 1;
      for (int i = 0; i < outer; ++i) {
        int k = static_cast<int>(r % static_cast<std::uint64_t>(degree));
        r /= static_cast<std::uint64_t>(degree);
        x[i] = u[k] * sc;
        weight *= w[k] * sc;
      }
      // f is at most quadratic in the last coordinate.
      auto at = [&](double t) {
        x[n - 1] = t;
        return eval_invariant(space, x);
      };
      double f0 = at(0), fp = at(1), fm = at(-1);
      double c1 = (fp - fm) / 2, c2 = (fp + fm) / 2 - f0;
      // f linear in the last coordinate leaves rounding noise in c2
      if (std::abs(c2) <= 1e-13 * (std::abs(f0) + std::abs(fp) + std::abs(fm))) c2 = 0;
      Piece p = line_integral(f0, c1, c2, e, sigma, filter, tol, evals);
      acc.value += weight * p.value;
      acc.error += weight * p.error;
    }
    parts[task] = acc;
  });
  // Pairwise reduction in fixed order.
  for (int width = 1; width < kTasks; width *= 2)
    for (int i = 0; i + width < kTasks; i += 2 * width) {
      parts[i].value += parts[i + width].value;
      parts[i].error += parts[i + width].error;
    }
  return parts[0];
}

// Matrix2 via rows a, b: with a = rho (cos th, sin th) and b written in the
// frame (a-perp, a), det = rho v and the Gaussian factorizes, so the integral
// is 2 pi int rho^{1+e} e^{-pi s rho^2} * int |v|^e e^{-pi s v^2} * int e^{-pi s w^2}.
Piece matrix2_adaptive(ComplexValue e, double sigma, std::optional<int> filter, double tol,
                       std::atomic<std::uint64_t>& evals) {
  bool cplx = e.imag() != 0;
  auto gauss = [&](double t) { return std::exp(-std::numbers::pi * sigma * t * t); };
  Piece radial = integrate([&](double r) { return r == 0 ? ComplexValue(0, 0) : cpow_abs(r, e + 1.0) * gauss(r); },
                           0.0, INFINITY, cplx, tol, evals);
  Piece v = line_integral(0, 1, 0, e, sigma, filter, tol, evals);
  Piece wmass = integrate([&](double t) { return ComplexValue(gauss(t), 0); }, -INFINITY, INFINITY, false, tol, evals);
  Piece out;
  out.value = 2 * std::numbers::pi * radial.value * v.value * wmass.value;
  double rel = 0;
  for (const auto* p : {&radial, &v, &wmass}) rel += std::abs(p->value) > 0 ? p->error / std::abs(p->value) : 0;
  out.error = std::abs(out.value) * rel;
  return out;
}

}  // namespace

RealZetaSample zeta_real(SpaceId space, ComplexValue s, double sigma, const QuadratureSpec& spec,
                         std::optional<int> orbit_filter) {
  require(sigma > 0, ErrorCode::InvalidArgument, "sigma must be positive");
  require(spec.abs_tol > 0 && spec.rel_tol > 0, ErrorCode::InvalidArgument, "tolerances must be positive");
  require(!orbit_filter || *orbit_filter == 1 || *orbit_filter == -1, ErrorCode::InvalidArgument,
          "orbit filter is +1 or -1");
  double kappa = convergence_abscissa(space);
  if (!(s.real() > kappa))
    fail(ErrorCode::ConvergenceRangeViolated,
         "Re(s) must exceed " + std::to_string(kappa) + " for " + to_string(space));
  ComplexValue e = s - 1.0;
  RealZetaSample out;
  out.space = space;
  out.s = s;
  out.sigma = sigma;
  out.orbit_filter = orbit_filter;
  std::atomic<std::uint64_t> evals{0};
  double tol = std::max(1e-14, spec.rel_tol * 1e-2);

  if (space == SpaceId::Tate) {
    Piece p = line_integral(0, 1, 0, e, sigma, orbit_filter, tol, evals);
    out.value = p.value;
    out.est_error = p.error;
  } else if (space == SpaceId::Matrix2 && spec.scheme == QuadratureScheme::AdaptiveGlobal) {
    Piece p = matrix2_adaptive(e, sigma, orbit_filter, tol, evals);
    out.value = p.value;
    out.est_error = p.error;
  } else {
    require(spec.scheme == QuadratureScheme::TensorGauss || space != SpaceId::CubeSplit, ErrorCode::InvalidArgument,
            "cube-split needs the tensor-gauss scheme");
    int n = descriptor(space).dim;
    auto cost = [&](int deg) { return std::pow(static_cast<double>(deg), n - 1) * 1500.0; };
    int deg = spec.gh_degree + (spec.gh_degree % 2);  // even: no node at 0
    if (cost(deg) > static_cast<double>(spec.max_evals))
      fail(ErrorCode::MaxEvalsExceeded, "tensor Gauss-Hermite degree " + std::to_string(deg) + " exceeds max_evals");
    Piece prev = tensor_gauss(space, e, sigma, deg, orbit_filter, spec, evals);
    Piece cur = prev;
    double diff = INFINITY, last = INFINITY;
    while (deg + 2 <= spec.gh_max_degree && cost(deg + 2) + static_cast<double>(evals.load()) <=
                                                static_cast<double>(spec.max_evals)) {
      deg += 2;
      cur = tensor_gauss(space, e, sigma, deg, orbit_filter, spec, evals);
      last = diff;
      diff = std::abs(cur.value - prev.value);
      prev = cur;
      if (diff <= std::max(spec.abs_tol, spec.rel_tol * std::abs(cur.value))) break;
    }
    out.value = cur.value;
    // A kink in |f|^e makes the error decay like deg^-a, where the last step
    // badly understates the tail. Fit a (or a geometric ratio) to the last two steps.
    double tail = diff;
    if (std::isinf(diff)) {
      tail = std::abs(cur.value);
    } else if (std::isfinite(last) && diff > 0 && last > 0) {
      double r = diff / last;
      if (r >= 1) {
        tail = diff * deg;
      } else {
        double a = -std::log(r) / std::log(static_cast<double>(deg) / (deg - 2)) - 1;
        double algebraic = a > 0 ? diff * deg / (2 * a) : diff * deg;
        tail = 2 * std::max({diff, r / (1 - r) * diff, algebraic});
      }
    }
    out.est_error = cur.error + tail;
  }
  out.evaluations = evals.load();
  if (out.evaluations > spec.max_evals)
    fail(ErrorCode::MaxEvalsExceeded, "quadrature used " + std::to_string(out.evaluations) + " evaluations");
  return out;
}

RhoSplit rho_split(SpaceId space, const Point<double>& x) {
  double f = eval_invariant(space, x);
  if (f == 0) fail(ErrorCode::BoundaryPoint, "rho_split needs f(x) != 0");
  double af = std::abs(f);
  Mat2<double> I{1, 0, 0, 1};
  switch (space) {
    case SpaceId::Tate:
      return RhoSplit{{x[0] / af}, GroupElement<double>::tate(af), af};
    case SpaceId::Matrix2: {
      double tau = std::sqrt(af);
      Point<double> u(x);
      for (auto& v : u) v /= tau;
      return RhoSplit{u, GroupElement<double>(space, {I.scaled(tau), I}), af};
    }
    case SpaceId::CubeSplit: {
      double tau = std::pow(af, 0.25);
      Point<double> u(x);
      for (auto& v : u) v /= tau;
      return RhoSplit{u, GroupElement<double>(space, {I, I, I.scaled(tau)}), af};
    }
  }
  fail(ErrorCode::WrongSpace, "unknown space");
}

MonteCarloEstimate zeta_real_monte_carlo(SpaceId space, ComplexValue s, double sigma, std::uint64_t samples,
                                         std::uint64_t seed, std::optional<int> orbit_filter) {
  if (samples == 0) fail(ErrorCode::EmptySample, "monte-carlo needs at least one sample");
  require(sigma > 0, ErrorCode::InvalidArgument, "sigma must be positive");
  int n = descriptor(space).dim;
  // e^{-pi sigma x^2} = sigma^{-1/2} * N(0, 1/(2 pi sigma)) density.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0 / std::sqrt(2 * std::numbers::pi * sigma));
  ComplexValue e = s - 1.0, sum(0, 0);
  double sq = 0;
  Point<double> x(static_cast<size_t>(n));
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (auto& v : x) v = nd(rng);
    double f = eval_invariant(space, x);
    ComplexValue val(0, 0);
    if (f != 0 && (!orbit_filter || (f > 0 ? 1 : -1) == *orbit_filter)) val = cpow_abs(f, e);
    sum += val;
    sq += std::norm(val);
  }
  double N = static_cast<double>(samples);
  double mass = std::pow(sigma, -n / 2.0);
  ComplexValue mean = sum / N;
  double var = std::max(0.0, sq / N - std::norm(mean));
  return MonteCarloEstimate{mean * mass, std::sqrt(var / N) * mass};
}

}  // namespace pvzeta
