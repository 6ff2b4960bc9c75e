#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pvzeta/catalog.hpp"

namespace pvzeta {

enum class QuadratureScheme { AdaptiveGlobal, TensorGauss };

std::string to_string(QuadratureScheme s);
QuadratureScheme parse_scheme(const std::string& s);

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::AdaptiveGlobal;
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  std::uint64_t max_evals = 1000000000ULL;
  /// Starting Gauss-Hermite degree for tensor-gauss; escalated by 2 until
  /// successive results agree.
  int gh_degree = 6;
  int gh_max_degree = 12;
  int threads = 0;
};

/// Exponent convention: the integrand is |f(x)|^{s-1} e^{-pi sigma |x|^2} dx.
struct RealZetaSample {
  SpaceId space = SpaceId::Tate;
  ComplexValue s;
  double sigma = 1;
  ComplexValue value;
  double est_error = 0;
  /// +1 or -1: only points where f has that sign.
  std::optional<int> orbit_filter;
  std::uint64_t evaluations = 0;
};

/// Lower bound on Re(s) for convergence: 0 for tate and matrix2, 1 for
/// cube-split (|P|^{s-1} is only used with nonnegative exponent there).
double convergence_abscissa(SpaceId s);

/// Throws ConvergenceRangeViolated, MaxEvalsExceeded, InvalidArgument.
RealZetaSample zeta_real(SpaceId space, ComplexValue s, double sigma, const QuadratureSpec& spec = {},
                         std::optional<int> orbit_filter = std::nullopt);

/// sigma^{-(n + deg (s - 1)) / 2}: zeta_real at sigma over zeta_real at 1.
ComplexValue sigma_scaling(SpaceId space, ComplexValue s, double sigma);

/// Gauss-Hermite nodes and weights for int g(x) e^{-x^2} dx (Golub-Welsch).
void gauss_hermite(int degree, std::vector<double>& nodes, std::vector<double>& weights);

struct RhoSplit {
  Point<double> unit;
  GroupElement<double> a;
  /// |omega(a)| = |f(x)|.
  double scale;
};

/// x = act(unit, a) with |f(unit)| = 1. tate: a = |x|; matrix2: a = (tau I, I)
/// with tau^2 = |det x|; cube-split: a = (I, I, tau I) with tau^4 = |P(x)|.
/// Throws BoundaryPoint when f(x) = 0.
RhoSplit rho_split(SpaceId space, const Point<double>& x);

struct MonteCarloEstimate {
  ComplexValue value;
  double std_error = 0;
};

/// Plain Monte Carlo under the Gaussian weight, as a cross-check.
MonteCarloEstimate zeta_real_monte_carlo(SpaceId space, ComplexValue s, double sigma, std::uint64_t samples,
                                         std::uint64_t seed, std::optional<int> orbit_filter = std::nullopt);

}  // namespace pvzeta
