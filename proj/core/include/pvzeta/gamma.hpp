#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pvzeta/schwartz.hpp"

namespace pvzeta {

struct GammaOptions {
  AdditiveCharacter psi;
  /// Report gamma in the half-density variable tau = p^{-lambda0} t.
  bool half_density = false;
  double tolerance = 1e-9;
  CensusOptions census;
};

struct GammaResult {
  SpaceId space = SpaceId::Tate;
  std::uint64_t p = 2;
  /// Common gamma, numerically; from the first test function.
  ComplexRational gamma;
  /// Exact gamma when some test function has exact zetas on both sides.
  std::optional<RationalFunction> exact;
  double residual = 0;
  /// False with a single test function: nothing to cross-check.
  bool confirmed = false;
  std::vector<ComplexRational> per_test;
  std::string convention;
};

/// gamma_j(t) = Zdual(F xi_j)(p^{2 lambda0} / t) / Z(xi_j)(t) with t = p^{-lambda};
/// the dual side sits at -lambda - 2 lambda0. Residual is the largest scaled
/// coefficient of gamma_j - gamma_k, cross-multiplied. Throws
/// EmptyTestFunction, InconsistentGamma.
GammaResult gamma_extract(SpaceId s, std::uint64_t p, const std::vector<CosetFunction>& tests,
                          const GammaOptions& opt = {});

/// Closed-form unramified gamma in the scalar convention, used as an oracle:
/// tate t(1 - t/p)/(t - 1); matrix2 the product of the two shifted Tate factors.
RationalFunction classical_gamma(SpaceId s, std::uint64_t p);

struct ProbeOptions {
  /// Dual exponents lambda' at which the integrals are compared.
  std::vector<ComplexValue> dual_exponents{3.0, 4.0, 5.0};
  /// Valuations of P above this are dropped; the tail is bounded instead.
  int truncation = 2;
  CensusOptions census;
};

struct ProbeSample {
  ComplexValue exponent;
  bool skipped = false;
  std::string warning;
  double residual = 0;
  double tail_bound = 0;
  /// gamma[i][k]: dual stratum i against primal signature k.
  std::vector<std::vector<ComplexValue>> gamma;
};

struct ProbeReport {
  std::uint64_t p = 3;
  std::vector<std::string> signatures;
  std::vector<std::string> dual_strata;
  std::vector<std::vector<std::uint64_t>> tests;
  std::vector<ProbeSample> samples;
  double max_residual = 0;
};

/// Cube-split, odd p. Test functions are indicators of level-1 cosets c + p Z_p^8
/// with P(c) a unit; primal integrals are split by the square class of P, dual
/// integrals by the parity of val P and the square class of its unit part. At
/// each sample the dual vector is fitted to the primal matrix by least squares.
/// The strata are a working partition; they are not claimed to be the orbits.
/// Throws FieldRequired (p = 2), InvalidArgument, RankDeficient.
ProbeReport gamma_matrix_probe(std::uint64_t p, const std::vector<std::vector<std::uint64_t>>& tests,
                               const ProbeOptions& opt = {});

/// Seeded open residues; when both_signatures, half of each square class.
std::vector<std::vector<std::uint64_t>> default_probe_tests(std::uint64_t p, int count, std::uint64_t seed,
                                                            bool both_signatures = true);

/// Level-1 measures of val P(y + p z) = m by unit class, for y mod p: mu[m][c]
/// with c = 0 for square units, 1 for non-squares. Exposed for tests.
std::vector<std::vector<BigRational>> probe_fiber_measures(std::uint64_t p, const std::vector<std::uint64_t>& y,
                                                           int truncation, const CensusOptions& opt = {});

}  // namespace pvzeta
