#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pvzeta/invariants.hpp"

namespace pvzeta {

enum class OrbitTag { Zero, Rk1Span1, Rk2Span1, LeftKerSpan2, RightKerSpan2, DegenForm, Open };

std::string to_string(OrbitTag t);
OrbitTag parse_orbit_tag(const std::string& s);

struct OrbitLabel {
  OrbitTag tag;
  /// Square class of P for Open labels: over F_p, "1" or the least
  /// non-residue; over Q, the signed squarefree part. Empty otherwise.
  std::string signature;

  bool operator==(const OrbitLabel&) const = default;
  std::string str() const;
};

/// Field of definition for classification: F_p (p odd prime) or Q (p = 0).
struct FieldSpec {
  std::uint64_t p = 0;
  static FieldSpec rationals() { return {0}; }
  static FieldSpec fp(std::uint64_t p) { return {p}; }
  bool is_q() const { return p == 0; }
  std::string str() const { return is_q() ? "Q" : "F_" + std::to_string(p); }
};

FieldSpec parse_field(const std::string& s);

OrbitLabel classify(const Point<BigRational>& x);
/// Over a residue ring; FieldRequired unless the ring is F_p with p odd.
OrbitLabel classify(const Point<Residue>& x);
/// Integer coordinates read in the given field.
OrbitLabel classify(const Point<BigRational>& x, const FieldSpec& field);

template <class T>
bool stabilizer_check(const Point<T>& y, const GroupElement<T>& g) {
  return act(SpaceId::CubeSplit, y, g) == y;
}

/// Representative of each boundary row, as an integer cube point.
Point<BigRational> boundary_representative(OrbitTag tag);
const std::vector<OrbitTag>& boundary_tags();

/// Character induced by omega on the torus of the stabilizer of the row's
/// representative. Parameter order per row:
///   Zero          (u, v, w)               (vw/u)^4
///   Rk2Span1      (u, v, c', c), u = cv    (c'/c)^2
///   Rk1Span1      (a, a', b', b, c', c), a = bc    (b'c'/a')^2
///   DegenForm     (a1, a3, c1, c3), a1 c3 = a3 c1  (c1/c3)^2
///   LeftKerSpan2  (u, a', c', c)          (u/a')^2
///   RightKerSpan2 (a1, a2, b', b)         (b'/b)^2
/// Throws ConstraintViolated if the row constraint fails.
BigRational omega_flat(OrbitTag row, const std::vector<BigRational>& params);

/// Element of the stabilizer of the row's representative with the given
/// torus parameters and extra unipotent parameters.
GroupElement<BigRational> stabilizer_element(OrbitTag row, const std::vector<BigRational>& torus,
                                             const std::vector<BigRational>& unipotent);

struct LfeRowReport {
  OrbitTag row;
  int trials = 0;
  int stabilizer_failures = 0;
  int character_failures = 0;
  int failures() const { return stabilizer_failures + character_failures; }
};

std::vector<LfeRowReport> verify_hypothesis_lfe(int trials, std::uint64_t seed);

struct SweepReport {
  int trials = 0;
  int label_changes = 0;
  OrbitLabel base;
};

/// Applies random group elements over the field and re-classifies.
SweepReport orbit_stability_sweep(const Point<BigRational>& representative, int trials, const FieldSpec& field,
                                  std::uint64_t seed);

}  // namespace pvzeta
