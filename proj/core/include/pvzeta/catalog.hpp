#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pvzeta/arith.hpp"
#include "pvzeta/int_poly.hpp"

namespace pvzeta {

enum class SpaceId { Tate, Matrix2, CubeSplit };

std::string to_string(SpaceId id);
SpaceId parse_space(const std::string& s);

struct PvsDescriptor {
  SpaceId id;
  std::string name;
  int dim;
  int invariant_degree;
  BigRational density_shift;
  /// Index permutation realizing the pairing: <y, x> = sum_k y_k x_{perm[k]}.
  std::vector<int> pairing_perm;
  IntPoly basic_invariant;
};

const PvsDescriptor& descriptor(SpaceId id);
const std::vector<SpaceId>& all_spaces();

// ---- Ring helpers shared by the templated actions -------------------------

inline BigRational inv(const BigRational& x) {
  if (x == 0) fail(ErrorCode::NonInvertibleElement, "zero is not invertible");
  return BigRational(1) / x;
}
inline double inv(double x) {
  if (x == 0.0) fail(ErrorCode::NonInvertibleElement, "zero is not invertible");
  return 1.0 / x;
}
inline Residue inv(const Residue& x) { return x.inverse(); }

inline BigRational one_like(const BigRational&) { return BigRational(1); }
inline double one_like(double) { return 1.0; }
inline Residue one_like(const Residue& x) { return Residue(x.ring(), std::int64_t(1)); }

inline BigRational zero_like(const BigRational&) { return BigRational(0); }
inline double zero_like(double) { return 0.0; }
inline Residue zero_like(const Residue& x) { return Residue(x.ring(), std::int64_t(0)); }

inline bool is_zero(const BigRational& x) { return x == 0; }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Residue& x) { return x.value() == 0; }

inline bool is_invertible(const BigRational& x) { return x != 0; }
inline bool is_invertible(double x) { return x != 0.0; }
inline bool is_invertible(const Residue& x) { return x.is_unit(); }

template <class T>
struct Mat2 {
  T a, b, c, d;  // [[a, b], [c, d]]

  T det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 scaled(const T& s) const { return {s * a, s * b, s * c, s * d}; }
  Mat2 transpose() const { return {a, c, b, d}; }
  Mat2 inverse() const {
    T dt = det();
    if (!is_invertible(dt)) fail(ErrorCode::NonInvertibleElement, "matrix determinant is not a unit");
    T id = inv(dt);
    return {d * id, -b * id, -c * id, a * id};
  }
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  static Mat2 from(const T* x) { return {x[0], x[1], x[2], x[3]}; }
  void store(T* x) const {
    x[0] = a;
    x[1] = b;
    x[2] = c;
    x[3] = d;
  }
  static Mat2 diag(const T& x, const T& y, const T& zero) { return {x, zero, zero, y}; }
};

/// Group element with inverses cached at construction. Tate: the scalar s is
/// stored as diag(s, 1) in slot 0. Matrix2: (g, h) in slots 0, 1. Cube:
/// (g1, g2, g3).
template <class T>
class GroupElement {
 public:
  GroupElement(SpaceId space, std::vector<Mat2<T>> m) : space_(space), m_(std::move(m)) {
    size_t want = space == SpaceId::Tate ? 1 : space == SpaceId::Matrix2 ? 2 : 3;
    require(m_.size() == want, ErrorCode::InvalidArgument, "wrong number of group components");
    for (const auto& x : m_) inv_.push_back(x.inverse());
  }
  static GroupElement tate(const T& s) {
    T z = zero_like(s);
    return GroupElement(SpaceId::Tate, {Mat2<T>{s, z, z, one_like(s)}});
  }

  SpaceId space() const { return space_; }
  const Mat2<T>& operator[](size_t i) const { return m_[i]; }
  const Mat2<T>& inverse(size_t i) const { return inv_[i]; }
  const std::vector<Mat2<T>>& components() const { return m_; }

  GroupElement operator*(const GroupElement& o) const {
    std::vector<Mat2<T>> r;
    for (size_t i = 0; i < m_.size(); ++i) r.push_back(m_[i] * o.m_[i]);
    return GroupElement(space_, std::move(r));
  }

 private:
  SpaceId space_;
  std::vector<Mat2<T>> m_;
  std::vector<Mat2<T>> inv_;
};

template <class T>
using Point = std::vector<T>;

namespace detail {

template <class T>
void check_dim(SpaceId s, const Point<T>& x) {
  require(static_cast<int>(x.size()) == descriptor(s).dim, ErrorCode::InvalidArgument, "point has wrong dimension");
}

// (y1, y2) = (m11 x1 + m21 x2, m12 x1 + m22 x2): the row-vector action of a
// 2x2 matrix on the pair index.
template <class T>
Point<T> mix_pair(const Mat2<T>& x1, const Mat2<T>& x2, const Mat2<T>& m) {
  Point<T> y(8, x1.a);
  (x1.scaled(m.a) + x2.scaled(m.c)).store(y.data());
  (x1.scaled(m.b) + x2.scaled(m.d)).store(y.data() + 4);
  return y;
}

}  // namespace detail

/// x rho(g). Right action: act(act(x, g), h) = act(x, g h).
template <class T>
Point<T> act(SpaceId s, const Point<T>& x, const GroupElement<T>& g) {
  detail::check_dim(s, x);
  require(g.space() == s, ErrorCode::WrongSpace, "group element belongs to another space");
  switch (s) {
    case SpaceId::Tate:
      return {x[0] * g[0].a};
    case SpaceId::Matrix2: {
      Point<T> y(4, x[0]);
      (g.inverse(1) * Mat2<T>::from(x.data()) * g[0]).store(y.data());
      return y;
    }
    case SpaceId::CubeSplit: {
      auto x1 = g.inverse(0) * Mat2<T>::from(x.data()) * g[1];
      auto x2 = g.inverse(0) * Mat2<T>::from(x.data() + 4) * g[1];
      return detail::mix_pair(x1, x2, g[2]);
    }
  }
  return x;
}

/// Contragredient action on the dual space.
template <class T>
Point<T> dual_act(SpaceId s, const Point<T>& y, const GroupElement<T>& g) {
  detail::check_dim(s, y);
  require(g.space() == s, ErrorCode::WrongSpace, "group element belongs to another space");
  switch (s) {
    case SpaceId::Tate:
      return {y[0] * g.inverse(0).a};
    case SpaceId::Matrix2: {
      Point<T> r(4, y[0]);
      (g.inverse(0) * Mat2<T>::from(y.data()) * g[1]).store(r.data());
      return r;
    }
    case SpaceId::CubeSplit: {
      auto y1 = g.inverse(1) * Mat2<T>::from(y.data()) * g[0];
      auto y2 = g.inverse(1) * Mat2<T>::from(y.data() + 4) * g[0];
      return detail::mix_pair(y1, y2, g.inverse(2).transpose());
    }
  }
  return y;
}

template <class T>
T pairing(SpaceId s, const Point<T>& y, const Point<T>& x) {
  detail::check_dim(s, x);
  detail::check_dim(s, y);
  const auto& perm = descriptor(s).pairing_perm;
  T acc = y[0] * x[perm[0]];
  for (size_t k = 1; k < x.size(); ++k) acc = acc + y[k] * x[perm[k]];
  return acc;
}

template <class T>
T eigencharacter(SpaceId s, const GroupElement<T>& g) {
  switch (s) {
    case SpaceId::Tate:
      return g[0].a;
    case SpaceId::Matrix2:
      return g[0].det() * inv(g[1].det());
    case SpaceId::CubeSplit: {
      T r = g[1].det() * g[2].det() * inv(g[0].det());
      return r * r;
    }
  }
  fail(ErrorCode::WrongSpace, "unknown space");
}

BigRational density_shift(SpaceId s);

/// Ring in which random group elements are drawn: integers (embedded in Q,
/// entries in [-bound, bound]) or Z/p^k.
struct RingSpec {
  std::uint64_t p = 0;  // 0: integers
  unsigned k = 1;
  int bound = 5;

  static RingSpec integers(int bound = 5) { return RingSpec{0, 1, bound}; }
  static RingSpec residues(std::uint64_t p, unsigned k) { return RingSpec{p, k, 0}; }
};

/// Uniform entries, invertibility by rejection. Deterministic in the rng
/// state. Throws SamplingExhausted after 10^4 rejections.
GroupElement<BigRational> random_group_element_q(SpaceId s, std::mt19937_64& rng, int bound = 5);
GroupElement<Residue> random_group_element_mod(SpaceId s, const ResidueRing& ring, std::mt19937_64& rng);

/// Same as above, seeded: identical seeds give identical elements.
GroupElement<BigRational> random_group_element(SpaceId s, const RingSpec& ring, std::uint64_t seed);
GroupElement<Residue> random_group_element_residue(SpaceId s, const ResidueRing& ring, std::uint64_t seed);

std::string format_point(const Point<BigRational>& x);

Point<BigRational> parse_point(const std::string& csv);

}  // namespace pvzeta
