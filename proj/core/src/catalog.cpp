#include "pvzeta/catalog.hpp"

#include <sstream>

#include "pvzeta/invariants.hpp"

namespace pvzeta {

std::string to_string(SpaceId id) {
  switch (id) {
    case SpaceId::Tate: return "tate";
    case SpaceId::Matrix2: return "matrix2";
    case SpaceId::CubeSplit: return "cube-split";
  }
  return "?";
}

SpaceId parse_space(const std::string& s) {
  if (s == "tate") return SpaceId::Tate;
  if (s == "matrix2") return SpaceId::Matrix2;
  if (s == "cube-split") return SpaceId::CubeSplit;
  fail(ErrorCode::InvalidArgument, "unknown space '" + s + "' (expected tate, matrix2, cube-split)");
}

namespace {

IntPoly symbolic_invariant(SpaceId s, int n) {
  Point<IntPoly> vars;
  for (int i = 0; i < n; ++i) vars.push_back(IntPoly::variable(n, i));
  return eval_invariant(s, vars);
}

PvsDescriptor make(SpaceId id, int dim, int deg, BigRational shift, std::vector<int> perm) {
  return PvsDescriptor{id, to_string(id), dim, deg, shift, std::move(perm), symbolic_invariant(id, dim)};
}

}  // namespace

const PvsDescriptor& descriptor(SpaceId id) {
  // lambda_0 solves |det rho|^{1/2} = |f|^{lambda_0}; det rho = omega^{dim/deg}.
  static const PvsDescriptor tate = make(SpaceId::Tate, 1, 1, BigRational(1, 2), {0});
  static const PvsDescriptor m2 = make(SpaceId::Matrix2, 4, 2, BigRational(1), {0, 2, 1, 3});
  static const PvsDescriptor cube = make(SpaceId::CubeSplit, 8, 4, BigRational(1), {0, 2, 1, 3, 4, 6, 5, 7});
  switch (id) {
    case SpaceId::Tate: return tate;
    case SpaceId::Matrix2: return m2;
    case SpaceId::CubeSplit: return cube;
  }
  return tate;
}

const std::vector<SpaceId>& all_spaces() {
  static const std::vector<SpaceId> v{SpaceId::Tate, SpaceId::Matrix2, SpaceId::CubeSplit};
  return v;
}

BigRational density_shift(SpaceId s) { return descriptor(s).density_shift; }

namespace {

constexpr int kMaxRejections = 10000;

size_t components(SpaceId s) { return s == SpaceId::Tate ? 1 : s == SpaceId::Matrix2 ? 2 : 3; }

}  // namespace

GroupElement<BigRational> random_group_element_q(SpaceId s, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  std::vector<Mat2<BigRational>> m;
  for (size_t i = 0; i < components(s); ++i) {
    for (int tries = 0;; ++tries) {
      if (tries >= kMaxRejections) fail(ErrorCode::SamplingExhausted, "no invertible sample found");
      Mat2<BigRational> g;
      if (s == SpaceId::Tate)
        g = {BigRational(d(rng)), BigRational(0), BigRational(0), BigRational(1)};
      else
        g = {BigRational(d(rng)), BigRational(d(rng)), BigRational(d(rng)), BigRational(d(rng))};
      if (g.det() != 0) {
        m.push_back(g);
        break;
      }
    }
  }
  return GroupElement<BigRational>(s, std::move(m));
}

GroupElement<Residue> random_group_element_mod(SpaceId s, const ResidueRing& ring, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, ring.modulus() - 1);
  auto r = [&] { return Residue(ring, static_cast<std::int64_t>(d(rng))); };
  Residue zero(ring, std::int64_t(0)), one(ring, std::int64_t(1));
  std::vector<Mat2<Residue>> m;
  for (size_t i = 0; i < components(s); ++i) {
    for (int tries = 0;; ++tries) {
      if (tries >= kMaxRejections) fail(ErrorCode::SamplingExhausted, "no invertible sample found");
      Mat2<Residue> g = s == SpaceId::Tate ? Mat2<Residue>{r(), zero, zero, one} : Mat2<Residue>{r(), r(), r(), r()};
      if (g.det().is_unit()) {
        m.push_back(g);
        break;
      }
    }
  }
  return GroupElement<Residue>(s, std::move(m));
}

GroupElement<BigRational> random_group_element(SpaceId s, const RingSpec& ring, std::uint64_t seed) {
  require(ring.p == 0, ErrorCode::InvalidArgument, "use random_group_element_residue for Z/p^k");
  std::mt19937_64 rng(seed);
  return random_group_element_q(s, rng, ring.bound);
}

GroupElement<Residue> random_group_element_residue(SpaceId s, const ResidueRing& ring, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_group_element_mod(s, ring, rng);
}

std::string format_point(const Point<BigRational>& x) {
  std::ostringstream os;
  for (size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << to_string(x[i]);
  return os.str();
}

Point<BigRational> parse_point(const std::string& csv) {
  Point<BigRational> x;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) fail(ErrorCode::InvalidArgument, "empty coordinate in point");
    x.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  return x;
}

}  // namespace pvzeta
