#include "pvzeta/orbits.hpp"

#include <random>

namespace pvzeta {

std::string to_string(OrbitTag t) {
  switch (t) {
    case OrbitTag::Zero: return "ZERO";
    case OrbitTag::Rk1Span1: return "RK1_SPAN1";
    case OrbitTag::Rk2Span1: return "RK2_SPAN1";
    case OrbitTag::LeftKerSpan2: return "LEFTKER_SPAN2";
    case OrbitTag::RightKerSpan2: return "RIGHTKER_SPAN2";
    case OrbitTag::DegenForm: return "DEGEN_FORM";
    case OrbitTag::Open: return "OPEN";
  }
  return "?";
}

OrbitTag parse_orbit_tag(const std::string& s) {
  for (auto t : {OrbitTag::Zero, OrbitTag::Rk1Span1, OrbitTag::Rk2Span1, OrbitTag::LeftKerSpan2,
                 OrbitTag::RightKerSpan2, OrbitTag::DegenForm, OrbitTag::Open})
    if (to_string(t) == s) return t;
  fail(ErrorCode::InvalidArgument, "unknown orbit tag '" + s + "'");
}

std::string OrbitLabel::str() const {
  return tag == OrbitTag::Open ? "OPEN(" + signature + ")" : to_string(tag);
}

FieldSpec parse_field(const std::string& s) {
  if (s == "Q" || s == "q") return FieldSpec::rationals();
  if (s.rfind("fp:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(s.substr(3));
    } catch (const std::exception&) {
    }
    require(is_prime(p), ErrorCode::InvalidArgument, "field characteristic must be prime, got '" + s + "'");
    return FieldSpec::fp(p);
  }
  fail(ErrorCode::InvalidArgument, "field must be 'Q' or 'fp:<prime>'");
}

namespace {

template <class T>
int rank(std::vector<std::vector<T>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && is_zero(m[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    T iv = inv(m[r][c]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (is_zero(m[i][c])) continue;
      T f = m[i][c] * iv;
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

// Decision tree for the boundary; assumes P(x) = 0.
template <class T>
OrbitTag boundary_tag(const Point<T>& x) {
  std::vector<T> x1(x.begin(), x.begin() + 4), x2(x.begin() + 4, x.end());
  int span = rank(std::vector<std::vector<T>>{x1, x2});
  if (span == 0) return OrbitTag::Zero;
  if (span == 1) {
    const auto& g = rank(std::vector<std::vector<T>>{x1}) == 1 ? x1 : x2;
    return is_zero(detail::det2(g.data())) ? OrbitTag::Rk1Span1 : OrbitTag::Rk2Span1;
  }
  auto q = coeffs_Fx(SpaceId::CubeSplit, x);
  if (is_zero(q.a) && is_zero(q.b) && is_zero(q.c)) {
    // Common left kernel <=> the 2x4 block [x1 | x2] has rank < 2.
    std::vector<std::vector<T>> side{{x[0], x[1], x[4], x[5]}, {x[2], x[3], x[6], x[7]}};
    return rank(side) < 2 ? OrbitTag::LeftKerSpan2 : OrbitTag::RightKerSpan2;
  }
  return OrbitTag::DegenForm;
}

}  // namespace

OrbitLabel classify(const Point<BigRational>& x) {
  require(x.size() == 8, ErrorCode::WrongSpace, "classification is defined on the cube space");
  BigRational P = eval_invariant(SpaceId::CubeSplit, x);
  if (P != 0) return {OrbitTag::Open, squarefree_class(P).get_str()};
  return {boundary_tag(x), ""};
}

OrbitLabel classify(const Point<Residue>& x) {
  require(x.size() == 8, ErrorCode::WrongSpace, "classification is defined on the cube space");
  const auto& ring = x[0].ring();
  if (!ring.is_field()) fail(ErrorCode::FieldRequired, "Z/p^k with k > 1 is not a field");
  if (ring.p() == 2) fail(ErrorCode::FieldRequired, "classification needs odd characteristic");
  Residue P = eval_invariant(SpaceId::CubeSplit, x);
  if (P.value() != 0) {
    std::int64_t p = static_cast<std::int64_t>(ring.p());
    if (legendre(static_cast<std::int64_t>(P.value()), p) == 1) return {OrbitTag::Open, "1"};
    std::int64_t n = 2;
    while (legendre(n, p) != -1) ++n;
    return {OrbitTag::Open, std::to_string(n)};
  }
  return {boundary_tag(x), ""};
}

namespace {

Point<Residue> reduce_point(const Point<BigRational>& x, const ResidueRing& ring) {
  Point<Residue> r;
  for (const auto& v : x) {
    Residue den(ring, BigInt(v.get_den()));
    r.push_back(Residue(ring, BigInt(v.get_num())) * den.inverse());
  }
  return r;
}

}  // namespace

OrbitLabel classify(const Point<BigRational>& x, const FieldSpec& field) {
  if (field.is_q()) return classify(x);
  return classify(reduce_point(x, ResidueRing(field.p, 1)));
}

const std::vector<OrbitTag>& boundary_tags() {
  static const std::vector<OrbitTag> t{OrbitTag::Zero,         OrbitTag::Rk1Span1,      OrbitTag::Rk2Span1,
                                       OrbitTag::LeftKerSpan2, OrbitTag::RightKerSpan2, OrbitTag::DegenForm};
  return t;
}

Point<BigRational> boundary_representative(OrbitTag tag) {
  auto pt = [](std::initializer_list<int> v) {
    Point<BigRational> x;
    for (int c : v) x.emplace_back(c);
    return x;
  };
  switch (tag) {
    case OrbitTag::Zero: return pt({0, 0, 0, 0, 0, 0, 0, 0});
    case OrbitTag::Rk1Span1: return pt({0, 0, 0, 0, 0, 1, 0, 0});
    case OrbitTag::Rk2Span1: return pt({0, 0, 0, 0, 1, 0, 0, 1});
    case OrbitTag::LeftKerSpan2: return pt({1, 0, 0, 0, 0, 1, 0, 0});
    case OrbitTag::RightKerSpan2: return pt({0, 1, 0, 0, 0, 0, 0, 1});
    case OrbitTag::DegenForm: return pt({0, 1, 0, 0, 1, 0, 0, 1});
    case OrbitTag::Open: break;
  }
  fail(ErrorCode::InvalidArgument, "open orbits have no single boundary representative");
}

namespace {

size_t torus_arity(OrbitTag row) {
  switch (row) {
    case OrbitTag::Zero: return 3;
    case OrbitTag::Rk1Span1: return 6;
    default: return 4;
  }
}

void check_params(OrbitTag row, const std::vector<BigRational>& p) {
  require(row != OrbitTag::Open, ErrorCode::InvalidArgument, "open orbits have no torus row");
  require(p.size() == torus_arity(row), ErrorCode::InvalidArgument,
          to_string(row) + " expects " + std::to_string(torus_arity(row)) + " parameters");
  for (const auto& v : p) require(v != 0, ErrorCode::ConstraintViolated, "torus parameters must be nonzero");
  bool ok = true;
  switch (row) {
    case OrbitTag::Rk2Span1: ok = p[0] == p[3] * p[1]; break;
    case OrbitTag::Rk1Span1: ok = p[0] == p[3] * p[5]; break;
    case OrbitTag::DegenForm: ok = p[0] * p[3] == p[1] * p[2]; break;
    default: break;
  }
  if (!ok) fail(ErrorCode::ConstraintViolated, "parameters violate the constraint of row " + to_string(row));
}

BigRational sq(const BigRational& x) { return x * x; }

}  // namespace

BigRational omega_flat(OrbitTag row, const std::vector<BigRational>& p) {
  check_params(row, p);
  switch (row) {
    case OrbitTag::Zero: return rpow(p[1] * p[2] / p[0], 4);
    case OrbitTag::Rk2Span1: return sq(p[2] / p[3]);
    case OrbitTag::Rk1Span1: return sq(p[2] * p[4] / p[1]);
    case OrbitTag::DegenForm: return sq(p[2] / p[3]);
    case OrbitTag::LeftKerSpan2: return sq(p[0] / p[1]);
    case OrbitTag::RightKerSpan2: return sq(p[2] / p[3]);
    case OrbitTag::Open: break;
  }
  fail(ErrorCode::InvalidArgument, "no torus row");
}

GroupElement<BigRational> stabilizer_element(OrbitTag row, const std::vector<BigRational>& p,
                                             const std::vector<BigRational>& unip) {
  check_params(row, p);
  auto n = [&](size_t i) { return i < unip.size() ? unip[i] : BigRational(0); };
  using M = Mat2<BigRational>;
  BigRational z = 0, o = 1;
  auto diag = [&](const BigRational& a, const BigRational& b) { return M{a, z, z, b}; };
  switch (row) {
    case OrbitTag::Zero:
      return {SpaceId::CubeSplit, {diag(p[0], p[0]), diag(p[1], p[1]), diag(p[2], p[2])}};
    case OrbitTag::Rk2Span1: {
      // g1 = c g2 with g2 = v N for a unipotent N.
      M N{o, n(0), z, o};
      return {SpaceId::CubeSplit, {N.scaled(p[0]), N.scaled(p[1]), M{p[2], n(1), z, p[3]}}};
    }
    case OrbitTag::Rk1Span1:
      return {SpaceId::CubeSplit, {M{p[0], n(0), z, p[1]}, M{p[2], n(1), z, p[3]}, M{p[4], n(2), z, p[5]}}};
    case OrbitTag::DegenForm: {
      const auto &a1 = p[0], &a3 = p[1], &c1 = p[2], &c3 = p[3];
      BigRational a2 = n(0), c2 = n(1);
      M g1{a1, a2, z, a3};
      M u{o / c3, -c2 / (c1 * c3), z, o / c3};
      return {SpaceId::CubeSplit, {g1, g1 * u, M{c1, c2, z, c3}}};
    }
    case OrbitTag::LeftKerSpan2:
      return {SpaceId::CubeSplit, {diag(p[0], p[1]), diag(p[0] / p[2], p[0] / p[3]), diag(p[2], p[3])}};
    case OrbitTag::RightKerSpan2:
      return {SpaceId::CubeSplit, {diag(p[0], p[1]), diag(p[2], p[3]), diag(p[0] / p[3], p[1] / p[3])}};
    case OrbitTag::Open: break;
  }
  fail(ErrorCode::InvalidArgument, "no stabilizer row");
}

namespace {

BigRational random_nonzero(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 9), sign(0, 1);
  BigRational r(num(rng) * (sign(rng) ? 1 : -1), den(rng));
  r.canonicalize();
  return r;
}

std::vector<BigRational> random_torus(OrbitTag row, std::mt19937_64& rng) {
  std::vector<BigRational> p(torus_arity(row));
  for (auto& v : p) v = random_nonzero(rng);
  switch (row) {
    case OrbitTag::Rk2Span1: p[0] = p[3] * p[1]; break;
    case OrbitTag::Rk1Span1: p[0] = p[3] * p[5]; break;
    case OrbitTag::DegenForm: p[1] = p[0] * p[3] / p[2]; break;
    default: break;
  }
  return p;
}

}  // namespace

std::vector<LfeRowReport> verify_hypothesis_lfe(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ud(-9, 9);
  std::vector<LfeRowReport> out;
  for (OrbitTag row : boundary_tags()) {
    LfeRowReport rep{row, trials, 0, 0};
    Point<BigRational> y = boundary_representative(row);
    for (int t = 0; t < trials; ++t) {
      auto params = random_torus(row, rng);
      std::vector<BigRational> unip{BigRational(ud(rng)), BigRational(ud(rng)), BigRational(ud(rng))};
      auto g = stabilizer_element(row, params, unip);
      if (!stabilizer_check(y, g)) ++rep.stabilizer_failures;
      if (eigencharacter(SpaceId::CubeSplit, g) != omega_flat(row, params)) ++rep.character_failures;
    }
    out.push_back(rep);
  }
  return out;
}

SweepReport orbit_stability_sweep(const Point<BigRational>& rep, int trials, const FieldSpec& field,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SweepReport out{trials, 0, classify(rep, field)};
  if (field.is_q()) {
    for (int t = 0; t < trials; ++t) {
      auto g = random_group_element_q(SpaceId::CubeSplit, rng, 3);
      if (!(classify(act(SpaceId::CubeSplit, rep, g)) == out.base)) ++out.label_changes;
    }
  } else {
    ResidueRing ring(field.p, 1);
    Point<Residue> x = reduce_point(rep, ring);
    for (int t = 0; t < trials; ++t) {
      auto g = random_group_element_mod(SpaceId::CubeSplit, ring, rng);
      if (!(classify(act(SpaceId::CubeSplit, x, g)) == out.base)) ++out.label_changes;
    }
  }
  return out;
}

}  // namespace pvzeta
