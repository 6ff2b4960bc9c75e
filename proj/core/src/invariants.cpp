#include "pvzeta/invariants.hpp"

#include <random>

namespace pvzeta {

EigencharReport check_eigencharacter(SpaceId s, int trials, std::uint64_t seed) {
  require(trials >= 1, ErrorCode::InvalidArgument, "trials must be >= 1");
  EigencharReport rep{s, trials, 0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-20, 20);
  int n = descriptor(s).dim;
  for (int t = 0; t < trials; ++t) {
    Point<BigRational> x(static_cast<size_t>(n));
    for (auto& v : x) v = coord(rng);
    auto g = random_group_element_q(s, rng);
    BigRational lhs = eval_invariant(s, act(s, x, g));
    BigRational rhs = eigencharacter(s, g) * eval_invariant(s, x);
    if (lhs != rhs) {
      ++rep.failures;
      if (rep.counterexamples.size() < 5)
        rep.counterexamples.push_back("x=" + format_point(x) + " f(xg)=" + to_string(lhs) +
                                      " omega(g)f(x)=" + to_string(rhs));
    }
  }
  return rep;
}

}  // namespace pvzeta
