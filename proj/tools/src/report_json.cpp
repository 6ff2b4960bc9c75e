#include "pvzeta_cli/report_json.hpp"

#include <sstream>

namespace pvzeta::cli {

namespace {

json complex_json(const ComplexValue& z) { return json::array({z.real(), z.imag()}); }

json cpoly_json(const CPoly& c) {
  json a = json::array();
  for (int i = 0; i <= c.degree(); ++i) a.push_back(complex_json(c[i]));
  return a;
}

}  // namespace

json poly_json(const QPoly& q) {
  json a = json::array();
  for (int i = 0; i <= q.degree(); ++i) a.push_back(to_string(q[i]));
  return a;
}

json rational_function_json(const RationalFunction& r) {
  return json{{"num", poly_json(r.num())}, {"den", poly_json(r.den())}, {"display", r.str()}};
}

json to_json(const PvsDescriptor& d) {
  return json{{"name", to_string(d.id)},
              {"dim", d.dim},
              {"invariant_degree", d.invariant_degree},
              {"density_shift", to_string(d.density_shift)},
              {"pairing_perm", d.pairing_perm},
              {"invariant", d.basic_invariant.str()}};
}

json to_json(const EigencharReport& r) {
  return json{{"space", to_string(r.space)},
              {"trials", r.trials},
              {"failures", r.failures},
              {"counterexamples", r.counterexamples}};
}

json to_json(const OrbitLabel& l) { return json{{"tag", to_string(l.tag)}, {"signature", l.signature}}; }

std::string omega_flat_formula(OrbitTag row) {
  switch (row) {
    case OrbitTag::Zero: return "(vw/u)^4";
    case OrbitTag::Rk2Span1: return "(c'/c)^2";
    case OrbitTag::Rk1Span1: return "(b'c'/a')^2";
    case OrbitTag::DegenForm: return "(c1/c3)^2";
    case OrbitTag::LeftKerSpan2: return "(u/a')^2";
    case OrbitTag::RightKerSpan2: return "(b'/b)^2";
    case OrbitTag::Open: break;
  }
  return "";
}

json to_json(const LfeRowReport& r) {
  return json{{"row", to_string(r.row)},
              {"omega_flat", omega_flat_formula(r.row)},
              {"trials", r.trials},
              {"stabilizer_failures", r.stabilizer_failures},
              {"character_failures", r.character_failures}};
}

json to_json(const ZetaResult& r, SpaceId s, std::uint64_t p) {
  json poles = json::array();
  for (const auto& q : r.poles) poles.push_back(to_string(q));
  json j = rational_function_json(r.zeta);
  j["space"] = to_string(s);
  j["p"] = p;
  j["method"] = r.method;
  j["holdout_verified"] = r.holdout_verified;
  j["holdout_checked"] = r.holdout_checked;
  j["poles"] = poles;
  return j;
}

json to_json(const RealZetaSample& r) {
  json j{{"space", to_string(r.space)},
         {"s", complex_json(r.s)},
         {"sigma", r.sigma},
         {"value", complex_json(r.value)},
         {"est_error", r.est_error},
         {"evaluations", r.evaluations}};
  j["orbit_filter"] = r.orbit_filter ? json(*r.orbit_filter > 0 ? "+" : "-") : json(nullptr);
  return j;
}

json to_json(const FourierCheckReport& r, SpaceId s, std::uint64_t p) {
  return json{{"space", to_string(s)},
              {"p", p},
              {"trials", r.trials},
              {"max_involution_error", r.max_involution_error},
              {"max_plancherel_error", r.max_plancherel_error}};
}

json to_json(const GammaResult& r) {
  json j{{"space", to_string(r.space)},
         {"p", r.p},
         {"residual", r.residual},
         {"confirmed", r.confirmed},
         {"exact", r.exact.has_value()},
         {"convention", r.convention}};
  if (r.exact) {
    j["gamma_num"] = poly_json(r.exact->num());
    j["gamma_den"] = poly_json(r.exact->den());
    j["display"] = r.exact->str();
  } else {
    auto g = r.gamma.normalized();
    j["gamma_num"] = cpoly_json(g.num);
    j["gamma_den"] = poly_json(g.den);
    j["display"] = g.str();
  }
  json per = json::array();
  for (const auto& g : r.per_test) per.push_back(g.str());
  j["per_test"] = per;
  return j;
}

json to_json(const ProbeReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json g = json::array();
    for (const auto& row : s.gamma) {
      json jr = json::array();
      for (const auto& z : row) jr.push_back(complex_json(z));
      g.push_back(jr);
    }
    samples.push_back(json{{"dual_exponent", complex_json(s.exponent)},
                           {"skipped", s.skipped},
                           {"warning", s.warning},
                           {"residual", s.residual},
                           {"tail_bound", s.tail_bound},
                           {"gamma", g}});
  }
  return json{{"space", "cube-split"},
              {"p", r.p},
              {"signatures", r.signatures},
              {"dual_strata", r.dual_strata},
              {"tests", r.tests},
              {"samples", samples},
              {"max_residual", r.max_residual},
              {"note", "strata are square classes, not asserted to be the open orbits"}};
}

}  // namespace pvzeta::cli
