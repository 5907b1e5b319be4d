#include "rdstab/report.hpp"

namespace rdstab {

using nlohmann::json;

json to_json(const ConditionEntry& entry) {
  json j;
  j["holds"] = entry.holds;
  j["witness"] = entry.witness ? json(*entry.witness) : json(nullptr);
  j["margin"] = entry.margin;
  j["applicable"] = entry.applicable;
  return j;
}

json to_json(const HypothesisReport& rep) {
  return json{
      {"con1", to_json(rep.con1)},
      {"con5", to_json(rep.con5)},
      {"con2", to_json(rep.con2)},
      {"con3", to_json(rep.con3)},
      {"con4", to_json(rep.con4)},
      {"con6", to_json(rep.con6)},
      {"theorem5", to_json(rep.theorem5)},
      {"phi_sublinear", to_json(rep.phi_sublinear)},
      {"phi_gen", to_json(rep.phi_gen)},
  };
}

json to_json(const EquilibriumReport& rep) {
  return json{
      {"alpha", rep.alpha},
      {"u_star", rep.u_star},
      {"v_star", rep.v_star},
      {"jac", {{rep.jac[0][0], rep.jac[0][1]}, {rep.jac[1][0], rep.jac[1][1]}}},
      {"trace", rep.trace},
      {"det", rep.det},
      {"ode_stable", rep.ode_stable},
      {"activator_inhibitor", rep.activator_inhibitor},
  };
}

json to_json(const TuringReport& rep) {
  json d_tilde = json::array();
  for (const auto& m : rep.d_tilde) {
    d_tilde.push_back(
        {{"index", m.index}, {"lambda_i", m.lambda_i}, {"d_tilde", m.d_tilde}});
  }
  json quads = json::array();
  for (const auto& q : rep.Q) {
    quads.push_back({{"index", q.index}, {"p", q.p}, {"q", q.q}});
  }
  return json{
      {"F0", rep.F0},
      {"i_alpha", rep.i_alpha ? json(*rep.i_alpha) : json(nullptr)},
      {"d_tilde", d_tilde},
      {"d_crit", rep.d_crit ? json(*rep.d_crit) : json(nullptr)},
      {"ratio", rep.ratio},
      {"verdict", to_string(rep.verdict)},
      {"witness_mode",
       rep.witness_mode ? json(*rep.witness_mode) : json(nullptr)},
      {"Q", quads},
      {"boundary_tie", rep.boundary_tie},
  };
}

json to_json(const BoundsReport& rep) {
  return json{
      {"delta", rep.delta},
      {"g_delta", rep.g_delta},
      {"u1", rep.u1},
      {"u2", rep.u2},
      {"v1", rep.v1},
      {"v2", rep.v2},
      {"C1", rep.C1},
      {"C2", rep.C2},
      {"C2_box", rep.C2_box},
      {"phi_prime_0", rep.phi_prime_0},
      {"valid", rep.valid},
  };
}

}  // namespace rdstab
