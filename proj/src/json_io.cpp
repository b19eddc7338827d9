#include "dwr/json_io.hpp"

#include <stdexcept>

namespace dwr {

json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("expected complex as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const CPoly& p) {
  json arr = json::array();
  for (const cplx& c : p.coeffs()) arr.push_back(to_json(c));
  return arr;
}

CPoly poly_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected coefficient array");
  std::vector<cplx> c;
  for (const auto& entry : j) c.push_back(cplx_from_json(entry));
  return CPoly(std::move(c));
}

json to_json(const QESpace& v) {
  json members = json::array();
  for (const QuasiExp& f : v.members)
    members.push_back(json{{"coeffs", to_json(f.p)}, {"mu", to_json(f.base.mu)}});
  return json{{"members", members}};
}

QESpace space_from_json(const json& j) {
  if (!j.contains("members") || !j["members"].is_array())
    throw std::invalid_argument("expected {\"members\": [...]}");
  QESpace v;
  for (const auto& m : j["members"]) {
    if (!m.contains("coeffs") || !m.contains("mu"))
      throw std::invalid_argument("member needs \"coeffs\" and \"mu\"");
    v.members.push_back({poly_from_json(m["coeffs"]), LogBase{cplx_from_json(m["mu"])}});
  }
  return v;
}

json to_json(const InverseProblem& prob) {
  json mus = json::array();
  for (const cplx& m : prob.mus) mus.push_back(to_json(m));
  return json{{"mus", mus},
              {"degrees", prob.degrees},
              {"half_step", to_json(prob.h)},
              {"target", to_json(prob.target_w)}};
}

InverseProblem problem_from_json(const json& j) {
  for (const char* key : {"mus", "degrees", "target"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("problem needs \"") + key + "\"");
  InverseProblem prob;
  for (const auto& m : j["mus"]) prob.mus.push_back(cplx_from_json(m));
  prob.degrees = j["degrees"].get<std::vector<int>>();
  if (j.contains("half_step")) prob.h = cplx_from_json(j["half_step"]);
  prob.target_w = poly_from_json(j["target"]);
  return prob;
}

json to_json(const SolutionSet& sols) {
  json arr = json::array();
  for (size_t s = 0; s < sols.solutions.size(); ++s) {
    json entry{{"space", to_json(sols.solutions[s])}, {"residual", sols.residuals[s]}};
    if (sols.real_flags[s].has_value()) entry["real"] = *sols.real_flags[s];
    arr.push_back(std::move(entry));
  }
  return json{{"solutions", arr}, {"max_residual", sols.max_residual}};
}

json to_json(const HarnessReport& rep) {
  return json{{"trials", rep.trials},
              {"solutions", rep.total_solutions},
              {"reality_failures", static_cast<int>(rep.reality_failures.size())},
              {"failed_trials", rep.reality_failures},
              {"max_residual", rep.max_residual}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace dwr
