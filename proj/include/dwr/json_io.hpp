#ifndef DWR_JSON_IO_HPP
#define DWR_JSON_IO_HPP

#include "dwr/inverse.hpp"
#include "dwr/quasiexp.hpp"

#include <json.hpp>

#include <string>

namespace dwr {

// Complex numbers travel as [re, im]; polynomials as ascending coefficient
// lists. nlohmann::json with ordered_json keeps field order deterministic so
// identical inputs serialize byte-identically.
using json = nlohmann::ordered_json;

json to_json(const cplx& z);
cplx cplx_from_json(const json& j);

json to_json(const CPoly& p);
CPoly poly_from_json(const json& j);

json to_json(const QESpace& v);
QESpace space_from_json(const json& j);

json to_json(const InverseProblem& prob);
InverseProblem problem_from_json(const json& j);

json to_json(const SolutionSet& sols);
json to_json(const HarnessReport& rep);

std::string dump(const json& j);  // 2-space indent, trailing newline

}  // namespace dwr

#endif
