#pragma once

// SDPA sparse text format and a JSON twin for SDPInstance.
//
// SDPA encodes  minimise c^T y  s.t.  sum_i y_i F_i - F_0 >= 0, so the
// exported F_0 is -M0. Equalities a^T y = b are written as a pair of
// diagonal (LP block) rows a^T y - b >= 0 and -a^T y + b >= 0; the reader
// folds such pairs back into equalities. The objective constant c0 travels in
// a comment line "* objective_constant <value>".

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "mub/sdpsolve.hpp"

namespace mub::sdpsolve {

void write_sdpa(std::ostream& out, const SDPInstance& inst);
// Throws std::invalid_argument on malformed input.
SDPInstance read_sdpa(std::istream& in);

nlohmann::json to_json(const SDPInstance& inst);
SDPInstance instance_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SDPSolution& sol, bool include_dual = false);

}  // namespace mub::sdpsolve
