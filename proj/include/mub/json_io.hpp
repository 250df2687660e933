#pragma once

// JSON forms of the library's values and reports.
//
//   polynomial  {"n": 4, "terms": [{"exp": [2,0,0,0], "num": "1", "den": "1"}, ...]}
//   matrix      {"rows": r, "cols": c, "re": [...], "im": [...]}   (row-major)
//   certificate {"n": ..., "polys": [...], "cofactors": [...]}
//
// Big integers are decimal strings.

#include "json.hpp"
#include "mub/constellation.hpp"
#include "mub/gridsearch.hpp"
#include "mub/groebner.hpp"
#include "mub/lasserre.hpp"
#include "mub/linalg.hpp"
#include "mub/poly.hpp"

namespace mub::io {

using nlohmann::json;

json to_json(const poly::Polynomial& p);
// Throws std::invalid_argument on malformed input.
poly::Polynomial polynomial_from_json(const json& j,
                                      poly::MonomialOrder order = poly::MonomialOrder::GradedRevLex);

json to_json(const linalg::ComplexMatrix& m);
linalg::ComplexMatrix matrix_from_json(const json& j);

json to_json(const constellation::ConstellationSpec& spec);
json to_json(const constellation::ConstellationCounts& counts);
json to_json(const constellation::PolynomialSystem& sys);

json to_json(const groebner::Stats& stats);
json to_json(const groebner::GroebnerBasis& basis);

// Self-contained: the certified polynomials travel with their cofactors.
json certificate_to_json(std::span<const poly::Polynomial> polys, const groebner::Certificate& cert);
struct CertificateFile {
  std::vector<poly::Polynomial> polys;
  groebner::Certificate cert;
};
CertificateFile certificate_from_json(const json& j);

json to_json(const gridsearch::ExclusionReport& report);
json to_json(const lasserre::LevelRecord& level);
json to_json(const lasserre::HierarchyResult& result);

}  // namespace mub::io
