#pragma once

#include <json.hpp>

#include "hochlab/graded.hpp"
#include "hochlab/linalg.hpp"

namespace hochlab {

using Json = nlohmann::json;

// Matrices are {"rows", "cols", "entries": [[r, c, "p/q"], ...]}.
Json to_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const Json& j);

Json to_json(const SparseVector& v);

// {"degrees": {"q": ["label", ...]}}
Json to_json(const GradedSpace& s);
GradedSpace space_from_json(const Json& j);

// Adds "window": [min, max], "truncated": [below, above] and "differential": {"q": matrix}.
Json to_json(const ChainComplexWindow& c);
ChainComplexWindow complex_from_json(const Json& j);

Json to_json(const HomologyResult& h);

}  // namespace hochlab
