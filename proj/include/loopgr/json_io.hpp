#pragma once

#include <json.hpp>

#include "loopgr/cartan.hpp"
#include "loopgr/factorization.hpp"
#include "loopgr/p1bundles.hpp"

// JSON documents. Coefficients are strings ("3/7"); over k[x]/(x^m) a
// coefficient is an array of residue strings, lowest power of x first.
// Unknown fields are rejected with SchemaError.
namespace loopgr::json_io {

using nlohmann::json;

json to_json(const Scalar& c);
Scalar scalar_from_json(const json& j, const Ring& ring);

// {"terms": [[exponent, coefficient], ...], "precision": int | null}
json to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const json& j, const Ring& ring);

// {"num": poly, "den": poly}, poly = [[exponent, coefficient], ...].
json to_json(const RationalFunction& f);
RationalFunction rational_function_from_json(const json& j, const Ring& ring);

// {"n": int, "entries": [[series, ...], ...], "group": "GL" | "SL"}
json to_json(const LoopMatrix& a);
LoopMatrix loop_from_json(const json& j, const Ring& ring);

// {"points": [coefficient, ...], "loops": [loop, ...], "infinity_loop": loop | null, "n": int}
json to_json(const ModificationDatum& b);
ModificationDatum datum_from_json(const json& j, const Ring& ring);

json to_json(const Cocharacter& c);                   // {"lambda": [...]}
Cocharacter cocharacter_from_json(const json& j);
json to_json(const CoarseStratum& c);                 // {"orbit": [[...], ...]}
CoarseStratum coarse_stratum_from_json(const json& j);
json to_json(const SplittingType& s);                 // {"a": [...]}
SplittingType splitting_type_from_json(const json& j);

// {"gamma": loop | null, "factors": [{"pos": [i, j], "param": series}, ...]}
// with 1-based positions.
json to_json(const Factorization& f);
Factorization factorization_from_json(const json& j, const Ring& ring);

} // namespace loopgr::json_io
