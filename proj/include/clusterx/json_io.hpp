#pragma once

// JSON encodings of the library's values. Indices are 1-based in JSON, as
// everywhere outside the library. Every to_json has a matching from_json that
// reproduces the original value; from_json throws ParseError on bad shapes.

#include <string>

#include "json.hpp"

#include "clusterx/basis.hpp"
#include "clusterx/dyck.hpp"
#include "clusterx/elements.hpp"
#include "clusterx/exchange.hpp"
#include "clusterx/laurent.hpp"
#include "clusterx/rank3.hpp"
#include "clusterx/upper.hpp"

namespace clusterx::json_io {

using Json = nlohmann::ordered_json;

// {"m": 3, "n": 2, "entries": [[0,2],[-2,0],[1,-1]]}. A bare array of rows
// is also accepted on input and read as a square matrix.
Json matrix_to_json(const ExtendedMatrix& matrix);
ExtendedMatrix matrix_from_json(const Json& j);

// {"nvars": 3, "text": "...", "terms": [{"exponents": [..], "coefficient": "12"}]}.
// Coefficients are decimal strings so arbitrary precision survives.
Json poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const Json& j);

Json avector_to_json(const AVector& a);
AVector avector_from_json(const Json& j);

// [[0,1],[1]]: one array of bits per mutable vertex.
Json tuple_to_json(const GccTuple& s);
GccTuple tuple_from_json(const Json& j);

// [{"tail": 1, "head": 2, "S1": 1, "S2": 0}, ...] with S1/S2 as bitmasks
// (bit r-1 for u_r / v_r).
Json collection_to_json(const EdgeCollection& c);
EdgeCollection collection_from_json(const Json& j);

Json triple_to_json(const Rank3Triple& t);
Rank3Triple triple_from_json(const Json& j);

// {"nvars": m, "order": [..], "terms": [{"b": [..], "coefficient": "text"}]}.
Json expansion_to_json(const Expansion& e, std::size_t nvars);
Expansion expansion_from_json(const Json& j);

Json membership_to_json(const MembershipReport& r);
MembershipReport membership_from_json(const Json& j);

Json audit_to_json(const DegreeAudit& a);
DegreeAudit audit_from_json(const Json& j);

Json witness_to_json(const WitnessReport& w);
WitnessReport witness_from_json(const Json& j);

Json seed_to_json(const Seed& s);
Seed seed_from_json(const Json& j);

// Parses text as JSON, or reads it from a file when it does not start with
// '{' or '['. ParseError with the location on malformed input.
Json load_json_argument(const std::string& text_or_path);

}  // namespace clusterx::json_io
