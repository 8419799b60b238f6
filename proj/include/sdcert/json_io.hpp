#pragma once

#include <json.hpp>

#include "sdcert/campaigns.hpp"
#include "sdcert/diophantine.hpp"
#include "sdcert/lattice.hpp"
#include "sdcert/oracle.hpp"
#include "sdcert/quad.hpp"
#include "sdcert/witness.hpp"

namespace sdcert {

using Json = nlohmann::ordered_json;

/// Rationals are written as "p/q" strings (or "p" when integral).
Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const QuadValue& v);
Json to_json(const LatticePoint& p);
Json to_json(const LatticeTriangle& t);
Json to_json(const TriangleMetrics& m);
Json to_json(const PellSolution& s);
Json to_json(const WindowWitness& w);
Json to_json(const PairWitness& p);
Json to_json(const WitnessCertificate& c);
Json to_json(const SValue& s);
Json to_json(const SlidingReport& r);
Json to_json(const CoverReport& r);
Json to_json(const StepTable& t, bool with_rows = true);
Json to_json(const TableCheck& c);
Json to_json(const ResidualRow& r);
Json to_json(const SlidingScan& s);

QuadValue quad_from_json(const Json& j);
LatticePoint point_from_json(const Json& j);
LatticeTriangle triangle_from_json(const Json& j);
PairWitness pair_from_json(const Json& j);

/// Throws VerificationError when a field is missing or has the wrong type.
WitnessCertificate certificate_from_json(const Json& j);

}  // namespace sdcert
