#pragma once

#include <string>

#include <json.hpp>

#include "stoch/contingency.hpp"
#include "stoch/partitions.hpp"
#include "stoch/sheaf.hpp"
#include "stoch/strata.hpp"
#include "stoch/topology.hpp"

namespace stoch {

using Json = nlohmann::ordered_json;

/// Integers that fit in a long become JSON numbers; larger ones decimal strings.
Json to_json(const BigInt& value);
Json to_json(const OrderedPartition& alpha);
/// {"rows": [[...], ...]}
Json to_json(const ContingencyMatrix& m);
Json to_json(const FnfLabel& label);
Json to_json(const HomologyProfile& h);
Json to_json(const SphericityRecord& record, const CmPoset& poset);
Json to_json(const CmPoset& poset);
Json to_json(const Representation& rep);
/// Contingency matrix, both FNF labels, multiplicity partition and the four cell dimensions.
Json classification_json(const ContingencyMatrix& m);

// Readers throw StructuralError on malformed input and DomainError on invalid values.
OrderedPartition partition_from_json(const Json& j);
ContingencyMatrix matrix_from_json(const Json& j);
/// {"points": [{"re": "1/2", "im": "-3"}, ...]}; numbers are accepted as well as strings.
PointConfiguration configuration_from_json(const Json& j);
/// {"n": 2, "spaces": {"0": 1, ...}, "maps": [{"from": 0, "to": 2, "matrix": [["1"]]}]}.
/// Missing spaces default to 0; missing maps to the zero map of the right shape.
Representation representation_from_json(const Json& j);

/// Hasse diagram, nodes labeled by flat matrix labels.
std::string to_dot(const CmPoset& poset);

}  // namespace stoch
