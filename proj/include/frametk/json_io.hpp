#pragma once

#include "frametk/classifier.hpp"
#include "frametk/fact_check.hpp"
#include "frametk/linalg.hpp"
#include "frametk/operators.hpp"
#include "frametk/sequence.hpp"
#include "frametk/transforms.hpp"

#include <json.hpp>

#include <string>

namespace frametk {

using json = nlohmann::json;

/// Sorted keys, no whitespace, floats as %.17g. Non-finite floats become null.
std::string canonical_dump(const json& j);

/// Throws ParseError on malformed JSON text.
json parse_json(const std::string& text);
/// Reads and parses a file; throws InvalidInput if it cannot be opened.
json read_json_file(const std::string& path);

/// {"dimension": d, "vectors": [[[re, im], ...], ...], "label": optional}.
/// Throws SchemaError on a shape or type mismatch.
FiniteSequence sequence_from_json(const json& j);
json to_json(const FiniteSequence& seq);

/// {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major.
Matrix matrix_from_json(const json& j);
json to_json(const Matrix& m);

/// Finite value, "inf", or null when absent.
json to_json(const std::optional<ExtendedReal>& x);

json to_json(const ClassificationReport& report);
/// Inverse of to_json(ClassificationReport); throws SchemaError.
ClassificationReport report_from_json(const json& j);

json to_json(const IdentityReport& report);
json to_json(const MembershipVerdict& v);
json to_json(const FactResult& r);
json to_json(const SandwichReport& r);
json to_json(const FactorizationReport& r);

} // namespace frametk
