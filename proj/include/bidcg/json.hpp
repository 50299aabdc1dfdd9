#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

#include "bidcg/algebra.hpp"
#include "bidcg/enumerate.hpp"
#include "bidcg/notation.hpp"
#include "bidcg/solver.hpp"

namespace bidcg {

using Json = nlohmann::ordered_json;

/// Schema version stamped into every CLI and HTTP payload.
inline constexpr std::string_view kSchemaVersion = "1.0";

Json to_json(const BudgetState& s);
Json to_json(const Bid& b);
Json to_json(const OutcomeVector& v);
Json to_json(const NameTable& names, const Evidence& e);
Json to_json(const NameTable& names, const RelationVerdict& v);
Json to_json(const NameTable& names, const Comparison& c);
Json to_json(const NameTable& names, const InverseCertificate& c);
Json to_json(const NameTable& names, const NumberCertificate& c);
Json to_json(const explorer::EnumerationSpec& spec);

/// The shared analysis object: outcome vector and the six verdicts of
/// analyze(). The CLI's --json output and GET /analyze return exactly this.
Json analysis_payload(Solver& solver, const NameTable& names, GameId g, std::string_view text, int tb);

}  // namespace bidcg
