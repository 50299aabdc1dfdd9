#include "bidcg/json.hpp"

#include <string>

namespace bidcg {

Json to_json(const BudgetState& s) {
  Json j;
  j["label"] = s.to_string();
  j["tb"] = s.tb;
  j["left_budget"] = s.left_budget;
  j["right_budget"] = s.right_budget();
  j["marker"] = std::string(to_string(s.marker));
  return j;
}

Json to_json(const Bid& b) {
  Json j;
  j["amount"] = b.amount;
  j["include_marker"] = b.include_marker;
  return j;
}

Json to_json(const OutcomeVector& v) {
  Json j;
  j["tb"] = v.tb();
  j["order"] = "TB^..0^,TB..0";
  j["vector"] = v.to_string();
  Json states = Json::array();
  for (std::size_t pos = 0; pos < v.entries().size(); ++pos) {
    states.push_back({{"state", OutcomeVector::state_at(v.tb(), pos).to_string()},
                      {"outcome", std::string(1, to_char(v.entries()[pos]))}});
  }
  j["states"] = std::move(states);
  j["monotone"] = v.monotone();
  j["marker_worth"] = v.marker_worth();
  return j;
}

Json to_json(const NameTable& names, const Evidence& e) {
  Json j;
  j["tests"] = e.tests;
  j["theorem"] = e.theorem.empty() ? Json(nullptr) : Json(e.theorem);
  if (e.witness) {
    j["witness"] = {{"x", names.print(e.witness->x, PrintStyle::Named)},
                    {"state", e.witness->state.to_string()},
                    {"lhs", std::string(1, to_char(e.witness->lhs))},
                    {"rhs", std::string(1, to_char(e.witness->rhs))}};
  } else {
    j["witness"] = nullptr;
  }
  j["note"] = e.note.empty() ? Json(nullptr) : Json(e.note);
  return j;
}

Json to_json(const NameTable& names, const RelationVerdict& v) {
  Json j;
  j["relation"] = to_string(v.relation);
  j["status"] = to_string(v.status);
  j["evidence"] = to_json(names, v.evidence);
  return j;
}

Json to_json(const NameTable& names, const Comparison& c) {
  Json j;
  j["lhs"] = names.print(c.lhs, PrintStyle::Named);
  j["rhs"] = names.print(c.rhs, PrintStyle::Named);
  j["tb"] = c.tb;
  const auto strongest = c.strongest();
  j["strongest"] = strongest ? Json(to_string(*strongest)) : Json(nullptr);
  Json verdicts = Json::array();
  for (const RelationVerdict& v : c.verdicts) verdicts.push_back(to_json(names, v));
  j["verdicts"] = std::move(verdicts);
  return j;
}

Json to_json(const NameTable& names, const InverseCertificate& c) {
  Json j;
  j["game"] = names.print(c.game(), PrintStyle::Named);
  j["inverse"] = names.print(c.inverse(), PrintStyle::Named);
  j["tb"] = c.tb();
  j["basis"] = to_json(names, c.basis());
  return j;
}

Json to_json(const NameTable& names, const NumberCertificate& c) {
  Json j;
  j["form"] = names.print(c.form, PrintStyle::Named);
  j["tb"] = c.tb;
  j["is_number"] = c.is_number;
  Json checks = Json::array();
  for (const OptionCheck& o : c.checks) {
    const Relation wanted = o.side == Player::Left ? Relation::GT0 : Relation::LT0;
    checks.push_back({{"option", names.print(o.option, PrintStyle::Named)},
                      {"side", std::string(to_string(o.side))},
                      {"verdict", to_json(names, o.comparison[wanted])}});
  }
  j["checks"] = std::move(checks);
  j["failure"] = c.failure.empty() ? Json(nullptr) : Json(c.failure);
  return j;
}

Json to_json(const explorer::EnumerationSpec& spec) {
  Json j;
  j["max_birthday"] = spec.max_birthday;
  j["tb_range"] = spec.tb_range;
  j["option_subset_cap"] = spec.option_subset_cap;
  j["top_day_sample"] = spec.top_day_sample;
  j["seed"] = spec.seed;
  return j;
}

Json analysis_payload(Solver& solver, const NameTable& names, GameId g, std::string_view text, int tb) {
  Json j;
  j["version"] = kSchemaVersion;
  j["game"] = std::string(text);
  j["form"] = names.print(g, PrintStyle::Literal);
  j["birthday"] = solver.arena().birthday(g);
  j["tb"] = tb;
  j["outcome_vector"] = to_json(solver.outcome_vector(g, tb));
  const Comparison c = analyze(solver, g, tb);
  const auto strongest = c.strongest();
  j["strongest"] = strongest ? Json(to_string(*strongest)) : Json(nullptr);
  Json verdicts = Json::array();
  for (const RelationVerdict& v : c.verdicts) verdicts.push_back(to_json(names, v));
  j["verdicts"] = std::move(verdicts);
  return j;
}

}  // namespace bidcg
