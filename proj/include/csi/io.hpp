#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "csi/descent.hpp"
#include "csi/discrimination.hpp"
#include "csi/election.hpp"
#include "csi/graph.hpp"
#include "csi/mwsr.hpp"
#include "csi/pipelines.hpp"

namespace csi {

// File loading. Parse failures and schema problems raise validation errors;
// election-level semantic issues are left to validate_election.
nlohmann::json load_json_file(const std::string& path);

ApprovalElection parse_election_json(const nlohmann::json& j);
// CSV rows: voter,approve|pipe|list,disapprove|pipe|list. One row per voter,
// optional "voter,approve,disapprove" header. The candidate list is inferred
// in first-appearance order.
ApprovalElection parse_election_csv(const std::string& text);
// Dispatches on the .json / .csv extension.
ApprovalElection load_election(const std::string& path);

SocialUniverse parse_universe_json(const nlohmann::json& j);  // validates cross-references
SocialUniverse load_universe(const std::string& path);

PreferenceGraph parse_graph_json(const nlohmann::json& j);  // validates structure
PreferenceGraph load_graph(const std::string& path);

PolicyState parse_state_json(const nlohmann::json& j);

// Position weights: "harmonic" uses 1/t up to the committee size; otherwise
// the argument is a JSON file holding an array of integers, [num, den]
// pairs, or "num/den" strings.
PavWeights load_weights(const std::string& spec, int k);

// Emitters. Objects use sorted keys, so equal values serialize identically.
nlohmann::json election_json(const ApprovalElection& e);
nlohmann::json committee_json(const Committee& c);
nlohmann::json rule_result_json(const RuleResult& r);
nlohmann::json violations_json(const std::vector<Violation>& v);
nlohmann::json report_json(const PipelineReport& r);
nlohmann::json state_json(const PolicyState& s);
nlohmann::json descent_result_json(const DescentResult& r);
nlohmann::json power_order_json(const std::vector<SocialPowerEntry>& order);

}  // namespace csi
