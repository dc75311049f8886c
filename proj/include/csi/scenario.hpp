#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "csi/discrimination.hpp"
#include "csi/election.hpp"
#include "csi/pipelines.hpp"

namespace csi {

// Street-infrastructure policy vote between two unequal societies (car
// drivers vs pedestrians). The four options and the direction of each
// option's discrimination gap are fixed; magnitudes and counts are data.
struct ScenarioSpec {
  long cars = 1000;
  long pedestrians = 10;
  std::string rule = "ldm-wsr";  // or "absolute-majority"
  std::vector<std::string> options;
  // option -> society -> discrimination vector
  std::map<std::string, std::map<std::string, std::vector<double>>> sd_table;
  // society -> (approve, disapprove)
  std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>>
      ballot_template;
  // option -> society -> per-agent utility delta once adopted
  std::map<std::string, std::map<std::string, double>> utility_effects;
  StageParams params{3, 2, 1};
  double tau = 0.5;
  std::string ldm_pipeline = "oav";  // or "pnm"

  static ScenarioSpec defaults(long cars, long pedestrians, const std::string& rule);
};

struct ScenarioReport {
  std::vector<std::string> winners;
  std::map<std::string, std::pair<int, int>> tallies;  // option -> (approvals, disapprovals)
  std::map<std::string, double> sd_scalars;            // context-free scalar per option
  std::vector<SocialPowerEntry> power_before;
  std::vector<SocialPowerEntry> power_after;  // after the winner's utility effects
  std::vector<std::pair<std::string, std::string>> audit;
  ScenarioSpec inputs;  // resolved echo; re-running it reproduces this report
};

// Ordering checks on the fixture: each violation names the broken
// inequality. Empty result means the spec is coherent.
std::vector<std::string> validate_scenario(const ScenarioSpec& spec);

// Model construction, exposed for tests and the CLI.
SocialUniverse build_scenario_universe(const ScenarioSpec& spec);
ApprovalElection build_scenario_election(const ScenarioSpec& spec);

ScenarioReport run_traffic_scenario(const ScenarioSpec& spec);

ScenarioSpec parse_scenario_json(const nlohmann::json& j);
nlohmann::json scenario_spec_json(const ScenarioSpec& spec);
nlohmann::json scenario_report_json(const ScenarioReport& r);

}  // namespace csi
