#include "csi/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "csi/error.hpp"
#include "csi/format.hpp"
#include "csi/mwsr.hpp"

namespace csi {

using nlohmann::json;

namespace {

const char* kNone = "none";
const char* kCrossWalks = "cross-walks";
const char* kTrafficLights = "traffic-lights";
const char* kMixed = "mixed";
const char* kCars = "cars";
const char* kPedestrians = "pedestrians";

std::vector<std::string> fixed_options() {
  return {kNone, kCrossWalks, kTrafficLights, kMixed};
}

double scalar_of(const std::vector<double>& v) {
  // Uniform reduction; fixture values are exact binary fractions so the
  // mixed-option equality is exact.
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

}  // namespace

ScenarioSpec ScenarioSpec::defaults(long cars, long pedestrians, const std::string& rule) {
  ScenarioSpec s;
  s.cars = cars;
  s.pedestrians = pedestrians;
  s.rule = rule;
  s.options = fixed_options();
  // Exact sixteenths; per option the worse-off society is the one the
  // infrastructure ignores.
  s.sd_table = {
      {kNone, {{kCars, {0.0625, 0.0625}}, {kPedestrians, {0.875, 0.875}}}},
      {kCrossWalks, {{kCars, {0.1875, 0.3125}}, {kPedestrians, {0.5, 0.75}}}},
      {kTrafficLights, {{kCars, {0.625, 0.8125}}, {kPedestrians, {0.25, 0.375}}}},
      {kMixed, {{kCars, {0.25, 0.25}}, {kPedestrians, {0.25, 0.25}}}},
  };
  s.ballot_template = {
      {kCars, {{kNone, kCrossWalks}, {kTrafficLights}}},
      {kPedestrians, {{kTrafficLights, kMixed}, {kNone}}},
  };
  s.utility_effects = {
      {kNone, {{kCars, 0.25}, {kPedestrians, -0.75}}},
      {kCrossWalks, {{kCars, 0.125}, {kPedestrians, -0.125}}},
      {kTrafficLights, {{kCars, -0.25}, {kPedestrians, 0.25}}},
      {kMixed, {{kCars, 0.0}, {kPedestrians, 0.0}}},
  };
  return s;
}

std::vector<std::string> validate_scenario(const ScenarioSpec& spec) {
  std::vector<std::string> out;
  if (spec.cars < 1) out.push_back("cars count must be >= 1");
  if (spec.pedestrians < 1) out.push_back("pedestrians count must be >= 1");
  if (spec.rule != "absolute-majority" && spec.rule != "ldm-wsr") {
    out.push_back("rule '" + spec.rule + "' is not one of absolute-majority, ldm-wsr");
  }
  if (spec.ldm_pipeline != "oav" && spec.ldm_pipeline != "pnm") {
    out.push_back("ldm_pipeline '" + spec.ldm_pipeline + "' is not one of oav, pnm");
  }
  if (!(spec.tau >= 0.0 && spec.tau <= 1.0)) out.push_back("tau must lie in [0,1]");
  if (spec.options != fixed_options()) {
    out.push_back("options must be exactly none, cross-walks, traffic-lights, mixed");
    return out;  // the remaining checks key off the fixed names
  }

  std::size_t dim = 0;
  for (const auto& option : spec.options) {
    auto it = spec.sd_table.find(option);
    if (it == spec.sd_table.end()) {
      out.push_back("sd_table lacks option '" + option + "'");
      continue;
    }
    for (const char* society : {kCars, kPedestrians}) {
      auto sit = it->second.find(society);
      if (sit == it->second.end()) {
        out.push_back("sd_table option '" + option + "' lacks society '" + society + "'");
        continue;
      }
      if (sit->second.empty()) {
        out.push_back("sd_table option '" + option + "' society '" + society + "' is empty");
      }
      if (dim == 0) dim = sit->second.size();
      if (sit->second.size() != dim) {
        out.push_back("sd_table vectors have inconsistent dimensions");
      }
      for (double v : sit->second) {
        if (!(v >= 0.0 && v <= 1.0)) {
          out.push_back("sd_table option '" + option + "' has a component outside [0,1]");
          break;
        }
      }
    }
  }
  if (!out.empty()) return out;

  // Direction of each option's discrimination gap is part of the contract.
  auto sd = [&](const std::string& option, const char* society) {
    return scalar_of(spec.sd_table.at(option).at(society));
  };
  auto expect_less = [&](const std::string& option) {
    if (!(sd(option, kCars) < sd(option, kPedestrians))) {
      out.push_back("option '" + option + "': expected SD(cars) < SD(pedestrians), got " +
                    dtos(sd(option, kCars)) + " vs " + dtos(sd(option, kPedestrians)));
    }
  };
  expect_less(kNone);
  expect_less(kCrossWalks);
  if (!(sd(kTrafficLights, kCars) > sd(kTrafficLights, kPedestrians))) {
    out.push_back("option 'traffic-lights': expected SD(cars) > SD(pedestrians), got " +
                  dtos(sd(kTrafficLights, kCars)) + " vs " +
                  dtos(sd(kTrafficLights, kPedestrians)));
  }
  if (std::abs(sd(kMixed, kCars) - sd(kMixed, kPedestrians)) > 1e-12) {
    out.push_back("option 'mixed': expected SD(cars) = SD(pedestrians), got " +
                  dtos(sd(kMixed, kCars)) + " vs " + dtos(sd(kMixed, kPedestrians)));
  }

  // Utility effects, when present, must favor the same society the
  // discrimination gap favors.
  auto effect = [&](const std::string& option, const char* society, double& value) {
    auto it = spec.utility_effects.find(option);
    if (it == spec.utility_effects.end()) return false;
    auto sit = it->second.find(society);
    if (sit == it->second.end()) return false;
    value = sit->second;
    return true;
  };
  for (const auto& option : spec.options) {
    double dc = 0.0, dp = 0.0;
    if (!effect(option, kCars, dc) || !effect(option, kPedestrians, dp)) continue;
    if (option == kNone || option == kCrossWalks) {
      if (!(dc > dp)) {
        out.push_back("option '" + option +
                      "': expected utility effect for cars > pedestrians, got " + dtos(dc) +
                      " vs " + dtos(dp));
      }
    } else if (option == kTrafficLights) {
      if (!(dc < dp)) {
        out.push_back("option 'traffic-lights': expected utility effect for cars < pedestrians, "
                      "got " + dtos(dc) + " vs " + dtos(dp));
      }
    } else if (dc != dp) {
      out.push_back("option 'mixed': expected equal utility effects, got " + dtos(dc) + " vs " +
                    dtos(dp));
    }
  }

  for (const char* society : {kCars, kPedestrians}) {
    auto it = spec.ballot_template.find(society);
    if (it == spec.ballot_template.end()) {
      out.push_back("ballot_template lacks society '" + std::string(society) + "'");
      continue;
    }
    auto known = [&](const std::vector<std::string>& ids) {
      for (const auto& id : ids) {
        if (std::find(spec.options.begin(), spec.options.end(), id) == spec.options.end()) {
          out.push_back("ballot_template for '" + std::string(society) +
                        "' references unknown option '" + id + "'");
        }
      }
    };
    known(it->second.first);
    known(it->second.second);
  }
  return out;
}

SocialUniverse build_scenario_universe(const ScenarioSpec& spec) {
  SocialUniverse u;
  u.dimension = static_cast<int>(spec.sd_table.at(kNone).at(kCars).size());
  u.scalarization = Scalarization::uniform(u.dimension);
  u.sd = DiscriminationFunction(u.dimension);
  for (const auto& option : spec.options) {
    const auto& by_society = spec.sd_table.at(option);
    std::vector<double> worst(u.dimension, 0.0);
    for (const auto& [society, vec] : by_society) {
      u.sd.add_point(option, society, vec);
      for (int c = 0; c < u.dimension; ++c) worst[c] = std::max(worst[c], vec[c]);
    }
    // Context-free view: an option is as discriminatory as its worst-affected
    // society.
    u.sd.add_point(option, "*", worst);
  }

  Society cars{kCars, {}, {{TraitVector::kUtilityTrait, 1.0}}};
  Society pedestrians{kPedestrians, {}, {{TraitVector::kUtilityTrait, 1.0}}};
  for (long i = 1; i <= spec.cars; ++i) {
    Agent a;
    a.id = "car" + std::to_string(i);
    a.traits.values[TraitVector::kUtilityTrait] = 1.0;
    cars.members.push_back(a.id);
    u.agents.push_back(std::move(a));
  }
  for (long i = 1; i <= spec.pedestrians; ++i) {
    Agent a;
    a.id = "ped" + std::to_string(i);
    a.traits.values[TraitVector::kUtilityTrait] = 1.0;
    pedestrians.members.push_back(a.id);
    u.agents.push_back(std::move(a));
  }
  u.societies.push_back(std::move(cars));
  u.societies.push_back(std::move(pedestrians));
  return u;
}

ApprovalElection build_scenario_election(const ScenarioSpec& spec) {
  ApprovalElection e;
  e.candidates = spec.options;
  auto add_ballots = [&](const char* society, const std::string& prefix, long count) {
    const auto& [approve, disapprove] = spec.ballot_template.at(society);
    for (long i = 1; i <= count; ++i) {
      Ballot b;
      b.voter = prefix + std::to_string(i);
      b.approve = approve;
      b.disapprove = disapprove;
      std::sort(b.approve.begin(), b.approve.end());
      std::sort(b.disapprove.begin(), b.disapprove.end());
      e.ballots.push_back(std::move(b));
    }
  };
  add_ballots(kCars, "car", spec.cars);
  add_ballots(kPedestrians, "ped", spec.pedestrians);
  return e;
}

ScenarioReport run_traffic_scenario(const ScenarioSpec& spec) {
  auto problems = validate_scenario(spec);
  if (!problems.empty()) {
    throw Error(ErrorKind::Validation, "scenario is inconsistent: " + join(problems, "; "));
  }

  SocialUniverse u = build_scenario_universe(spec);
  ApprovalElection e = build_scenario_election(spec);

  ScenarioReport r;
  r.inputs = spec;
  for (const auto& option : spec.options) {
    r.tallies[option] = {approval_score(e, option), disapproval_score(e, option)};
    r.sd_scalars[option] = scalarize(u.sd.eval(option, ""), u.scalarization);
  }
  r.power_before = social_power_order(u);

  if (spec.rule == "absolute-majority") {
    Committee c = av_top_k(e, 1);
    r.winners = c.members;
    r.audit.emplace_back("rule", "absolute-majority");
    r.audit.emplace_back("winner_approvals", std::to_string(approval_score(e, c.members[0])));
    r.audit.emplace_back("ties", std::to_string(av_committee_ties(e, 1)));
  } else {
    PipelineReport rep = spec.ldm_pipeline == "pnm"
                             ? pnm_tav(u, e, spec.params)
                             : oav_csi(u, e, spec.params.k, spec.tau);
    r.winners = rep.final.members;
    r.audit.emplace_back("rule", "ldm-wsr");
    r.audit.emplace_back("ldm_pipeline", spec.ldm_pipeline);
    for (const auto& [key, value] : rep.audit) {
      if (key == "rule") continue;
      r.audit.emplace_back(key, value);
    }
  }

  bool tie = std::any_of(r.power_before.begin(), r.power_before.end(),
                         [](const SocialPowerEntry& p) { return p.tied; });
  r.audit.emplace_back("power_tie_before", tie ? "true" : "false");

  // Apply the winner's utility effects and rank again.
  SocialUniverse after = u;
  if (!r.winners.empty()) {
    auto it = spec.utility_effects.find(r.winners.front());
    if (it != spec.utility_effects.end()) {
      for (Agent& a : after.agents) {
        const char* society = a.id.rfind("car", 0) == 0 ? kCars : kPedestrians;
        auto sit = it->second.find(society);
        if (sit != it->second.end()) {
          a.traits.values[TraitVector::kUtilityTrait] += sit->second;
        }
      }
    }
  }
  r.power_after = social_power_order(after);
  return r;
}

namespace {

ScenarioSpec parse_scenario_fields(const json& j) {
  auto get_long = [&](const char* key, long fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) {
      throw Error(ErrorKind::Validation, std::string("scenario key '") + key + "' must be an integer");
    }
    return j.at(key).get<long>();
  };
  long cars = get_long("cars", 1000);
  long pedestrians = get_long("pedestrians", 10);
  std::string rule = j.contains("rule") ? j.at("rule").get<std::string>() : "ldm-wsr";

  ScenarioSpec s = ScenarioSpec::defaults(cars, pedestrians, rule);
  if (j.contains("options")) {
    s.options = j.at("options").get<std::vector<std::string>>();
  }
  if (j.contains("sd_table")) {
    s.sd_table.clear();
    for (const auto& [option, by_society] : j.at("sd_table").items()) {
      for (const auto& [society, vec] : by_society.items()) {
        s.sd_table[option][society] = vec.get<std::vector<double>>();
      }
    }
  }
  if (j.contains("ballot_template")) {
    s.ballot_template.clear();
    for (const auto& [society, sides] : j.at("ballot_template").items()) {
      s.ballot_template[society] = {
          sides.contains("approve") ? sides.at("approve").get<std::vector<std::string>>()
                                    : std::vector<std::string>{},
          sides.contains("disapprove") ? sides.at("disapprove").get<std::vector<std::string>>()
                                       : std::vector<std::string>{}};
    }
  }
  if (j.contains("utility_effects")) {
    s.utility_effects.clear();
    for (const auto& [option, by_society] : j.at("utility_effects").items()) {
      for (const auto& [society, delta] : by_society.items()) {
        s.utility_effects[option][society] = delta.get<double>();
      }
    }
  }
  if (j.contains("params")) {
    const auto& p = j.at("params");
    if (p.contains("l")) s.params.l = p.at("l").get<int>();
    if (p.contains("j")) s.params.j = p.at("j").get<int>();
    if (p.contains("k")) s.params.k = p.at("k").get<int>();
  }
  if (j.contains("tau")) s.tau = j.at("tau").get<double>();
  if (j.contains("ldm_pipeline")) s.ldm_pipeline = j.at("ldm_pipeline").get<std::string>();
  return s;
}

}  // namespace

ScenarioSpec parse_scenario_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Validation, "scenario spec must be a JSON object");
  try {
    return parse_scenario_fields(j);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::Validation, std::string("scenario spec: ") + ex.what());
  }
}

json scenario_spec_json(const ScenarioSpec& s) {
  json sd = json::object();
  for (const auto& [option, by_society] : s.sd_table) {
    for (const auto& [society, vec] : by_society) sd[option][society] = vec;
  }
  json ballots = json::object();
  for (const auto& [society, sides] : s.ballot_template) {
    ballots[society] = {{"approve", sides.first}, {"disapprove", sides.second}};
  }
  json effects = json::object();
  for (const auto& [option, by_society] : s.utility_effects) {
    for (const auto& [society, delta] : by_society) effects[option][society] = delta;
  }
  return {{"cars", s.cars},
          {"pedestrians", s.pedestrians},
          {"rule", s.rule},
          {"options", s.options},
          {"sd_table", sd},
          {"ballot_template", ballots},
          {"utility_effects", effects},
          {"params", {{"l", s.params.l}, {"j", s.params.j}, {"k", s.params.k}}},
          {"tau", s.tau},
          {"ldm_pipeline", s.ldm_pipeline}};
}

json scenario_report_json(const ScenarioReport& r) {
  json tallies = json::object();
  for (const auto& [option, counts] : r.tallies) {
    tallies[option] = {{"approvals", counts.first}, {"disapprovals", counts.second}};
  }
  json power_before = json::array();
  for (const auto& p : r.power_before) {
    power_before.push_back({{"society", p.society}, {"utility", p.utility}, {"tied", p.tied}});
  }
  json power_after = json::array();
  for (const auto& p : r.power_after) {
    power_after.push_back({{"society", p.society}, {"utility", p.utility}, {"tied", p.tied}});
  }
  json audit = json::object();
  for (const auto& [key, value] : r.audit) audit[key] = value;
  return {{"winners", r.winners},
          {"tallies", tallies},
          {"sd_scalars", r.sd_scalars},
          {"power_before", power_before},
          {"power_after", power_after},
          {"audit", audit},
          {"inputs", scenario_spec_json(r.inputs)}};
}

}  // namespace csi
