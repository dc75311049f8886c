#include "csi/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "csi/error.hpp"
#include "csi/format.hpp"

namespace csi {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Validation, msg); }

const json& need(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) fail(what + " lacks required key '" + key + "'");
  return j.at(key);
}

std::string need_string(const json& j, const char* key, const std::string& what) {
  const json& v = need(j, key, what);
  if (!v.is_string()) fail(what + " key '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_array(const json& j, const std::string& what) {
  if (!j.is_array()) fail(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) fail(what + " must contain only strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<double> number_array(const json& j, const std::string& what) {
  if (!j.is_array()) fail(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) fail(what + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::string> dedupe_sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

json load_json_file(const std::string& path) {
  const std::string text = read_file(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("file '" + path + "' is not valid JSON");
  return j;
}

ApprovalElection parse_election_json(const json& j) {
  ApprovalElection e;
  e.candidates = string_array(need(j, "candidates", "election"), "election.candidates");
  const json& ballots = need(j, "ballots", "election");
  if (!ballots.is_array()) fail("election.ballots must be an array");
  for (const auto& b : ballots) {
    Ballot ballot;
    ballot.voter = need_string(b, "voter", "ballot");
    if (b.contains("approve")) {
      ballot.approve = dedupe_sorted(string_array(b.at("approve"), "ballot.approve"));
    }
    if (b.contains("disapprove")) {
      ballot.disapprove = dedupe_sorted(string_array(b.at("disapprove"), "ballot.disapprove"));
    }
    e.ballots.push_back(std::move(ballot));
  }
  return e;
}

ApprovalElection parse_election_csv(const std::string& text) {
  ApprovalElection e;
  std::vector<std::string> seen_order;
  auto note = [&](const std::string& id) {
    if (id.empty()) return;
    if (std::find(seen_order.begin(), seen_order.end(), id) == seen_order.end()) {
      seen_order.push_back(id);
    }
  };
  auto parse_list = [&](const std::string& field) {
    std::vector<std::string> out;
    if (trim(field).empty()) return out;
    for (const auto& part : split(field, '|')) {
      std::string id = trim(part);
      if (id.empty()) fail("empty candidate id in pipe list '" + field + "'");
      out.push_back(id);
    }
    return dedupe_sorted(out);
  };

  bool first = true;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (first && line == "voter,approve,disapprove") {
      first = false;
      continue;
    }
    first = false;
    auto fields = split(line, ',');
    if (fields.size() != 3) {
      fail("ballot row '" + line + "' needs exactly 3 comma-separated fields");
    }
    Ballot b;
    b.voter = trim(fields[0]);
    if (b.voter.empty()) fail("ballot row '" + line + "' has an empty voter id");
    b.approve = parse_list(fields[1]);
    b.disapprove = parse_list(fields[2]);
    e.ballots.push_back(b);
    // First-appearance order defines the candidate (and tie-break) order.
    for (const auto& id : e.ballots.back().approve) note(id);
    for (const auto& id : e.ballots.back().disapprove) note(id);
  }
  e.candidates = seen_order;
  return e;
}

ApprovalElection load_election(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return parse_election_csv(read_file(path));
  }
  return parse_election_json(load_json_file(path));
}

namespace {

DiscriminationFunction parse_sd(const json& j, int dimension) {
  std::vector<std::string> axes;
  if (j.contains("axes")) axes = string_array(j.at("axes"), "sd.axes");
  DiscriminationFunction sd(dimension, axes);
  if (j.contains("points")) {
    const json& points = j.at("points");
    if (!points.is_object()) fail("sd.points must be an object");
    for (const auto& [pid, entry] : points.items()) {
      if (entry.is_array()) {
        sd.add_point(pid, "*", number_array(entry, "sd point '" + pid + "'"));
      } else if (entry.is_object()) {
        for (const auto& [ctx, vec] : entry.items()) {
          sd.add_point(pid, ctx, number_array(vec, "sd point '" + pid + "'"));
        }
      } else {
        fail("sd point '" + pid + "' must be an array or a context object");
      }
    }
  }
  return sd;
}

Scalarization parse_scalarization(const json& j, int dimension) {
  Scalarization s = Scalarization::uniform(dimension);
  if (!j.is_object()) fail("scalarization must be an object");
  if (j.contains("mode")) {
    if (!j.at("mode").is_string()) fail("scalarization.mode must be a string");
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "weighted-sum") {
      s.mode = ScalarMode::WeightedSum;
    } else if (mode == "max") {
      s.mode = ScalarMode::Max;
    } else {
      fail("scalarization mode '" + mode + "' is not one of weighted-sum, max");
    }
  }
  if (j.contains("weights")) s.weights = number_array(j.at("weights"), "scalarization.weights");
  if (j.contains("lambda_u")) {
    if (!j.at("lambda_u").is_number()) fail("scalarization.lambda_u must be a number");
    s.lambda_u = j.at("lambda_u").get<double>();
  }
  return s;
}

}  // namespace

SocialUniverse parse_universe_json(const json& j) {
  SocialUniverse u;
  const json& dim = need(j, "dimension", "universe");
  if (!dim.is_number_integer() || dim.get<int>() < 1) {
    fail("universe.dimension must be an integer >= 1");
  }
  u.dimension = dim.get<int>();

  if (j.contains("agents")) {
    for (const auto& a : j.at("agents")) {
      Agent agent;
      agent.id = need_string(a, "id", "agent");
      const json& traits = need(a, "traits", "agent '" + agent.id + "'");
      if (!traits.is_object()) fail("agent '" + agent.id + "' traits must be an object");
      for (const auto& [name, value] : traits.items()) {
        if (!value.is_number()) fail("agent '" + agent.id + "' trait '" + name + "' not a number");
        agent.traits.values[name] = value.get<double>();
      }
      if (a.contains("sdp")) {
        if (!a.at("sdp").is_string()) fail("agent '" + agent.id + "' sdp must be a string");
        agent.sdp = a.at("sdp").get<std::string>();
      }
      if (a.contains("pd")) agent.pd = parse_sd(a.at("pd"), u.dimension);
      u.agents.push_back(std::move(agent));
    }
  }

  if (j.contains("societies")) {
    for (const auto& s : j.at("societies")) {
      Society soc;
      soc.id = need_string(s, "id", "society");
      soc.members = string_array(need(s, "members", "society '" + soc.id + "'"),
                                 "society '" + soc.id + "' members");
      const json& weights = need(s, "trait_weights", "society '" + soc.id + "'");
      if (!weights.is_object()) fail("society '" + soc.id + "' trait_weights must be an object");
      for (const auto& [name, value] : weights.items()) {
        if (!value.is_number()) fail("society '" + soc.id + "' weight '" + name + "' not a number");
        soc.trait_weights[name] = value.get<double>();
      }
      u.societies.push_back(std::move(soc));
    }
  }

  if (j.contains("sd")) {
    u.sd = parse_sd(j.at("sd"), u.dimension);
  } else {
    u.sd = DiscriminationFunction(u.dimension);
  }

  if (j.contains("sdp_bank")) {
    const json& bank = j.at("sdp_bank");
    if (!bank.is_object()) fail("sdp_bank must be an object");
    for (const auto& [name, vec] : bank.items()) {
      u.sdp_bank[name] = SdProfile{number_array(vec, "profile '" + name + "'")};
    }
  }

  if (j.contains("knowledge_map")) {
    const json& km = j.at("knowledge_map");
    if (!km.is_object()) fail("knowledge_map must be an object");
    for (const auto& [point, pair] : km.items()) {
      auto values = number_array(pair, "knowledge entry '" + point + "'");
      if (values.size() != 2) fail("knowledge entry '" + point + "' must be [U, D]");
      u.knowledge_map.entries[point] = {values[0], values[1]};
    }
  }

  if (j.contains("scalarization")) {
    u.scalarization = parse_scalarization(j.at("scalarization"), u.dimension);
  } else {
    u.scalarization = Scalarization::uniform(u.dimension);
  }

  if (j.contains("embedding")) {
    const json& emb = j.at("embedding");
    if (!emb.is_object()) fail("embedding must be an object");
    for (const auto& [id, vec] : emb.items()) {
      u.embedding[id] = number_array(vec, "embedding entry '" + id + "'");
    }
  }

  auto problems = validate_universe(u);
  if (!problems.empty()) fail("universe is inconsistent: " + join(problems, "; "));
  return u;
}

SocialUniverse load_universe(const std::string& path) {
  return parse_universe_json(load_json_file(path));
}

PreferenceGraph parse_graph_json(const json& j) {
  PreferenceGraph g;
  const json& dim = need(j, "dimension", "graph");
  if (!dim.is_number_integer() || dim.get<int>() < 1) {
    fail("graph.dimension must be an integer >= 1");
  }
  g.dimension = dim.get<int>();

  for (const auto& n : need(j, "nodes", "graph")) {
    if (n.is_string()) {
      g.nodes.push_back({n.get<std::string>(), ""});
    } else if (n.is_object()) {
      PrefNode node;
      node.id = need_string(n, "id", "node");
      if (n.contains("payload")) {
        if (!n.at("payload").is_string()) fail("node payload must be a string");
        node.payload = n.at("payload").get<std::string>();
      }
      g.nodes.push_back(std::move(node));
    } else {
      fail("graph.nodes entries must be strings or objects");
    }
  }

  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      PrefEdge edge;
      edge.from = need_string(e, "from", "edge");
      edge.to = need_string(e, "to", "edge");
      edge.cost = number_array(need(e, "cost", "edge"), "edge cost");
      if (e.contains("irreversible")) {
        if (!e.at("irreversible").is_boolean()) fail("edge.irreversible must be a boolean");
        edge.irreversible = e.at("irreversible").get<bool>();
      }
      g.edges.push_back(std::move(edge));
    }
  }

  auto problems = validate_graph(g);
  if (!problems.empty()) fail("graph is malformed: " + join(problems, "; "));
  return g;
}

PreferenceGraph load_graph(const std::string& path) {
  return parse_graph_json(load_json_file(path));
}

PolicyState parse_state_json(const json& j) {
  if (!j.is_object()) fail("state must be a JSON object");
  PolicyState s;
  if (j.contains("adopted")) s.adopted = string_array(j.at("adopted"), "state.adopted");
  if (j.contains("history")) {
    s.history.steps = string_array(j.at("history"), "state.history");
  }
  if (j.contains("step_count")) {
    if (!j.at("step_count").is_number_integer() || j.at("step_count").get<int>() < 0) {
      fail("state.step_count must be a nonnegative integer");
    }
    s.step_count = j.at("step_count").get<int>();
  }
  return s;
}

PavWeights load_weights(const std::string& spec, int k) {
  if (spec == "harmonic" || spec.empty()) return PavWeights::harmonic(k);
  json j = load_json_file(spec);
  if (!j.is_array()) fail("weight file '" + spec + "' must hold a JSON array");
  PavWeights w;
  for (const auto& v : j) {
    if (v.is_number_integer()) {
      w.alpha.emplace_back(v.get<std::int64_t>());
    } else if (v.is_array() && v.size() == 2 && v[0].is_number_integer() &&
               v[1].is_number_integer()) {
      w.alpha.emplace_back(v[0].get<std::int64_t>(), v[1].get<std::int64_t>());
    } else if (v.is_string()) {
      auto parts = split(v.get<std::string>(), '/');
      if (parts.size() != 2) fail("weight '" + v.get<std::string>() + "' must look like 'a/b'");
      try {
        w.alpha.emplace_back(std::stoll(parts[0]), std::stoll(parts[1]));
      } catch (const std::exception&) {
        fail("weight '" + v.get<std::string>() + "' is not a valid fraction");
      }
    } else {
      fail("weights must be integers, [num, den] pairs, or 'num/den' strings");
    }
  }
  w.require(k);
  return w;
}

json election_json(const ApprovalElection& e) {
  json ballots = json::array();
  for (const Ballot& b : e.ballots) {
    ballots.push_back({{"voter", b.voter}, {"approve", b.approve}, {"disapprove", b.disapprove}});
  }
  return {{"candidates", e.candidates}, {"ballots", ballots}};
}

json committee_json(const Committee& c) { return json(c.members); }

json rule_result_json(const RuleResult& r) {
  return {{"committee", r.committee.members},
          {"objective_num", r.objective.num()},
          {"objective_den", r.objective.den()},
          {"ties", r.ties}};
}

json violations_json(const std::vector<Violation>& v) {
  json arr = json::array();
  for (const Violation& x : v) {
    arr.push_back({{"ballot", x.ballot}, {"code", x.code}, {"detail", x.detail}});
  }
  return arr;
}

json report_json(const PipelineReport& r) {
  json argmin = json::array();
  for (const RetainedEntry& e : r.argmin_set) {
    argmin.push_back({{"id", e.id}, {"value", e.value}});
  }
  json audit = json::object();
  for (const auto& [key, value] : r.audit) audit[key] = value;
  json out = {{"stage1", r.stage1.members},
              {"argmin_set", argmin},
              {"final", r.final.members},
              {"no_path", r.no_path},
              {"audit", audit}};
  out["path"] = r.path ? json(*r.path) : json(nullptr);
  return out;
}

json state_json(const PolicyState& s) {
  return {{"adopted", s.adopted}, {"history", s.history.steps}, {"step_count", s.step_count}};
}

json descent_result_json(const DescentResult& r) {
  return {{"x_best", r.x_best},
          {"f_best", r.f_best},
          {"evals_used", r.trace.evals_used},
          {"converged", r.trace.converged},
          {"accepted_iterates", r.trace.iterates.size()}};
}

json power_order_json(const std::vector<SocialPowerEntry>& order) {
  json arr = json::array();
  for (const SocialPowerEntry& e : order) {
    arr.push_back({{"society", e.society}, {"utility", e.utility}, {"tied", e.tied}});
  }
  return arr;
}

}  // namespace csi
