#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>

#include "csi/error.hpp"
#include "csi/io.hpp"
#include "test_support.hpp"

using namespace csi;
using nlohmann::json;
using test_support::basic_election;
using test_support::fixture;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a csi::Error");
  return ErrorKind::Validation;
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  FAIL("expected a csi::Error");
  return "";
}

std::string write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("csi_io_test_" + name);
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  return path.string();
}

}  // namespace

TEST_CASE("load_json_file rejects missing and malformed files") {
  CHECK(kind_of([] { load_json_file("/nonexistent/nowhere.json"); }) == ErrorKind::Validation);
  auto bad = write_temp("bad.json", "{not json");
  CHECK(kind_of([&] { load_json_file(bad); }) == ErrorKind::Validation);
}

TEST_CASE("the basic election fixture parses to the running example") {
  ApprovalElection e = load_election(fixture("election_basic.json"));
  ApprovalElection want = basic_election();
  CHECK(e.candidates == want.candidates);
  REQUIRE(e.ballots.size() == want.ballots.size());
  for (std::size_t i = 0; i < e.ballots.size(); ++i) {
    CHECK(e.ballots[i].voter == want.ballots[i].voter);
    CHECK(e.ballots[i].approve == want.ballots[i].approve);
    CHECK(e.ballots[i].disapprove == want.ballots[i].disapprove);
  }
}

TEST_CASE("election emit and reparse round-trips") {
  ApprovalElection e = basic_election();
  json j = election_json(e);
  ApprovalElection back = parse_election_json(j);
  CHECK(back.candidates == e.candidates);
  REQUIRE(back.ballots.size() == e.ballots.size());
  for (std::size_t i = 0; i < e.ballots.size(); ++i) {
    CHECK(back.ballots[i].approve == e.ballots[i].approve);
  }
  // Sorted object keys make equal values serialize identically.
  CHECK(j.dump() == election_json(back).dump());
}

TEST_CASE("ballot sides are deduplicated and sorted on parse") {
  json j = {{"candidates", {"a", "b"}},
            {"ballots", json::array({{{"voter", "v1"},
                                      {"approve", {"b", "a", "a"}},
                                      {"disapprove", json::array()}}})}};
  ApprovalElection e = parse_election_json(j);
  CHECK(e.ballots[0].approve == std::vector<std::string>{"a", "b"});
}

TEST_CASE("election schema violations are validation errors") {
  CHECK(kind_of([] { parse_election_json(json::object()); }) == ErrorKind::Validation);
  CHECK(kind_of([] {
          parse_election_json({{"candidates", {"a"}}, {"ballots", "not-an-array"}});
        }) == ErrorKind::Validation);
  CHECK(kind_of([] {
          parse_election_json({{"candidates", {"a"}},
                               {"ballots", json::array({{{"approve", {"a"}}}})}});
        }) == ErrorKind::Validation);  // ballot lacks voter
  CHECK(kind_of([] {
          parse_election_json({{"candidates", {1, 2}}, {"ballots", json::array()}});
        }) == ErrorKind::Validation);
}

TEST_CASE("the CSV fixture equals the JSON fixture") {
  ApprovalElection csv = load_election(fixture("election_basic.csv"));
  ApprovalElection js = load_election(fixture("election_basic.json"));
  CHECK(csv.candidates == js.candidates);
  REQUIRE(csv.ballots.size() == js.ballots.size());
  for (std::size_t i = 0; i < csv.ballots.size(); ++i) {
    CHECK(csv.ballots[i].voter == js.ballots[i].voter);
    CHECK(csv.ballots[i].approve == js.ballots[i].approve);
    CHECK(csv.ballots[i].disapprove == js.ballots[i].disapprove);
  }
}

TEST_CASE("CSV rows parse without the optional header") {
  ApprovalElection e = parse_election_csv("v1,a|b,c\nv2,,a\n");
  CHECK(e.candidates == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(e.ballots.size() == 2);
  CHECK(e.ballots[0].disapprove == std::vector<std::string>{"c"});
  CHECK(e.ballots[1].approve.empty());
  CHECK(e.ballots[1].disapprove == std::vector<std::string>{"a"});
}

TEST_CASE("CSV structural problems are validation errors") {
  CHECK(kind_of([] { parse_election_csv("v1,a\n"); }) == ErrorKind::Validation);
  CHECK(kind_of([] { parse_election_csv(",a,b\n"); }) == ErrorKind::Validation);
  CHECK(kind_of([] { parse_election_csv("v1,a||b,\n"); }) == ErrorKind::Validation);
}

TEST_CASE("the universe fixture loads with its profile bank") {
  SocialUniverse u = load_universe(fixture("universe_small.json"));
  CHECK(u.dimension == 2);
  REQUIRE(u.agents.size() == 2);
  CHECK(u.agents[0].sdp == "lead");
  CHECK(u.agents[1].sdp.empty());
  CHECK(u.societies.size() == 2);
  CHECK(u.sdp_bank.at("lead").weights == std::vector<double>{1.0, 0.5});
  CHECK(u.sd.eval("b") == std::vector<double>{0.125, 0.375});
  CHECK(u.scalarization.weights == std::vector<double>{0.5, 0.5});
}

TEST_CASE("universe schema and consistency problems are validation errors") {
  CHECK(kind_of([] { parse_universe_json(json::object()); }) == ErrorKind::Validation);
  CHECK(kind_of([] { parse_universe_json({{"dimension", 0}}); }) == ErrorKind::Validation);

  // Structurally fine, semantically broken: the society references a ghost.
  json j = {{"dimension", 1},
            {"agents", json::array({{{"id", "a1"}, {"traits", {{"utility", 1.0}}}}})},
            {"societies", json::array({{{"id", "s1"},
                                        {"members", {"ghost"}},
                                        {"trait_weights", {{"utility", 1.0}}}}})}};
  std::string msg = message_of([&] { parse_universe_json(j); });
  CHECK(msg.find("universe is inconsistent") != std::string::npos);
  CHECK(msg.find("unknown agent 'ghost'") != std::string::npos);

  json bad_km = {{"dimension", 1}, {"knowledge_map", {{"x", {0.1, 0.2, 0.3}}}}};
  CHECK(kind_of([&] { parse_universe_json(bad_km); }) == ErrorKind::Validation);
}

TEST_CASE("the knowledge map parses U and D in order") {
  json j = {{"dimension", 1}, {"knowledge_map", {{"A->B", {0.25, 0.75}}}}};
  SocialUniverse u = parse_universe_json(j);
  CHECK(u.knowledge_map.entries.at("A->B").uncertainty == 0.25);
  CHECK(u.knowledge_map.entries.at("A->B").discrimination == 0.75);
}

TEST_CASE("the graph fixture loads both node forms") {
  PreferenceGraph g = load_graph(fixture("graph_diamond.json"));
  CHECK(g.nodes.size() == 4);
  CHECK(g.edges.size() == 4);
  CHECK(g.find_edge("C", "D")->cost == std::vector<double>{0.05});

  json j = {{"dimension", 1},
            {"nodes", json::array({"plain", {{"id", "rich"}, {"payload", "notes"}}})},
            {"edges", json::array({{{"from", "plain"},
                                    {"to", "rich"},
                                    {"cost", {0.5}},
                                    {"irreversible", true}}})}};
  PreferenceGraph g2 = parse_graph_json(j);
  CHECK(g2.nodes[1].payload == "notes");
  CHECK(g2.edges[0].irreversible);
}

TEST_CASE("malformed graphs fail with the joined problem list") {
  json j = {{"dimension", 1},
            {"nodes", json::array({"A", "A"})},
            {"edges", json::array({{{"from", "A"}, {"to", "Z"}, {"cost", {0.5}}}})}};
  std::string msg = message_of([&] { parse_graph_json(j); });
  CHECK(msg.find("graph is malformed") != std::string::npos);
  CHECK(msg.find("duplicate node id 'A'") != std::string::npos);
  CHECK(msg.find("unknown node 'Z'") != std::string::npos);

  json bad_flag = {{"dimension", 1},
                   {"nodes", json::array({"A", "B"})},
                   {"edges", json::array({{{"from", "A"},
                                           {"to", "B"},
                                           {"cost", {0.5}},
                                           {"irreversible", "yes"}}})}};
  CHECK(kind_of([&] { parse_graph_json(bad_flag); }) == ErrorKind::Validation);
}

TEST_CASE("policy state round-trips through its JSON form") {
  PolicyState s;
  s.adopted = {"A", "D"};
  s.history.steps = {"A", "B", "D"};
  s.step_count = 2;
  PolicyState back = parse_state_json(state_json(s));
  CHECK(back.adopted == s.adopted);
  CHECK(back.history.steps == s.history.steps);
  CHECK(back.step_count == s.step_count);

  PolicyState empty = parse_state_json(json::object());
  CHECK(empty.adopted.empty());
  CHECK(empty.step_count == 0);

  CHECK(kind_of([] { parse_state_json({{"step_count", -1}}); }) == ErrorKind::Validation);
  CHECK(kind_of([] { parse_state_json({{"adopted", {1, 2}}}); }) == ErrorKind::Validation);
  CHECK(kind_of([] { parse_state_json(json::array()); }) == ErrorKind::Validation);
}

TEST_CASE("weight specs load harmonic and custom tables") {
  PavWeights h = load_weights("harmonic", 3);
  CHECK(h.alpha == PavWeights::harmonic(3).alpha);

  PavWeights custom = load_weights(fixture("alpha_custom.json"), 3);
  REQUIRE(custom.alpha.size() == 3);
  CHECK(custom.alpha[0] == Rational(1));
  CHECK(custom.alpha[1] == Rational(1, 2));
  CHECK(custom.alpha[2] == Rational(1, 3));
  CHECK(custom.alpha == PavWeights::harmonic(3).alpha);
}

TEST_CASE("weight files are validated") {
  auto not_array = write_temp("w_obj.json", "{\"a\": 1}");
  CHECK(kind_of([&] { load_weights(not_array, 1); }) == ErrorKind::Validation);

  auto bad_entry = write_temp("w_bool.json", "[true]");
  CHECK(kind_of([&] { load_weights(bad_entry, 1); }) == ErrorKind::Validation);

  auto bad_frac = write_temp("w_frac.json", "[\"1/2/3\"]");
  CHECK(kind_of([&] { load_weights(bad_frac, 1); }) == ErrorKind::Validation);

  auto bad_number = write_temp("w_badnum.json", "[\"x/y\"]");
  CHECK(kind_of([&] { load_weights(bad_number, 1); }) == ErrorKind::Validation);

  // Shape problems surface through the weight checks, not the parser.
  CHECK(kind_of([] { load_weights("harmonic", 0); }) == ErrorKind::InvalidParameter);
  auto short_file = write_temp("w_short.json", "[1, [1, 2]]");
  CHECK(kind_of([&] { load_weights(short_file, 4); }) == ErrorKind::InvalidParameter);
  auto increasing = write_temp("w_incr.json", "[[1, 2], 1]");
  CHECK(kind_of([&] { load_weights(increasing, 2); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("rule results serialize the exact objective") {
  RuleResult r;
  r.committee.members = {"a", "b"};
  r.objective = Rational(7, 2);
  r.ties = 1;
  json j = rule_result_json(r);
  CHECK(j["committee"] == json({"a", "b"}));
  CHECK(j["objective_num"] == 7);
  CHECK(j["objective_den"] == 2);
  CHECK(j["ties"] == 1);
}

TEST_CASE("pipeline reports serialize the optional path as null or a list") {
  PipelineReport r;
  r.stage1.members = {"a"};
  r.final.members = {"a"};
  r.argmin_set = {{"a", 0.5}};
  r.audit = {{"rule", "oav"}};
  json without = report_json(r);
  CHECK(without["path"].is_null());
  CHECK(without["audit"]["rule"] == "oav");
  CHECK(without["argmin_set"][0]["id"] == "a");
  CHECK(without["argmin_set"][0]["value"] == 0.5);

  r.path = std::vector<std::string>{"a", "b"};
  json with = report_json(r);
  CHECK(with["path"] == json({"a", "b"}));
  CHECK(with["no_path"] == false);
}

TEST_CASE("violations serialize ballot, code, and detail") {
  std::vector<Violation> v = {{2, "overlap", "candidate 'x' both approved and disapproved"}};
  json j = violations_json(v);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["ballot"] == 2);
  CHECK(j[0]["code"] == "overlap");
  CHECK(j[0]["detail"].get<std::string>().find("'x'") != std::string::npos);
}

TEST_CASE("descent results serialize their trace summary") {
  DescentResult r;
  r.x_best = {1.5, -0.5};
  r.f_best = 0.25;
  r.trace.evals_used = 42;
  r.trace.converged = true;
  r.trace.iterates = {{{0.0, 0.0}, 1.0}, {{1.5, -0.5}, 0.25}};
  json j = descent_result_json(r);
  CHECK(j["x_best"] == json({1.5, -0.5}));
  CHECK(j["f_best"] == 0.25);
  CHECK(j["evals_used"] == 42);
  CHECK(j["converged"] == true);
  CHECK(j["accepted_iterates"] == 2);
}

TEST_CASE("power orderings serialize society, utility, and tie flag") {
  std::vector<SocialPowerEntry> order = {{"cars", 1000.0, false}, {"walkers", 10.0, false}};
  json j = power_order_json(order);
  CHECK(j[0]["society"] == "cars");
  CHECK(j[0]["utility"] == 1000.0);
  CHECK(j[1]["tied"] == false);
}
