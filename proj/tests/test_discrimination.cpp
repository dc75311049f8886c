#include <doctest.h>

#include <algorithm>
#include <functional>

#include "csi/discrimination.hpp"
#include "csi/error.hpp"
#include "test_support.hpp"

using namespace csi;

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

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
  return std::any_of(problems.begin(), problems.end(), [&](const std::string& p) {
    return p.find(needle) != std::string::npos;
  });
}

SocialUniverse tiny_universe() {
  SocialUniverse u;
  u.dimension = 2;
  u.sd = DiscriminationFunction(2, {"axis-x", "axis-y"});
  u.sd.add_point("a", "*", {0.25, 0.75});
  Agent agent;
  agent.id = "ag1";
  agent.traits.values["utility"] = 2.0;
  u.agents.push_back(agent);
  Society soc;
  soc.id = "s1";
  soc.members = {"ag1"};
  soc.trait_weights = {{"utility", 1.0}};
  u.societies.push_back(soc);
  u.scalarization = Scalarization::uniform(2);
  return u;
}

}  // namespace

TEST_CASE("missing utility trait is an integrity error") {
  TraitVector t;
  t.values["height"] = 1.8;
  CHECK_FALSE(t.has_utility());
  CHECK(kind_of([&] { t.utility(); }) == ErrorKind::Integrity);
  t.values["utility"] = 3.0;
  CHECK(t.utility() == 3.0);
}

TEST_CASE("table constructor checks dimension and axis labels") {
  CHECK(kind_of([] { DiscriminationFunction(0); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { DiscriminationFunction(2, {"only-one"}); }) ==
        ErrorKind::InvalidParameter);
  DiscriminationFunction ok(2, {"x", "y"});
  CHECK(ok.dimension() == 2);
  CHECK(ok.axes() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("add_point validates length and range") {
  DiscriminationFunction f(2);
  CHECK(kind_of([&] { f.add_point("p", "*", {0.5}); }) == ErrorKind::Validation);
  CHECK(kind_of([&] { f.add_point("p", "*", {0.5, 1.5}); }) == ErrorKind::Validation);
  CHECK(kind_of([&] { f.add_point("p", "*", {-0.1, 0.5}); }) == ErrorKind::Validation);
  CHECK_NOTHROW(f.add_point("p", "*", {0.0, 1.0}));
  CHECK(f.has_point("p"));
}

TEST_CASE("eval uses the requested context and falls back to the default") {
  DiscriminationFunction f(1);
  f.add_point("p", "*", {0.5});
  f.add_point("p", "night", {0.9});
  CHECK(f.eval("p") == std::vector<double>{0.5});
  CHECK(f.eval("p", "night") == std::vector<double>{0.9});
  CHECK(f.eval("p", "day") == std::vector<double>{0.5});  // falls back

  f.add_point("q", "night", {0.1});
  CHECK(f.eval("q", "night") == std::vector<double>{0.1});
  CHECK(kind_of([&] { f.eval("q", "day"); }) == ErrorKind::Domain);
  CHECK(kind_of([&] { f.eval("q"); }) == ErrorKind::Domain);
  CHECK(kind_of([&] { f.eval("missing"); }) == ErrorKind::Domain);

  // Empty context stores under the default key.
  DiscriminationFunction g(1);
  g.add_point("r", "", {0.25});
  CHECK(g.eval("r") == std::vector<double>{0.25});
  CHECK(evaluate_sd(g, {"r", ""}) == std::vector<double>{0.25});
}

TEST_CASE("scalarize weighted sum and max") {
  std::vector<double> v{0.2, 0.6};
  Scalarization ws;
  ws.weights = {0.75, 0.25};
  CHECK(scalarize(v, ws) == doctest::Approx(0.3));

  Scalarization mx;
  mx.mode = ScalarMode::Max;
  CHECK(scalarize(v, mx) == 0.6);

  Scalarization wrong;
  wrong.weights = {1.0};
  CHECK(kind_of([&] { scalarize(v, wrong); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([&] { scalarize(std::vector<double>{}, mx); }) ==
        ErrorKind::InvalidParameter);
}

TEST_CASE("uniform scalarization splits weight evenly") {
  Scalarization s = Scalarization::uniform(4);
  REQUIRE(s.weights.size() == 4);
  for (double w : s.weights) CHECK(w == doctest::Approx(0.25));
  CHECK(kind_of([] { Scalarization::uniform(0); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("pessimistic cost adds the weighted uncertainty") {
  KnowledgeMap km;
  km.entries["a->b"] = {0.25, 0.5};  // U, D
  Scalarization s;
  s.weights = {1.0};
  s.lambda_u = 1.0;
  CHECK(pessimistic_cost(km, "a->b", s) == doctest::Approx(0.75));
  s.lambda_u = 2.0;
  CHECK(pessimistic_cost(km, "a->b", s) == doctest::Approx(1.0));
  CHECK(kind_of([&] { pessimistic_cost(km, "zz", s); }) == ErrorKind::Domain);
}

TEST_CASE("social utility is the trait-weighted member sum") {
  SocialUniverse u = tiny_universe();
  CHECK(social_utility(u, u.societies[0]) == doctest::Approx(2.0));

  Agent extra;
  extra.id = "ag2";
  extra.traits.values["utility"] = 0.5;
  u.agents.push_back(extra);
  u.societies[0].members.push_back("ag2");
  CHECK(social_utility(u, u.societies[0]) == doctest::Approx(2.5));

  Society ghost;
  ghost.id = "s2";
  ghost.members = {"nobody"};
  ghost.trait_weights = {{"utility", 1.0}};
  CHECK(kind_of([&] { social_utility(u, ghost); }) == ErrorKind::Integrity);

  Society wrong_trait;
  wrong_trait.id = "s3";
  wrong_trait.members = {"ag1"};
  wrong_trait.trait_weights = {{"charisma", 1.0}};
  CHECK(kind_of([&] { social_utility(u, wrong_trait); }) == ErrorKind::Integrity);
}

TEST_CASE("social power order sorts descending with tie flags") {
  SocialUniverse u = tiny_universe();
  Agent a2;
  a2.id = "ag2";
  a2.traits.values["utility"] = 5.0;
  Agent a3;
  a3.id = "ag3";
  a3.traits.values["utility"] = 2.0;
  u.agents.push_back(a2);
  u.agents.push_back(a3);
  Society sb{"sb", {"ag2"}, {{"utility", 1.0}}};
  Society sc{"sc", {"ag3"}, {{"utility", 1.0}}};
  u.societies.push_back(sb);
  u.societies.push_back(sc);

  auto order = social_power_order(u);
  REQUIRE(order.size() == 3);
  CHECK(order[0].society == "sb");
  CHECK(order[0].utility == doctest::Approx(5.0));
  CHECK_FALSE(order[0].tied);
  // s1 and sc both total 2.0; ties are flagged and ordered by id.
  CHECK(order[1].society == "s1");
  CHECK(order[2].society == "sc");
  CHECK(order[1].tied);
  CHECK(order[2].tied);

  SocialUniverse empty;
  CHECK(kind_of([&] { social_power_order(empty); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("validate_universe accepts a consistent model") {
  CHECK(validate_universe(tiny_universe()).empty());
}

TEST_CASE("validate_universe reports each inconsistency") {
  SocialUniverse u = tiny_universe();
  u.agents[0].traits.values.erase("utility");
  u.agents[0].sdp = "ghost-profile";
  u.societies[0].trait_weights = {{"utility", 0.4}};
  u.societies.push_back({"s2", {"phantom"}, {{"utility", 1.0}}});
  u.sdp_bank["bad"] = SdProfile{{0.5}};  // wrong dimension
  u.knowledge_map.entries["x"] = {1.5, 0.0};
  u.scalarization.weights = {0.5, 0.6};
  u.scalarization.lambda_u = -1.0;

  auto problems = validate_universe(u);
  CHECK(mentions(problems, "lacks the mandatory 'utility' trait"));
  CHECK(mentions(problems, "unknown profile 'ghost-profile'"));
  CHECK(mentions(problems, "trait weights sum to"));
  CHECK(mentions(problems, "unknown agent 'phantom'"));
  CHECK(mentions(problems, "profile 'bad' has wrong dimension"));
  CHECK(mentions(problems, "knowledge entry 'x'"));
  CHECK(mentions(problems, "scalarization weights sum to"));
  CHECK(mentions(problems, "lambda_u must be >= 0"));
}

TEST_CASE("validate_universe flags structural duplicates") {
  SocialUniverse u = tiny_universe();
  u.agents.push_back(u.agents[0]);                   // duplicate agent id
  u.societies.push_back({"s1", {"ag1"}, {{"utility", 1.0}}});  // duplicate society id
  u.societies.push_back({"s9", {}, {{"utility", 1.0}}});       // empty membership
  auto problems = validate_universe(u);
  CHECK(mentions(problems, "duplicate agent id 'ag1'"));
  CHECK(mentions(problems, "duplicate society id 's1'"));
  CHECK(mentions(problems, "society 's9' has no members"));
}

TEST_CASE("validate_universe checks dimension agreement") {
  SocialUniverse u = tiny_universe();
  u.dimension = 3;  // sd table still 2-dimensional
  auto problems = validate_universe(u);
  CHECK(mentions(problems, "sd table dimension"));
}
