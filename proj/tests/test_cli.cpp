// End-to-end checks on the csi-opt binary: every subcommand, both output
// formats, and the documented exit codes (0 ok, 2 validation, 3 capacity,
// 4 no path).
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "test_support.hpp"

using nlohmann::json;
using test_support::fixture;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the binary through the shell, capturing stdout; stderr is dropped so
// expected failures stay quiet in the test log.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string("'") + CSI_OPT_BIN + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = std::move(out);
  return r;
}

json parse_out(const RunResult& r) {
  CAPTURE(r.out);
  return json::parse(r.out);
}

std::string q(const std::string& path) { return "'" + path + "'"; }

// Unique scratch file that survives until process exit; fine for tests.
std::string write_temp(const std::string& stem, const std::string& contents) {
  static int counter = 0;
  auto path = std::filesystem::temp_directory_path() /
              ("csi_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) +
               "_" + stem);
  std::ofstream f(path, std::ios::binary);
  f << contents;
  f.close();
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("mwsr: exact proportional rule on the basic election") {
  RunResult r = run_cli("mwsr " + q(fixture("election_basic.json")) + " --rule pav-exact --k 2");
  REQUIRE(r.code == 0);
  json j = parse_out(r);
  CHECK(j.at("committee") == json({"a", "b"}));
  CHECK(j.at("objective_num") == 7);
  CHECK(j.at("objective_den") == 2);
  CHECK(j.at("ties") == 1);
  CHECK(j.at("rule") == "pav-exact");
  CHECK(j.at("k") == 2);
}

TEST_CASE("mwsr: approval rule reports ties and reads CSV elections") {
  RunResult r = run_cli("mwsr " + q(fixture("election_tie.json")) + " --rule av --k 1");
  REQUIRE(r.code == 0);
  json j = parse_out(r);
  CHECK(j.at("committee") == json({"a"}));
  CHECK(j.at("ties") == 2);

  // The CSV loader must agree with the JSON loader on the same election.
  RunResult rj = run_cli("mwsr " + q(fixture("election_basic.json")) + " --rule av --k 1");
  RunResult rc = run_cli("mwsr " + q(fixture("election_basic.csv")) + " --rule av --k 1");
  REQUIRE(rj.code == 0);
  REQUIRE(rc.code == 0);
  CHECK(rj.out == rc.out);
}

TEST_CASE("mwsr: csv view lists every candidate with its tallies") {
  RunResult r =
      run_cli("mwsr " + q(fixture("election_basic.json")) + " --rule av --k 1 --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "candidate,approvals,disapprovals,selected\n"
        "a,2,0,1\n"
        "b,2,0,0\n"
        "c,1,0,0\n");
}

TEST_CASE("mwsr: a custom weight file matching harmonic weights changes nothing") {
  std::string base = "mwsr " + q(fixture("election_basic.json")) + " --rule pav-exact --k 3";
  RunResult harmonic = run_cli(base + " --alpha harmonic");
  RunResult custom = run_cli(base + " --alpha " + q(fixture("alpha_custom.json")));
  REQUIRE(harmonic.code == 0);
  REQUIRE(custom.code == 0);
  CHECK(harmonic.out == custom.out);
}

TEST_CASE("mwsr: exhaustive search refuses oversized elections with exit 3") {
  json big;
  big["candidates"] = json::array();
  for (int i = 1; i <= 21; ++i) big["candidates"].push_back("c" + std::to_string(i));
  big["ballots"] = json::array({{{"voter", "v1"}, {"approve", {"c1"}}}});
  std::string path = write_temp("big_election.json", big.dump());
  CHECK(run_cli("mwsr " + q(path) + " --rule pav-exact --k 2").code == 3);
  // The greedy rule has no such cap.
  CHECK(run_cli("mwsr " + q(path) + " --rule pav-greedy --k 2").code == 0);
}

TEST_CASE("tav: screening stage then least-vetoed pick") {
  RunResult r = run_cli("tav " + q(fixture("election_minimax.json")) + " --l 3 --k 1");
  REQUIRE(r.code == 0);
  json j = parse_out(r);
  CHECK(j.at("stage1") == json({"a", "b", "c"}));
  CHECK(j.at("final") == json({"b"}));
  CHECK(j.at("no_path") == false);
  CHECK(j.at("path").is_null());
  REQUIRE(j.at("argmin_set").size() == 1);
  CHECK(j.at("argmin_set")[0].at("id") == "b");
  CHECK(j.at("argmin_set")[0].at("value") == 0.0);
}

TEST_CASE("oracle rules agree with the fast implementations") {
  SUBCASE("proportional committee") {
    json fast = parse_out(
        run_cli("mwsr " + q(fixture("election_basic.json")) + " --rule pav-exact --k 2"));
    json slow =
        parse_out(run_cli("oracle pav " + q(fixture("election_basic.json")) + " --k 2"));
    CHECK(slow.at("rule") == "pav-enumerate");
    for (const char* key : {"committee", "objective_num", "objective_den", "ties"}) {
      CHECK(fast.at(key) == slow.at(key));
    }
  }
  SUBCASE("two-stage screening") {
    json fast = parse_out(run_cli("tav " + q(fixture("election_minimax.json")) + " --l 3 --k 1"));
    json slow = parse_out(
        run_cli("oracle tav " + q(fixture("election_minimax.json")) + " --l 3 --k 1"));
    CHECK(fast.at("stage1") == slow.at("stage1"));
    CHECK(fast.at("final") == slow.at("final"));
    CHECK(fast.at("argmin_set") == slow.at("argmin_set"));
  }
  SUBCASE("cheapest path") {
    std::string args = q(fixture("graph_diamond.json")) + " --from A --to D";
    RunResult fast = run_cli("path " + args);
    RunResult slow = run_cli("oracle path " + args);
    REQUIRE(fast.code == 0);
    REQUIRE(slow.code == 0);
    CHECK(fast.out == slow.out);
    json j = parse_out(fast);
    CHECK(j.at("found") == true);
    CHECK(j.at("path") == json({"A", "B", "D"}));
    CHECK(j.at("cost") == doctest::Approx(0.2));
  }
}

TEST_CASE("path: exit codes distinguish bad input from genuine unreachability") {
  std::string graph = q(fixture("graph_diamond.json"));
  CHECK(run_cli("path " + graph + " --from A --to ZZZ").code == 2);
  RunResult r = run_cli("path " + graph + " --from D --to A");
  CHECK(r.code == 4);
  json j = parse_out(r);
  CHECK(j.at("found") == false);
  CHECK(j.at("path") == json::array());
}

TEST_CASE("csi oav: threshold filter then approval vote") {
  std::string base = "csi oav --universe " + q(fixture("universe_small.json")) +
                     " --election " + q(fixture("election_basic.json")) + " --k 1";
  SUBCASE("permissive threshold keeps everyone") {
    json j = parse_out(run_cli(base + " --tau 0.5"));
    CHECK(j.at("final") == json({"a"}));
    CHECK(j.at("audit").at("retained") == "3");
    CHECK(j.at("audit").at("tau_relaxed") == "false");
    CHECK(j.at("audit").at("sd_min") == "0.25");
  }
  SUBCASE("too-strict threshold relaxes to the least discriminatory option") {
    json j = parse_out(run_cli(base + " --tau 0.2"));
    CHECK(j.at("final") == json({"b"}));
    CHECK(j.at("audit").at("tau_relaxed") == "true");
    CHECK(j.at("audit").at("tau_effective") == "0.25");
  }
}

TEST_CASE("csi pnm: profile-weighted retention picks the balanced option") {
  RunResult r = run_cli("csi pnm --universe " + q(fixture("universe_small.json")) +
                        " --election " + q(fixture("election_basic.json")));
  REQUIRE(r.code == 0);
  json j = parse_out(r);
  CHECK(j.at("final") == json({"b"}));
  CHECK(j.at("audit").at("stage1_objective") == "9/2");
  REQUIRE(j.at("argmin_set").size() == 2);
  CHECK(j.at("argmin_set")[0].at("id") == "b");
  CHECK(j.at("argmin_set")[1].at("id") == "c");
}

TEST_CASE("csi pa: one adoption step from a standing state") {
  std::string base = "csi pa --universe " + q(fixture("universe_policy.json")) + " --graph " +
                     q(fixture("graph_diamond.json")) + " --election " +
                     q(fixture("election_policy.json")) + " --state " + q(fixture("state_a.json"));
  SUBCASE("plain costs walk the cheap branch") {
    RunResult r = run_cli(base);
    REQUIRE(r.code == 0);
    json j = parse_out(r);
    CHECK(j.at("report").at("final") == json({"D"}));
    CHECK(j.at("report").at("path") == json({"A", "B", "D"}));
    CHECK(j.at("state").at("adopted") == json({"A", "D"}));
    CHECK(j.at("state").at("history") == json({"A", "B", "D"}));
    CHECK(j.at("state").at("step_count") == 1);
  }
  SUBCASE("the knowledge map reroutes around a pessimistically priced edge") {
    RunResult r = run_cli(base + " --use-km");
    REQUIRE(r.code == 0);
    json j = parse_out(r);
    CHECK(j.at("report").at("path") == json({"A", "C", "D"}));
    CHECK(j.at("report").at("audit").at("path_cost") == "0.35");
  }
}

TEST_CASE("csi pa: unreachable target still prints the report, then exits 4") {
  RunResult r = run_cli("csi pa --universe " + q(fixture("universe_policy.json")) + " --graph " +
                        q(fixture("graph_diamond.json")) + " --election " +
                        q(fixture("election_policy.json")) + " --state " +
                        q(fixture("state_d.json")) + " --sp explicit --sp-ids A B C");
  CHECK(r.code == 4);
  json j = parse_out(r);
  CHECK(j.at("report").at("no_path") == true);
  CHECK(j.at("report").at("audit").at("path") == "none");
  CHECK(j.at("state").at("adopted") == json({"D"}));
  CHECK(j.at("state").at("step_count") == 0);
}

TEST_CASE("csi pm: seeded runs are reproducible byte for byte") {
  std::string cmd = "csi pm --universe " + q(fixture("universe_policy.json")) + " --graph " +
                    q(fixture("graph_diamond.json")) + " --election " +
                    q(fixture("election_policy.json")) +
                    " --steps 2 --seed 7 --sp random --sp-m 2";
  RunResult a = run_cli(cmd);
  RunResult b = run_cli(cmd);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  json j = parse_out(a);
  CHECK(j.at("reports").size() == 2);
  CHECK(j.at("state").at("step_count") == 2);
}

TEST_CASE("scenario: rule choice flips the verdict") {
  RunResult dflt = run_cli("scenario");
  REQUIRE(dflt.code == 0);
  json j = parse_out(dflt);
  CHECK(j.at("winners") == json({"mixed"}));
  CHECK(j.at("audit").at("rule") == "ldm-wsr");

  json majority = parse_out(run_cli("scenario --rule absolute-majority"));
  CHECK(majority.at("winners") == json({"none"}));
  CHECK(majority.at("audit").at("winner_approvals") == "1000");

  json tied = parse_out(run_cli("scenario --cars 10 --pedestrians 10"));
  CHECK(tied.at("audit").at("power_tie_before") == "true");

  // The stock spec file and the built-in defaults are the same scenario.
  RunResult from_spec = run_cli("scenario --spec " + q(fixture("scenario_default.json")));
  CHECK(from_spec.out == dflt.out);
}

TEST_CASE("scenario: csv view tallies every option") {
  RunResult r = run_cli("scenario --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "option,approvals,disapprovals,sd_scalar,winner\n"
        "none,1000,10,0.875,0\n"
        "cross-walks,1000,0,0.625,0\n"
        "traffic-lights,10,1000,0.71875,0\n"
        "mixed,10,0,0.25,1\n");
}

TEST_CASE("validate: recognizes each input family and exits 0 when clean") {
  auto check_valid = [](const std::string& file, const std::string& type) {
    RunResult r = run_cli("validate " + q(fixture(file)));
    CAPTURE(file);
    CHECK(r.code == 0);
    json j = parse_out(r);
    CHECK(j.at("type") == type);
    CHECK(j.at("valid") == true);
    CHECK(j.at("problems") == json::array());
  };
  check_valid("election_basic.json", "election");
  check_valid("election_basic.csv", "election");
  check_valid("universe_small.json", "universe");
  check_valid("graph_diamond.json", "graph");
  check_valid("scenario_default.json", "scenario");
}

TEST_CASE("validate: a malformed election lists its violations and exits 2") {
  RunResult r = run_cli("validate " + q(fixture("election_invalid.json")));
  CHECK(r.code == 2);
  json j = parse_out(r);
  CHECK(j.at("valid") == false);
  REQUIRE(!j.at("problems").empty());
  std::string all = j.at("problems").dump();
  CHECK(all.find("overlap") != std::string::npos);
  CHECK(all.find("unknown-candidate") != std::string::npos);
}

TEST_CASE("validate: a file of unknown shape needs an explicit type") {
  CHECK(run_cli("validate " + q(fixture("state_a.json"))).code == 2);
}

TEST_CASE("descend: recovers the minimum of file-described objectives") {
  SUBCASE("quadratic bowl") {
    RunResult r =
        run_cli("descend --objective " + q(fixture("objective_quadratic.json")) + " --x0 0 0");
    REQUIRE(r.code == 0);
    json j = parse_out(r);
    CHECK(j.at("converged") == true);
    REQUIRE(j.at("x_best").size() == 2);
    CHECK(j.at("x_best")[0].get<double>() == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(j.at("x_best")[1].get<double>() == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(j.at("f_best").get<double>() < 1e-10);
  }
  SUBCASE("kinked absolute value") {
    RunResult r = run_cli("descend --objective " + q(fixture("objective_abs.json")) + " --x0 3");
    REQUIRE(r.code == 0);
    json j = parse_out(r);
    CHECK(j.at("converged") == true);
    CHECK(std::abs(j.at("x_best")[0].get<double>()) < 1e-6);
  }
}

TEST_CASE("--out mirrors stdout into a file") {
  std::string out_path = write_temp("mirror.json", "");
  RunResult r = run_cli("mwsr " + q(fixture("election_basic.json")) +
                        " --rule pav-exact --k 2 --out " + q(out_path));
  REQUIRE(r.code == 0);
  CHECK(slurp(out_path) == r.out);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("mwsr " + q(fixture("election_basic.json"))).code == 2);  // missing --k
  CHECK(run_cli("no-such-command").code == 2);
  CHECK(run_cli("mwsr " + q(fixture("election_basic.json")) + " --k 1 --format xml").code == 2);
  CHECK(run_cli("tav " + q(fixture("election_minimax.json")) +
                " --l 3 --k 1 --format csv").code == 2);  // csv is tally-only
  CHECK(run_cli("mwsr /no/such/file.json --k 1").code == 2);
  CHECK(run_cli("csi pa --universe " + q(fixture("universe_policy.json")) + " --graph " +
                q(fixture("graph_diamond.json")) + " --election " +
                q(fixture("election_policy.json")) + " --sp explicit").code == 2);
}
