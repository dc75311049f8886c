// csi-opt: command-line front end for the social-choice toolkit. Every
// subcommand reads flat files, prints one JSON document (or CSV for tally
// views) on stdout, and exits 0 on success, 2 on validation problems, 3 on
// capacity limits, 4 when no path exists.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csi/descent.hpp"
#include "csi/error.hpp"
#include "csi/format.hpp"
#include "csi/graph.hpp"
#include "csi/io.hpp"
#include "csi/mwsr.hpp"
#include "csi/oracle.hpp"
#include "csi/pipelines.hpp"
#include "csi/scenario.hpp"

namespace {

using csi::Error;
using csi::ErrorKind;
using nlohmann::json;

struct GlobalOpts {
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 0;
};

// Prints to stdout and mirrors the same bytes into --out when given.
int emit(const GlobalOpts& g, const std::string& text) {
  std::cout << text;
  if (!g.out_path.empty()) {
    std::ofstream f(g.out_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Validation, "cannot write output file '" + g.out_path + "'");
    f << text;
  }
  return 0;
}

int emit_json(const GlobalOpts& g, const json& j) { return emit(g, j.dump(2) + "\n"); }

void require_json_format(const GlobalOpts& g, const std::string& command) {
  if (g.format != "json") {
    throw Error(ErrorKind::InvalidParameter,
                "--format csv is only available for tally views (mwsr, scenario); '" + command +
                    "' emits JSON");
  }
}

csi::ApprovalElection load_checked_election(const std::string& path) {
  csi::ApprovalElection e = csi::load_election(path);
  auto violations = csi::validate_election(e);
  if (!violations.empty()) {
    std::vector<std::string> parts;
    for (const auto& v : violations) parts.push_back(v.code + ": " + v.detail);
    throw Error(ErrorKind::Validation,
                "election '" + path + "' is malformed: " + csi::join(parts, "; "));
  }
  return e;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// ---- mwsr ------------------------------------------------------------

struct MwsrArgs {
  std::string election;
  std::string rule = "pav-exact";
  int k = 1;
  std::string alpha = "harmonic";
  int cap = csi::kExhaustiveSearchCap;
};

int run_mwsr(const GlobalOpts& g, const MwsrArgs& a) {
  csi::ApprovalElection e = load_checked_election(a.election);
  csi::RuleResult res;
  if (a.rule == "av") {
    res.committee = csi::av_top_k(e, a.k);
    csi::Rational total(0);
    for (const auto& id : res.committee.members) {
      total = total + csi::Rational(csi::approval_score(e, id));
    }
    res.objective = total;
    res.ties = csi::av_committee_ties(e, a.k);
  } else {
    csi::PavWeights w = csi::load_weights(a.alpha, a.k);
    res = a.rule == "pav-exact" ? csi::pav_exact(e, a.k, w, a.cap) : csi::pav_greedy(e, a.k, w);
  }

  if (g.format == "csv") {
    std::string text = "candidate,approvals,disapprovals,selected\n";
    for (const auto& id : e.candidates) {
      text += csv_escape(id) + "," + std::to_string(csi::approval_score(e, id)) + "," +
              std::to_string(csi::disapproval_score(e, id)) + "," +
              (res.committee.contains(id) ? "1" : "0") + "\n";
    }
    return emit(g, text);
  }
  json out = csi::rule_result_json(res);
  out["rule"] = a.rule;
  out["k"] = a.k;
  return emit_json(g, out);
}

// ---- tav -------------------------------------------------------------

struct TavArgs {
  std::string election;
  int l = 3;
  int k = 1;
};

int run_tav(const GlobalOpts& g, const TavArgs& a) {
  require_json_format(g, "tav");
  csi::ApprovalElection e = load_checked_election(a.election);
  return emit_json(g, csi::report_json(csi::minimax_tav(e, a.l, a.k)));
}

// ---- csi pipelines ---------------------------------------------------

struct CsiArgs {
  std::string universe;
  std::string graph;
  std::string election;
  std::string state;
  int l = 3;
  int j = 2;
  int k = 1;
  double tau = 0.5;
  int steps = 1;
  std::string sp = "all";
  int sp_m = 0;
  std::vector<std::string> sp_ids;
  bool use_km = false;
};

csi::PaOptions make_pa_options(const CsiArgs& a) {
  csi::PaOptions opts;
  if (a.sp == "all") {
    opts.sp.mode = csi::SpSelector::Mode::All;
  } else if (a.sp == "explicit") {
    if (a.sp_ids.empty()) {
      throw Error(ErrorKind::InvalidParameter, "--sp explicit requires --sp-ids");
    }
    opts.sp.mode = csi::SpSelector::Mode::Explicit;
    opts.sp.ids = a.sp_ids;
  } else if (a.sp == "random") {
    if (a.sp_m < 1) {
      throw Error(ErrorKind::InvalidParameter, "--sp random requires --sp-m >= 1");
    }
    opts.sp.mode = csi::SpSelector::Mode::RandomM;
    opts.sp.m = a.sp_m;
  } else {
    throw Error(ErrorKind::InvalidParameter,
                "--sp must be one of all, explicit, random (got '" + a.sp + "')");
  }
  opts.use_knowledge_map = a.use_km;
  return opts;
}

int run_csi(const GlobalOpts& g, const std::string& pipeline, const CsiArgs& a) {
  require_json_format(g, "csi");
  csi::SocialUniverse u = csi::load_universe(a.universe);
  csi::ApprovalElection e = load_checked_election(a.election);

  if (pipeline == "oav") {
    return emit_json(g, csi::report_json(csi::oav_csi(u, e, a.k, a.tau)));
  }
  csi::StageParams p{a.l, a.j, a.k};
  if (pipeline == "pnm") {
    return emit_json(g, csi::report_json(csi::pnm_tav(u, e, p)));
  }

  csi::PreferenceGraph graph = csi::load_graph(a.graph);
  csi::PaOptions opts = make_pa_options(a);
  if (pipeline == "pa") {
    csi::PolicyState state;
    if (!a.state.empty()) state = csi::parse_state_json(csi::load_json_file(a.state));
    auto [next, rep] = csi::pa_step(u, graph, e, state, p, g.seed, opts);
    json out = {{"report", csi::report_json(rep)}, {"state", csi::state_json(next)}};
    emit_json(g, out);
    return rep.no_path ? 4 : 0;
  }
  // pm
  auto [state, reports] = csi::pm_run(u, graph, e, p, a.steps, g.seed, opts);
  json reps = json::array();
  for (const auto& r : reports) reps.push_back(csi::report_json(r));
  json out = {{"reports", reps}, {"state", csi::state_json(state)}};
  return emit_json(g, out);
}

// ---- scenario --------------------------------------------------------

struct ScenarioArgs {
  std::string spec_path;
  long cars = -1;
  long pedestrians = -1;
  std::string rule;
  double tau = -1.0;
  std::string pipeline;
};

int run_scenario(const GlobalOpts& g, const ScenarioArgs& a) {
  csi::ScenarioSpec spec = a.spec_path.empty()
                               ? csi::ScenarioSpec::defaults(1000, 10, "ldm-wsr")
                               : csi::parse_scenario_json(csi::load_json_file(a.spec_path));
  if (a.cars >= 0) spec.cars = a.cars;
  if (a.pedestrians >= 0) spec.pedestrians = a.pedestrians;
  if (!a.rule.empty()) spec.rule = a.rule;
  if (a.tau >= 0.0) spec.tau = a.tau;
  if (!a.pipeline.empty()) spec.ldm_pipeline = a.pipeline;

  csi::ScenarioReport rep = csi::run_traffic_scenario(spec);
  if (g.format == "csv") {
    std::string text = "option,approvals,disapprovals,sd_scalar,winner\n";
    for (const auto& option : rep.inputs.options) {
      const auto& [app, dis] = rep.tallies.at(option);
      bool won = std::find(rep.winners.begin(), rep.winners.end(), option) != rep.winners.end();
      text += csv_escape(option) + "," + std::to_string(app) + "," + std::to_string(dis) + "," +
              csi::dtos(rep.sd_scalars.at(option)) + "," + (won ? "1" : "0") + "\n";
    }
    return emit(g, text);
  }
  return emit_json(g, csi::scenario_report_json(rep));
}

// ---- oracle / path ---------------------------------------------------

struct PathArgs {
  std::string graph;
  std::vector<std::string> from;
  std::string to;
  std::string universe;
  bool use_km = false;
};

int run_path(const GlobalOpts& g, const PathArgs& a, bool exhaustive) {
  require_json_format(g, exhaustive ? "oracle path" : "path");
  csi::PreferenceGraph graph = csi::load_graph(a.graph);
  csi::Scalarization s = csi::Scalarization::uniform(graph.dimension);
  const csi::KnowledgeMap* km = nullptr;
  csi::SocialUniverse u;
  if (!a.universe.empty()) {
    u = csi::load_universe(a.universe);
    s = u.scalarization;
    if (a.use_km) km = &u.knowledge_map;
  } else if (a.use_km) {
    throw Error(ErrorKind::InvalidParameter, "--use-km requires --universe");
  }
  csi::PathResult res = exhaustive ? csi::oracle::path_enumerate(graph, a.from, a.to, s, km)
                                   : csi::shortest_path(graph, a.from, a.to, s, km);
  json out = {{"found", res.found}, {"path", res.path}, {"cost", res.cost}};
  emit_json(g, out);
  return res.found ? 0 : 4;
}

// ---- validate ----------------------------------------------------------

std::string detect_kind(const std::string& path, const json& j) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") return "election";
  if (!j.is_object()) return "";
  if (j.contains("sd_table") || j.contains("ballot_template") ||
      (j.contains("cars") && j.contains("pedestrians"))) {
    return "scenario";
  }
  if (j.contains("agents") || j.contains("societies") || j.contains("sdp_bank")) {
    return "universe";
  }
  if (j.contains("nodes") || j.contains("edges")) return "graph";
  if (j.contains("ballots") || j.contains("candidates")) return "election";
  return "";
}

struct ValidateArgs {
  std::string path;
  std::string type;  // empty = detect
};

int run_validate(const GlobalOpts& g, const ValidateArgs& a) {
  require_json_format(g, "validate");
  std::string kind = a.type;
  json j;
  bool is_csv = a.path.size() > 4 && a.path.substr(a.path.size() - 4) == ".csv";
  if (!is_csv) j = csi::load_json_file(a.path);
  if (kind.empty()) kind = detect_kind(a.path, j);
  if (kind.empty()) {
    throw Error(ErrorKind::Validation,
                "cannot tell what '" + a.path + "' holds; pass --type explicitly");
  }

  json problems = json::array();
  if (kind == "election") {
    csi::ApprovalElection e = csi::load_election(a.path);
    problems = csi::violations_json(csi::validate_election(e));
  } else if (kind == "universe") {
    try {
      (void)csi::parse_universe_json(j);
    } catch (const Error& err) {
      problems.push_back(err.what());
    }
  } else if (kind == "graph") {
    try {
      (void)csi::parse_graph_json(j);
    } catch (const Error& err) {
      problems.push_back(err.what());
    }
  } else if (kind == "scenario") {
    for (const auto& p : csi::validate_scenario(csi::parse_scenario_json(j))) {
      problems.push_back(p);
    }
  } else {
    throw Error(ErrorKind::InvalidParameter,
                "--type must be one of election, universe, graph, scenario");
  }

  bool valid = problems.empty();
  json out = {{"type", kind}, {"valid", valid}, {"problems", problems}};
  emit_json(g, out);
  return valid ? 0 : 2;
}

// ---- descend -----------------------------------------------------------

struct DescendArgs {
  std::string objective;
  std::vector<double> x0;
  std::vector<double> step{1.0};
  double tol = 1e-8;
  double grow = 2.0;
  double shrink = 0.5;
  long max_evals = 100000;
};

std::vector<double> broadcast(std::vector<double> v, std::size_t n, const char* what) {
  if (v.empty()) v.assign(n, 0.0);
  if (v.size() == 1) v.assign(n, v[0]);
  if (v.size() != n) {
    throw Error(ErrorKind::InvalidParameter,
                std::string(what) + " must have 1 or " + std::to_string(n) + " entries");
  }
  return v;
}

csi::ObjectiveHandle load_objective(const json& j, std::size_t dim) {
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorKind::Validation, "objective file must be an object with a 'kind'");
  }
  std::string kind = j.at("kind").get<std::string>();
  std::vector<double> coeffs{1.0};
  std::vector<double> center{0.0};
  if (j.contains("coeffs")) coeffs = j.at("coeffs").get<std::vector<double>>();
  if (j.contains("center")) center = j.at("center").get<std::vector<double>>();
  coeffs = broadcast(std::move(coeffs), dim, "objective coeffs");
  center = broadcast(std::move(center), dim, "objective center");

  csi::ObjectiveHandle f;
  f.dimension = static_cast<int>(dim);
  if (kind == "quadratic") {
    f.eval = [coeffs, center](std::span<const double> x) {
      double acc = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - center[i];
        acc += coeffs[i] * d * d;
      }
      return acc;
    };
  } else if (kind == "abs") {
    f.eval = [coeffs, center](std::span<const double> x) {
      double acc = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        acc += coeffs[i] * std::abs(x[i] - center[i]);
      }
      return acc;
    };
  } else {
    throw Error(ErrorKind::Validation, "objective kind '" + kind + "' is not one of quadratic, abs");
  }

  if (j.contains("bounds")) {
    std::vector<std::array<double, 2>> bounds;
    for (const auto& pair : j.at("bounds")) {
      auto lohi = pair.get<std::vector<double>>();
      if (lohi.size() != 2) throw Error(ErrorKind::Validation, "each bound must be [lo, hi]");
      bounds.push_back({lohi[0], lohi[1]});
    }
    if (bounds.size() == 1) bounds.assign(dim, bounds[0]);
    if (bounds.size() != dim) {
      throw Error(ErrorKind::Validation, "bounds must have 1 or " + std::to_string(dim) + " rows");
    }
    f.bounds = std::move(bounds);
  }
  return f;
}

int run_descend(const GlobalOpts& g, const DescendArgs& a) {
  require_json_format(g, "descend");
  if (a.x0.empty()) throw Error(ErrorKind::InvalidParameter, "--x0 needs at least one coordinate");
  csi::ObjectiveHandle f = load_objective(csi::load_json_file(a.objective), a.x0.size());
  csi::DescentConfig cfg;
  cfg.initial_step = a.step;
  cfg.tol = a.tol;
  cfg.grow = a.grow;
  cfg.shrink = a.shrink;
  cfg.max_evals = a.max_evals;
  cfg.seed = g.seed;
  csi::DescentResult res = csi::coordinate_descent(f, a.x0, cfg);
  return emit_json(g, csi::descent_result_json(res));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic social-choice optimization toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--out", g.out_path, "Also write the output to this file");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "Seed for every randomized choice");

  std::function<int()> action;

  // mwsr
  auto mwsr_args = std::make_shared<MwsrArgs>();
  CLI::App* mwsr = app.add_subcommand("mwsr", "Multi-winner selection over an approval election");
  mwsr->fallthrough();
  mwsr->add_option("election", mwsr_args->election, "Election file (.json or .csv)")->required();
  mwsr->add_option("--rule", mwsr_args->rule, "Selection rule")
      ->check(CLI::IsMember({"av", "pav-exact", "pav-greedy"}));
  mwsr->add_option("--k", mwsr_args->k, "Committee size")->required();
  mwsr->add_option("--alpha", mwsr_args->alpha, "'harmonic' or a weight file");
  mwsr->add_option("--cap", mwsr_args->cap, "Exhaustive-search candidate cap");
  mwsr->callback([&action, &g, mwsr_args] {
    action = [&g, mwsr_args] { return run_mwsr(g, *mwsr_args); };
  });

  // tav
  auto tav_args = std::make_shared<TavArgs>();
  CLI::App* tav = app.add_subcommand("tav", "Two-stage screening vote");
  tav->fallthrough();
  tav->add_option("election", tav_args->election, "Election file")->required();
  tav->add_option("--l", tav_args->l, "Stage-one size")->required();
  tav->add_option("--k", tav_args->k, "Final committee size")->required();
  tav->callback([&action, &g, tav_args] {
    action = [&g, tav_args] { return run_tav(g, *tav_args); };
  });

  // csi {oav|pnm|pa|pm}
  auto csi_args = std::make_shared<CsiArgs>();
  CLI::App* csic = app.add_subcommand("csi", "Discrimination-aware selection pipelines");
  csic->require_subcommand(1);
  csic->fallthrough();
  for (const std::string name : {"oav", "pnm", "pa", "pm"}) {
    CLI::App* sub = csic->add_subcommand(name, "Pipeline '" + name + "'");
    sub->fallthrough();
    sub->add_option("--universe", csi_args->universe, "Social-universe file")->required();
    sub->add_option("--election", csi_args->election, "Election file")->required();
    if (name == "pa" || name == "pm") {
      sub->add_option("--graph", csi_args->graph, "Preference-graph file")->required();
      sub->add_option("--sp", csi_args->sp, "Candidate pre-filter: all, explicit, random");
      sub->add_option("--sp-m", csi_args->sp_m, "Pool size for --sp random");
      sub->add_option("--sp-ids", csi_args->sp_ids, "Pool for --sp explicit");
      sub->add_flag("--use-km", csi_args->use_km, "Charge mapped edges their pessimistic cost");
    }
    if (name == "pa") {
      sub->add_option("--state", csi_args->state, "Resume from this state file");
    }
    if (name == "pm") {
      sub->add_option("--steps", csi_args->steps, "Number of adoption steps")->required();
    }
    if (name == "oav") {
      sub->add_option("--tau", csi_args->tau, "Discrimination threshold");
      sub->add_option("--k", csi_args->k, "Committee size")->required();
    } else {
      sub->add_option("--l", csi_args->l, "Stage-one size");
      sub->add_option("--j", csi_args->j, "Retention size");
      sub->add_option("--k", csi_args->k, "Final committee size");
    }
    sub->callback([&action, &g, csi_args, name] {
      action = [&g, csi_args, name] { return run_csi(g, name, *csi_args); };
    });
  }

  // scenario
  auto scen_args = std::make_shared<ScenarioArgs>();
  CLI::App* scen = app.add_subcommand("scenario", "Street-infrastructure policy vote");
  scen->fallthrough();
  scen->add_option("--spec", scen_args->spec_path, "Scenario spec file (defaults built in)");
  scen->add_option("--cars", scen_args->cars, "Car-driver count");
  scen->add_option("--pedestrians", scen_args->pedestrians, "Pedestrian count");
  scen->add_option("--rule", scen_args->rule, "absolute-majority or ldm-wsr")
      ->check(CLI::IsMember({"absolute-majority", "ldm-wsr"}));
  scen->add_option("--tau", scen_args->tau, "Discrimination threshold for ldm-wsr");
  scen->add_option("--pipeline", scen_args->pipeline, "ldm-wsr pipeline: oav or pnm")
      ->check(CLI::IsMember({"oav", "pnm"}));
  scen->callback([&action, &g, scen_args] {
    action = [&g, scen_args] { return run_scenario(g, *scen_args); };
  });

  // path (fast search) and oracle path share the same argument shape
  auto add_path_options = [](CLI::App* sub, std::shared_ptr<PathArgs> args) {
    sub->fallthrough();
    sub->add_option("graph", args->graph, "Graph file")->required();
    sub->add_option("--from", args->from, "Source node (repeatable)")->required();
    sub->add_option("--to", args->to, "Target node")->required();
    sub->add_option("--universe", args->universe, "Universe supplying the scalarization");
    sub->add_flag("--use-km", args->use_km, "Charge mapped edges their pessimistic cost");
  };

  auto path_args = std::make_shared<PathArgs>();
  CLI::App* path = app.add_subcommand("path", "Cheapest transit path between policy nodes");
  add_path_options(path, path_args);
  path->callback([&action, &g, path_args] {
    action = [&g, path_args] { return run_path(g, *path_args, false); };
  });

  // oracle {pav|path|tav}
  CLI::App* oracle = app.add_subcommand("oracle", "Reference answers by full enumeration");
  oracle->require_subcommand(1);
  oracle->fallthrough();

  auto opav_args = std::make_shared<MwsrArgs>();
  CLI::App* opav = oracle->add_subcommand("pav", "Exhaustive proportional vote");
  opav->fallthrough();
  opav->add_option("election", opav_args->election, "Election file")->required();
  opav->add_option("--k", opav_args->k, "Committee size")->required();
  opav->add_option("--alpha", opav_args->alpha, "'harmonic' or a weight file");
  opav->callback([&action, &g, opav_args] {
    action = [&g, opav_args] {
      require_json_format(g, "oracle pav");
      csi::ApprovalElection e = load_checked_election(opav_args->election);
      csi::PavWeights w = csi::load_weights(opav_args->alpha, opav_args->k);
      json out = csi::rule_result_json(csi::oracle::pav_enumerate(e, opav_args->k, w));
      out["rule"] = "pav-enumerate";
      out["k"] = opav_args->k;
      return emit_json(g, out);
    };
  });

  auto opath_args = std::make_shared<PathArgs>();
  CLI::App* opath = oracle->add_subcommand("path", "Exhaustive simple-path search");
  add_path_options(opath, opath_args);
  opath->callback([&action, &g, opath_args] {
    action = [&g, opath_args] { return run_path(g, *opath_args, true); };
  });

  auto otav_args = std::make_shared<TavArgs>();
  CLI::App* otav = oracle->add_subcommand("tav", "Exhaustive two-stage screening");
  otav->fallthrough();
  otav->add_option("election", otav_args->election, "Election file")->required();
  otav->add_option("--l", otav_args->l, "Stage-one size")->required();
  otav->add_option("--k", otav_args->k, "Final committee size")->required();
  otav->callback([&action, &g, otav_args] {
    action = [&g, otav_args] {
      require_json_format(g, "oracle tav");
      csi::ApprovalElection e = load_checked_election(otav_args->election);
      return emit_json(g, csi::report_json(csi::oracle::tav_enumerate(e, otav_args->l, otav_args->k)));
    };
  });

  // validate
  auto val_args = std::make_shared<ValidateArgs>();
  CLI::App* val = app.add_subcommand("validate", "Structural checks on an input file");
  val->fallthrough();
  val->add_option("file", val_args->path, "File to check")->required();
  val->add_option("--type", val_args->type, "election, universe, graph, or scenario")
      ->check(CLI::IsMember({"election", "universe", "graph", "scenario"}));
  val->callback([&action, &g, val_args] {
    action = [&g, val_args] { return run_validate(g, *val_args); };
  });

  // descend
  auto desc_args = std::make_shared<DescendArgs>();
  CLI::App* desc = app.add_subcommand("descend", "Derivative-free minimization diagnostics");
  desc->fallthrough();
  desc->add_option("--objective", desc_args->objective, "Objective description file")->required();
  desc->add_option("--x0", desc_args->x0, "Start point")->required()->expected(-1);
  desc->add_option("--step", desc_args->step, "Initial probe step(s)")->expected(-1);
  desc->add_option("--tol", desc_args->tol, "Convergence threshold on the probe steps");
  desc->add_option("--grow", desc_args->grow, "Step growth factor");
  desc->add_option("--shrink", desc_args->shrink, "Step shrink factor");
  desc->add_option("--max-evals", desc_args->max_evals, "Evaluation budget");
  desc->callback([&action, &g, desc_args] {
    action = [&g, desc_args] { return run_descend(g, *desc_args); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const Error& err) {
    std::cerr << "error (" << csi::to_string(err.kind()) << "): " << err.what() << "\n";
    switch (err.kind()) {
      case ErrorKind::Capacity:
        return 3;
      case ErrorKind::NoPath:
        return 4;
      default:
        return 2;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
