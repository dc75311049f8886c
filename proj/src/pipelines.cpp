#include "csi/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "csi/descent.hpp"
#include "csi/error.hpp"
#include "csi/format.hpp"

namespace csi {

void StageParams::require() const {
  if (!(l > j && j > k && k >= 1)) {
    throw Error(ErrorKind::InvalidParameter,
                "stage sizes must satisfy l > j > k >= 1 (got l=" + std::to_string(l) +
                    " j=" + std::to_string(j) + " k=" + std::to_string(k) + ")");
  }
}

namespace {

void push_audit(PipelineReport& r, const std::string& key, const std::string& value) {
  r.audit.emplace_back(key, value);
}

// Scalarized context-free discrimination of one candidate.
double sd_scalar(const SocialUniverse& u, const std::string& id) {
  return scalarize(evaluate_sd(u.sd, {id, ""}), u.scalarization);
}

// Retained entries sorted by (value, candidate order): the retention
// priority used by every argmin stage.
std::vector<RetainedEntry> retention_order(const std::vector<RetainedEntry>& entries,
                                           const std::unordered_map<CandidateId, int>& idx) {
  std::vector<RetainedEntry> out = entries;
  std::sort(out.begin(), out.end(), [&](const RetainedEntry& a, const RetainedEntry& b) {
    if (a.value != b.value) return a.value < b.value;
    return idx.at(a.id) < idx.at(b.id);
  });
  return out;
}

RuleResult run_mwsr(const ApprovalElection& e, int k, std::string& rule_used) {
  if (static_cast<int>(e.candidates.size()) <= kExhaustiveSearchCap) {
    rule_used = "pav-exact";
    return pav_exact(e, k, PavWeights::harmonic(k));
  }
  rule_used = "pav-greedy";
  return pav_greedy(e, k, PavWeights::harmonic(k));
}

}  // namespace

PipelineReport minimax_tav(const ApprovalElection& e, int l, int k) {
  const int n = static_cast<int>(e.candidates.size());
  if (!(n >= l && l > k && k >= 1)) {
    throw Error(ErrorKind::InvalidParameter,
                "two-stage screening needs |candidates| >= l > k >= 1 (got n=" +
                    std::to_string(n) + " l=" + std::to_string(l) + " k=" +
                    std::to_string(k) + ")");
  }

  std::vector<int> app(n, 0), dis(n, 0);
  for (int i = 0; i < n; ++i) {
    app[i] = approval_score(e, e.candidates[i]);
    dis[i] = disapproval_score(e, e.candidates[i]);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return app[a] != app[b] ? app[a] > app[b] : a < b; });
  std::vector<int> stage1(order.begin(), order.begin() + l);
  std::sort(stage1.begin(), stage1.end());

  std::vector<int> by_dis = stage1;
  std::sort(by_dis.begin(), by_dis.end(),
            [&](int a, int b) { return dis[a] != dis[b] ? dis[a] < dis[b] : a < b; });
  std::vector<int> final_idx(by_dis.begin(), by_dis.begin() + k);
  std::sort(final_idx.begin(), final_idx.end());

  PipelineReport r;
  long stage1_app = 0, final_dis = 0;
  for (int i : stage1) {
    r.stage1.members.push_back(e.candidates[i]);
    stage1_app += app[i];
  }
  for (int i = 0; i < k; ++i) {
    r.argmin_set.push_back({e.candidates[by_dis[i]], static_cast<double>(dis[by_dis[i]])});
  }
  for (int i : final_idx) {
    r.final.members.push_back(e.candidates[i]);
    final_dis += dis[i];
  }
  push_audit(r, "rule", "minimax-tav");
  push_audit(r, "l", std::to_string(l));
  push_audit(r, "k", std::to_string(k));
  push_audit(r, "stage1_approvals_total", std::to_string(stage1_app));
  push_audit(r, "final_disapprovals_total", std::to_string(final_dis));
  return r;
}

namespace {

// Continuous search over an embedded candidate layout: the objective at x is
// the discrimination scalar of the nearest embedded candidate.
void run_embedded_descent(const SocialUniverse& u, const ApprovalElection& e,
                          const std::vector<double>& scalars, PipelineReport& r) {
  const auto idx = candidate_index(e);
  std::vector<const std::vector<double>*> coords(e.candidates.size(), nullptr);
  for (std::size_t i = 0; i < e.candidates.size(); ++i) {
    auto it = u.embedding.find(e.candidates[i]);
    if (it == u.embedding.end()) {
      throw Error(ErrorKind::Domain,
                  "embedding lacks candidate '" + e.candidates[i] + "'");
    }
    coords[i] = &it->second;
  }
  const int dim = static_cast<int>(coords[0]->size());

  auto nearest = [&](std::span<const double> x) {
    int best = 0;
    double best_d = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      double d = 0.0;
      for (int c = 0; c < dim; ++c) {
        double diff = x[c] - (*coords[i])[c];
        d += diff * diff;
      }
      if (i == 0 || d < best_d) {
        best = static_cast<int>(i);
        best_d = d;
      }
    }
    return best;
  };

  std::vector<double> x0(dim, 0.0), lo(dim, 0.0), hi(dim, 0.0);
  for (int c = 0; c < dim; ++c) {
    lo[c] = hi[c] = (*coords[0])[c];
    for (const auto* v : coords) {
      lo[c] = std::min(lo[c], (*v)[c]);
      hi[c] = std::max(hi[c], (*v)[c]);
    }
    x0[c] = (lo[c] + hi[c]) / 2.0;
  }

  ObjectiveHandle obj;
  obj.dimension = dim;
  obj.eval = [&](std::span<const double> x) { return scalars[nearest(x)]; };

  DescentConfig cfg;
  cfg.initial_step.clear();
  for (int c = 0; c < dim; ++c) cfg.initial_step.push_back(std::max((hi[c] - lo[c]) / 2.0, 1e-3));
  cfg.tol = 1e-6;
  cfg.max_evals = 10000;

  DescentResult res = coordinate_descent(obj, x0, cfg);
  int snapped = nearest(res.x_best);
  push_audit(r, "descent_used", "true");
  push_audit(r, "descent_evals", std::to_string(res.trace.evals_used));
  push_audit(r, "descent_argmin", e.candidates[snapped]);
  push_audit(r, "descent_value", dtos(scalars[snapped]));
  (void)idx;
}

}  // namespace

PipelineReport oav_csi(const SocialUniverse& u, const ApprovalElection& e, int k, double tau) {
  const int n = static_cast<int>(e.candidates.size());
  if (k < 1 || k > n) {
    throw Error(ErrorKind::InvalidParameter,
                "committee size " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "tau must lie in [0,1]");
  }

  std::vector<double> scalars(n, 0.0);
  for (int i = 0; i < n; ++i) scalars[i] = sd_scalar(u, e.candidates[i]);

  PipelineReport r;
  push_audit(r, "rule", "oav");
  push_audit(r, "k", std::to_string(k));
  push_audit(r, "tau", dtos(tau));

  if (!u.embedding.empty()) {
    run_embedded_descent(u, e, scalars, r);
  }

  std::vector<int> by_sd(n);
  std::iota(by_sd.begin(), by_sd.end(), 0);
  std::sort(by_sd.begin(), by_sd.end(), [&](int a, int b) {
    return scalars[a] != scalars[b] ? scalars[a] < scalars[b] : a < b;
  });

  double tau_eff = tau;
  bool relaxed = false;
  auto count_passing = [&](double t) {
    return static_cast<int>(std::count_if(scalars.begin(), scalars.end(),
                                          [&](double v) { return v <= t; }));
  };
  if (count_passing(tau_eff) < k) {
    tau_eff = scalars[by_sd[k - 1]];  // k-th smallest value
    relaxed = true;
  }

  std::vector<CandidateId> retained;
  for (int i = 0; i < n; ++i) {
    if (scalars[i] <= tau_eff) retained.push_back(e.candidates[i]);
  }
  for (int i : by_sd) {
    if (scalars[i] <= tau_eff) r.argmin_set.push_back({e.candidates[i], scalars[i]});
  }
  r.stage1 = make_committee(e, retained);
  r.final = av_top_k(restrict_election(e, retained), k);

  push_audit(r, "tau_effective", dtos(tau_eff));
  push_audit(r, "tau_relaxed", relaxed ? "true" : "false");
  push_audit(r, "sd_min", dtos(scalars[by_sd[0]]));
  push_audit(r, "retained", std::to_string(retained.size()));
  return r;
}

PipelineReport pnm_tav(const SocialUniverse& u, const ApprovalElection& e,
                       const StageParams& p) {
  p.require();
  const int n = static_cast<int>(e.candidates.size());
  if (p.l > n) {
    throw Error(ErrorKind::InvalidParameter,
                "stage-one size " + std::to_string(p.l) + " exceeds candidate count " +
                    std::to_string(n));
  }

  PipelineReport r;
  push_audit(r, "rule", "pnm");
  push_audit(r, "l", std::to_string(p.l));
  push_audit(r, "j", std::to_string(p.j));
  push_audit(r, "k", std::to_string(p.k));

  std::string stage1_rule;
  RuleResult stage1 = run_mwsr(e, p.l, stage1_rule);
  r.stage1 = stage1.committee;
  push_audit(r, "stage1_rule", stage1_rule);
  push_audit(r, "stage1_objective", stage1.objective.to_string());

  // Role-profile vector: arithmetic mean over all agents carrying one;
  // all-ones when none do.
  std::vector<double> profile(u.dimension, 0.0);
  int carriers = 0;
  for (const Agent& a : u.agents) {
    if (a.sdp.empty()) continue;
    auto it = u.sdp_bank.find(a.sdp);
    if (it == u.sdp_bank.end()) {
      throw Error(ErrorKind::Integrity,
                  "agent '" + a.id + "' references unknown profile '" + a.sdp + "'");
    }
    for (int c = 0; c < u.dimension; ++c) profile[c] += it->second.weights[c];
    ++carriers;
  }
  if (carriers > 0) {
    for (double& v : profile) v /= carriers;
  } else {
    profile.assign(u.dimension, 1.0);
  }
  push_audit(r, "sdp_aggregation", "mean-over-agents");
  push_audit(r, "sdp_composition", "componentwise-product");

  auto idx = candidate_index(e);
  std::vector<RetainedEntry> weighted;
  for (const auto& m : stage1.committee.members) {
    std::vector<double> v = evaluate_sd(u.sd, {m, ""});
    for (int c = 0; c < u.dimension; ++c) v[c] *= profile[c];
    weighted.push_back({m, scalarize(v, u.scalarization)});
  }
  weighted = retention_order(weighted, idx);
  weighted.resize(p.j);
  r.argmin_set = weighted;

  std::vector<CandidateId> kept;
  for (const auto& entry : weighted) kept.push_back(entry.id);
  std::string final_rule;
  RuleResult fin = run_mwsr(restrict_election(e, kept), p.k, final_rule);
  r.final = fin.committee;
  push_audit(r, "final_rule", final_rule);
  push_audit(r, "final_objective", fin.objective.to_string());
  return r;
}

std::pair<PolicyState, PipelineReport> pa_step(const SocialUniverse& u,
                                               const PreferenceGraph& g,
                                               const ApprovalElection& e,
                                               const PolicyState& state, const StageParams& p,
                                               std::uint64_t sp_seed, const PaOptions& opts) {
  p.require();
  for (const auto& c : e.candidates) {
    if (!g.has_node(c)) {
      throw Error(ErrorKind::Integrity, "candidate '" + c + "' is not a graph node");
    }
  }
  for (const auto& a : state.adopted) {
    if (!g.has_node(a)) {
      throw Error(ErrorKind::Integrity, "adopted node '" + a + "' is not a graph node");
    }
  }
  for (const auto& h : state.history.steps) {
    if (!g.has_node(h)) {
      throw Error(ErrorKind::Integrity, "history node '" + h + "' is not a graph node");
    }
  }

  PipelineReport r;
  push_audit(r, "rule", "pa");

  // Pre-filter over the ballot-eligible pool.
  std::vector<CandidateId> pool;
  switch (opts.sp.mode) {
    case SpSelector::Mode::All:
      pool = e.candidates;
      push_audit(r, "sp_mode", "all");
      break;
    case SpSelector::Mode::Explicit: {
      std::unordered_set<std::string> wanted(opts.sp.ids.begin(), opts.sp.ids.end());
      for (const auto& c : e.candidates) {
        if (wanted.count(c)) pool.push_back(c);
      }
      push_audit(r, "sp_mode", "explicit");
      break;
    }
    case SpSelector::Mode::RandomM: {
      // A fresh seeded draw on every step; the step seed is the draw seed.
      push_audit(r, "sp_mode", "random");
      if (opts.sp.m < 1) {
        throw Error(ErrorKind::InvalidParameter, "random pre-filter needs m >= 1");
      }
      const int m = std::min<int>(opts.sp.m, static_cast<int>(e.candidates.size()));
      std::vector<int> order(e.candidates.size());
      std::iota(order.begin(), order.end(), 0);
      std::mt19937_64 rng(sp_seed);
      for (int i = 0; i < m; ++i) {  // partial Fisher-Yates
        int j = i + static_cast<int>(rng() % (order.size() - i));
        std::swap(order[i], order[j]);
      }
      std::vector<int> take(order.begin(), order.begin() + m);
      std::sort(take.begin(), take.end());
      for (int i : take) pool.push_back(e.candidates[i]);
      break;
    }
  }
  if (pool.empty()) {
    throw Error(ErrorKind::InvalidParameter, "pre-filter selected no candidates");
  }
  push_audit(r, "sp_size", std::to_string(pool.size()));
  if (opts.sp.mode != SpSelector::Mode::All) {
    push_audit(r, "sp_pool", join(pool, ","));
  }

  // Stage sizes clamp to what is available; shortfalls are audited.
  const int l_eff = std::min<int>(p.l, static_cast<int>(pool.size()));
  if (l_eff < p.l) push_audit(r, "stage1_shortfall", std::to_string(p.l - l_eff));

  std::string stage1_rule;
  RuleResult stage1 = run_mwsr(restrict_election(e, pool), l_eff, stage1_rule);
  r.stage1 = stage1.committee;
  push_audit(r, "stage1_rule", stage1_rule);
  push_audit(r, "stage1_objective", stage1.objective.to_string());

  auto idx = candidate_index(e);
  std::vector<RetainedEntry> scored;
  for (const auto& m : stage1.committee.members) {
    scored.push_back({m, sd_scalar(u, m)});
  }
  scored = retention_order(scored, idx);
  const int j_eff = std::min<int>(p.j, static_cast<int>(scored.size()));
  if (j_eff < p.j) push_audit(r, "argmin_shortfall", std::to_string(p.j - j_eff));
  scored.resize(j_eff);
  r.argmin_set = scored;

  const std::string target = scored.front().id;
  push_audit(r, "target", target);

  std::vector<std::string> sources;
  if (state.history.steps.empty()) {
    sources = stage1.committee.members;
  } else {
    sources = {state.history.steps.back()};
  }
  PathResult pr = shortest_path(g, sources, target, u.scalarization,
                                opts.use_knowledge_map ? &u.knowledge_map : nullptr);
  if (!pr.found) {
    r.no_path = true;
    push_audit(r, "path", "none");
    return {state, r};
  }
  r.path = pr.path;
  push_audit(r, "path_cost", dtos(pr.cost));

  // Final vote over path nodes not yet adopted (and actually on the ballot).
  std::unordered_set<std::string> adopted(state.adopted.begin(), state.adopted.end());
  std::vector<std::string> avail;
  for (const auto& node : pr.path) {
    if (!adopted.count(node) && idx.count(node)) avail.push_back(node);
  }
  push_audit(r, "stage2_domain", "non-adopted-path-nodes");

  const int k_eff = std::min<int>(p.k, static_cast<int>(avail.size()));
  if (k_eff < p.k) push_audit(r, "final_shortfall", std::to_string(p.k - k_eff));

  PolicyState next = state;
  if (k_eff > 0) {
    std::string final_rule;
    RuleResult fin = run_mwsr(restrict_election(e, avail), k_eff, final_rule);
    r.final = fin.committee;
    push_audit(r, "final_rule", final_rule);
    push_audit(r, "final_objective", fin.objective.to_string());
    // Adoption follows path order.
    for (const auto& node : pr.path) {
      if (r.final.contains(node)) next.adopted.push_back(node);
    }
  }
  for (std::size_t i = 0; i < pr.path.size(); ++i) {
    if (i == 0 && !next.history.steps.empty() && next.history.steps.back() == pr.path[0]) {
      continue;
    }
    next.history.steps.push_back(pr.path[i]);
  }
  next.step_count = state.step_count + 1;
  return {next, r};
}

std::pair<PolicyState, std::vector<PipelineReport>> pm_run(const SocialUniverse& u,
                                                           const PreferenceGraph& g,
                                                           const ApprovalElection& e,
                                                           const StageParams& p, int steps,
                                                           std::uint64_t sp_seed,
                                                           const PaOptions& opts) {
  if (steps < 1) throw Error(ErrorKind::InvalidParameter, "step count must be >= 1");

  PolicyState state;
  std::vector<PipelineReport> reports;
  reports.reserve(steps);

  for (int s = 0; s < steps; ++s) {
    auto [next, rep] = pa_step(u, g, e, state, p, sp_seed + static_cast<std::uint64_t>(s), opts);
    if (rep.no_path) {
      // The target is cut off even through reverse edges; there is no walk
      // to govern and nothing to roll back along.
      push_audit(rep, "derogation", "blocked");
      reports.push_back(std::move(rep));
      continue;
    }

    // A path that starts by retracing the history backwards revokes earlier
    // decisions. That retrace is the derogation: it must be legal for every
    // re-transited edge, or the whole step is vetoed.
    const auto& h = state.history.steps;
    const auto& path = *rep.path;
    std::size_t d = 0;
    while (d + 1 < path.size() && h.size() >= d + 2 && path[d + 1] == h[h.size() - 2 - d]) {
      ++d;
    }
    if (d == 0) {
      state = std::move(next);
      reports.push_back(std::move(rep));
      continue;
    }

    const std::string& back_to = path[d];
    if (!derogation_check(g, state.history, back_to)) {
      rep.no_path = true;  // no lawful path; the state stands
      rep.final.members.clear();
      push_audit(rep, "derogation", "blocked");
      push_audit(rep, "blocked_at", back_to);
      reports.push_back(std::move(rep));
      continue;
    }

    // Adoptions made after the roll-back point are revoked; what this step
    // itself adopted stays.
    std::size_t idx = h.size() - 1;
    while (h[idx] != back_to) --idx;
    std::unordered_set<std::string> dropped(h.begin() + idx + 1, h.end());
    std::unordered_set<std::string> pre(state.adopted.begin(), state.adopted.end());
    std::vector<std::string> derogated;
    std::vector<std::string> kept;
    for (const auto& a : next.adopted) {
      if (dropped.count(a) && pre.count(a)) {
        derogated.push_back(a);
      } else {
        kept.push_back(a);
      }
    }
    next.adopted = std::move(kept);
    push_audit(rep, "derogation", "rolled-back");
    push_audit(rep, "rolled_back_to", back_to);
    push_audit(rep, "derogated", join(derogated, ","));
    state = std::move(next);
    reports.push_back(std::move(rep));
  }
  return {state, reports};
}

}  // namespace csi
