#include "csi/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "csi/error.hpp"

namespace csi::oracle {

namespace {

void check_cap(int have, int cap, const std::string& what) {
  if (have > cap) {
    throw Error(ErrorKind::Capacity, "oracle refuses " + std::to_string(have) + " " + what +
                                         ", cap is " + std::to_string(cap));
  }
}

// All k-subsets of 0..n-1 in lexicographic order.
void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  if (k > n) return;
  while (true) {
    fn(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) return;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

RuleResult pav_enumerate(const ApprovalElection& e, int k, const PavWeights& w) {
  const int n = static_cast<int>(e.candidates.size());
  if (k < 1 || k > n) {
    throw Error(ErrorKind::InvalidParameter,
                "committee size " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  check_cap(n, kPavCandidateCap, "candidates");
  w.require(k);

  RuleResult best;
  bool have = false;
  for_each_combination(n, k, [&](const std::vector<int>& pick) {
    Committee c;
    for (int i : pick) c.members.push_back(e.candidates[i]);
    Rational score = pav_score(e, c, w);
    if (!have || score > best.objective) {
      have = true;
      best.committee = c;
      best.objective = score;
      best.ties = 1;
    } else if (score == best.objective) {
      ++best.ties;
    }
  });
  return best;
}

PathResult path_enumerate(const PreferenceGraph& g, const std::vector<std::string>& sources,
                          const std::string& target, const Scalarization& s,
                          const KnowledgeMap* km) {
  if (sources.empty()) {
    throw Error(ErrorKind::InvalidParameter, "path enumeration needs at least one source");
  }
  check_cap(static_cast<int>(g.nodes.size()), kPathNodeCap, "nodes");
  for (const auto& src : sources) {
    if (!g.has_node(src)) throw Error(ErrorKind::Domain, "unknown source node '" + src + "'");
  }
  if (!g.has_node(target)) {
    throw Error(ErrorKind::Domain, "unknown target node '" + target + "'");
  }

  std::unordered_map<std::string, std::vector<std::pair<std::string, double>>> adj;
  for (const PrefEdge& e : g.edges) {
    adj[e.from].emplace_back(e.to, edge_cost(g, e.from, e.to, s, km));
  }

  PathResult best;
  int best_edges = 0;
  auto consider = [&](const std::vector<std::string>& path, double cost) {
    const int edges = static_cast<int>(path.size()) - 1;
    if (!best.found || cost < best.cost ||
        (cost == best.cost && (edges < best_edges ||
                               (edges == best_edges && path < best.path)))) {
      best = {true, path, cost};
      best_edges = edges;
    }
  };

  std::vector<std::string> path;
  std::set<std::string> visited;
  std::function<void(const std::string&, double)> dfs = [&](const std::string& node,
                                                            double cost) {
    if (node == target) {
      consider(path, cost);
      return;
    }
    auto it = adj.find(node);
    if (it == adj.end()) return;
    for (const auto& [next, c] : it->second) {
      if (visited.count(next)) continue;
      visited.insert(next);
      path.push_back(next);
      dfs(next, cost + c);
      path.pop_back();
      visited.erase(next);
    }
  };

  std::set<std::string> starts(sources.begin(), sources.end());
  for (const auto& src : starts) {
    path = {src};
    visited = {src};
    dfs(src, 0.0);
  }
  return best;
}

PipelineReport tav_enumerate(const ApprovalElection& e, int l, int k) {
  const int n = static_cast<int>(e.candidates.size());
  if (!(n >= l && l > k && k >= 1)) {
    throw Error(ErrorKind::InvalidParameter,
                "two-stage screening needs |candidates| >= l > k >= 1");
  }
  check_cap(n, kTavCandidateCap, "candidates");

  std::vector<int> app(n, 0), dis(n, 0);
  for (int i = 0; i < n; ++i) {
    app[i] = approval_score(e, e.candidates[i]);
    dis[i] = disapproval_score(e, e.candidates[i]);
  }

  // Stage one: size-l set with maximum total approvals, lexicographic ties.
  std::vector<int> stage1;
  long stage1_total = 0;
  for_each_combination(n, l, [&](const std::vector<int>& pick) {
    long total = 0;
    for (int i : pick) total += app[i];
    if (stage1.empty() || total > stage1_total) {
      stage1 = pick;
      stage1_total = total;
    }
  });

  // Stage two: k-subset of stage one with minimum total disapprovals.
  std::vector<int> final_pick;
  long final_total = 0;
  for_each_combination(l, k, [&](const std::vector<int>& pick) {
    long total = 0;
    for (int i : pick) total += dis[stage1[i]];
    if (final_pick.empty() || total < final_total) {
      final_pick = pick;
      final_total = total;
    }
  });

  PipelineReport r;
  for (int i : stage1) r.stage1.members.push_back(e.candidates[i]);
  std::vector<int> final_idx;
  for (int i : final_pick) final_idx.push_back(stage1[i]);
  std::sort(final_idx.begin(), final_idx.end(),
            [&](int a, int b) { return dis[a] != dis[b] ? dis[a] < dis[b] : a < b; });
  for (int i : final_idx) {
    r.argmin_set.push_back({e.candidates[i], static_cast<double>(dis[i])});
  }
  std::sort(final_idx.begin(), final_idx.end());
  for (int i : final_idx) r.final.members.push_back(e.candidates[i]);
  r.audit.emplace_back("rule", "oracle-tav");
  r.audit.emplace_back("stage1_approvals_total", std::to_string(stage1_total));
  r.audit.emplace_back("final_disapprovals_total", std::to_string(final_total));
  return r;
}

}  // namespace csi::oracle
