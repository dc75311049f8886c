#include "csi/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "csi/error.hpp"
#include "csi/format.hpp"

namespace csi {

bool PreferenceGraph::has_node(const std::string& id) const {
  return std::any_of(nodes.begin(), nodes.end(),
                     [&](const PrefNode& n) { return n.id == id; });
}

const PrefEdge* PreferenceGraph::find_edge(const std::string& from,
                                           const std::string& to) const {
  for (const PrefEdge& e : edges) {
    if (e.from == from && e.to == to) return &e;
  }
  return nullptr;
}

std::vector<std::string> validate_graph(const PreferenceGraph& g) {
  std::vector<std::string> out;
  if (g.dimension < 1) out.push_back("dimension must be >= 1");

  std::unordered_set<std::string> ids;
  for (const PrefNode& n : g.nodes) {
    if (n.id.empty()) out.push_back("node with empty id");
    if (!ids.insert(n.id).second) out.push_back("duplicate node id '" + n.id + "'");
  }

  std::set<std::pair<std::string, std::string>> seen;
  for (const PrefEdge& e : g.edges) {
    if (!ids.count(e.from)) out.push_back("edge from unknown node '" + e.from + "'");
    if (!ids.count(e.to)) out.push_back("edge to unknown node '" + e.to + "'");
    if (e.from == e.to) out.push_back("self-loop on node '" + e.from + "'");
    if (!seen.insert({e.from, e.to}).second) {
      out.push_back("duplicate edge '" + e.from + "' -> '" + e.to + "'");
    }
    if (static_cast<int>(e.cost.size()) != g.dimension) {
      out.push_back("edge '" + e.from + "' -> '" + e.to + "' cost has " +
                    std::to_string(e.cost.size()) + " components, expected " +
                    std::to_string(g.dimension));
    }
    for (double c : e.cost) {
      if (!(c >= 0.0 && c <= 1.0)) {
        out.push_back("edge '" + e.from + "' -> '" + e.to + "' cost component " + dtos(c) +
                      " outside [0,1]");
        break;
      }
    }
  }
  return out;
}

std::string edge_km_key(const std::string& from, const std::string& to) {
  return from + "->" + to;
}

double edge_cost(const PreferenceGraph& g, const std::string& from, const std::string& to,
                 const Scalarization& s, const KnowledgeMap* km) {
  const PrefEdge* e = g.find_edge(from, to);
  if (!e) {
    throw Error(ErrorKind::Domain, "no edge '" + from + "' -> '" + to + "'");
  }
  if (km) {
    auto it = km->entries.find(edge_km_key(from, to));
    if (it != km->entries.end()) {
      return it->second.discrimination + s.lambda_u * it->second.uncertainty;
    }
  }
  return scalarize(e->cost, s);
}

namespace {

// Search label ordered by cost, then edge count, then node sequence. Every
// edge strictly increases the composite (the edge count breaks zero-cost
// ties), so settle-on-first-pop stays correct.
struct Label {
  double cost = 0.0;
  int edges = 0;
  std::vector<std::string> path;
};

bool label_less(const Label& a, const Label& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.edges != b.edges) return a.edges < b.edges;
  return a.path < b.path;
}

}  // namespace

PathResult shortest_path(const PreferenceGraph& g, const std::vector<std::string>& sources,
                         const std::string& target, const Scalarization& s,
                         const KnowledgeMap* km) {
  if (sources.empty()) {
    throw Error(ErrorKind::InvalidParameter, "shortest_path needs at least one source");
  }
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

  auto heap_cmp = [](const Label& a, const Label& b) { return label_less(b, a); };
  std::priority_queue<Label, std::vector<Label>, decltype(heap_cmp)> open(heap_cmp);

  std::set<std::string> starts(sources.begin(), sources.end());
  for (const auto& src : starts) open.push({0.0, 0, {src}});

  std::unordered_set<std::string> settled;
  while (!open.empty()) {
    Label cur = open.top();
    open.pop();
    const std::string& node = cur.path.back();
    if (settled.count(node)) continue;
    settled.insert(node);
    if (node == target) {
      return {true, cur.path, cur.cost};
    }
    auto it = adj.find(node);
    if (it == adj.end()) continue;
    for (const auto& [next, cost] : it->second) {
      if (settled.count(next)) continue;
      Label nl;
      nl.cost = cur.cost + cost;
      nl.edges = cur.edges + 1;
      nl.path = cur.path;
      nl.path.push_back(next);
      open.push(std::move(nl));
    }
  }
  return {false, {}, 0.0};
}

PathHistory compact_history(const PathHistory& h) {
  PathHistory out;
  for (const auto& node : h.steps) {
    auto it = std::find(out.steps.begin(), out.steps.end(), node);
    if (it != out.steps.end()) {
      out.steps.erase(it + 1, out.steps.end());  // drop the enclosed cycle
    } else {
      out.steps.push_back(node);
    }
  }
  return out;
}

bool derogation_check(const PreferenceGraph& g, const PathHistory& h,
                      const std::string& back_to) {
  auto it = std::find(h.steps.rbegin(), h.steps.rend(), back_to);
  if (it == h.steps.rend()) {
    throw Error(ErrorKind::InvalidParameter,
                "node '" + back_to + "' does not appear in the history");
  }
  const std::size_t idx = h.steps.size() - 1 - (it - h.steps.rbegin());
  for (std::size_t t = h.steps.size() - 1; t > idx; --t) {
    const PrefEdge* rev = g.find_edge(h.steps[t], h.steps[t - 1]);
    if (!rev || rev->irreversible) return false;
  }
  return true;
}

}  // namespace csi
