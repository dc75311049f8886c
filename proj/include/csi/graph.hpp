#pragma once

#include <string>
#include <vector>

#include "csi/discrimination.hpp"

namespace csi {

struct PrefNode {
  std::string id;
  std::string payload;  // free-form descriptor
};

// Directed edge with its own cost vector; the opposite direction, when
// present, is an independent edge with independent costs.
struct PrefEdge {
  std::string from;
  std::string to;
  std::vector<double> cost;  // components in [0,1], length = graph dimension
  bool irreversible = false;
};

struct PreferenceGraph {
  int dimension = 1;
  std::vector<PrefNode> nodes;
  std::vector<PrefEdge> edges;

  bool has_node(const std::string& id) const;
  const PrefEdge* find_edge(const std::string& from, const std::string& to) const;
};

// Nodes actually transited, in order; revisits stay until compaction.
struct PathHistory {
  std::vector<std::string> steps;
};

struct PathResult {
  bool found = false;
  std::vector<std::string> path;  // empty when not found
  double cost = 0.0;
};

// Structural checks; empty result means well-formed.
std::vector<std::string> validate_graph(const PreferenceGraph& g);

// Knowledge-map key for an edge.
std::string edge_km_key(const std::string& from, const std::string& to);

// Scalarized cost of one edge. With a knowledge map, an edge that has an
// entry under "from->to" is charged its pessimistic cost instead of the
// stored vector; unmapped edges fall back to the vector (partial maps stay
// usable). Missing edge -> domain error.
double edge_cost(const PreferenceGraph& g, const std::string& from, const std::string& to,
                 const Scalarization& s, const KnowledgeMap* km = nullptr);

// Cheapest directed path from any source to the target. Ties broken by
// fewer edges, then by lexicographic node sequence. Unreachable target is a
// result, not an error.
PathResult shortest_path(const PreferenceGraph& g, const std::vector<std::string>& sources,
                         const std::string& target, const Scalarization& s,
                         const KnowledgeMap* km = nullptr);

// Deletes revisit cycles left to right: on meeting a node already present,
// everything after its first occurrence is dropped. Idempotent; the result
// is a simple path.
PathHistory compact_history(const PathHistory& h);

// True iff walking from the current node back to `back_to` (its last
// occurrence in the history) can retrace every transited edge in reverse:
// each step needs the opposite-direction edge present and not marked
// irreversible. `back_to` absent from the history -> invalid parameter.
bool derogation_check(const PreferenceGraph& g, const PathHistory& h,
                      const std::string& back_to);

}  // namespace csi
