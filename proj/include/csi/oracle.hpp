#pragma once

#include <string>
#include <vector>

#include "csi/election.hpp"
#include "csi/graph.hpp"
#include "csi/mwsr.hpp"
#include "csi/pipelines.hpp"

// Reference implementations by full enumeration. Deliberately independent of
// the fast search paths: these only share the scoring definitions, never the
// pruning or the queue logic. Small hard caps keep them honest.
namespace csi::oracle {

inline constexpr int kPavCandidateCap = 12;
inline constexpr int kPathNodeCap = 8;
inline constexpr int kTavCandidateCap = 12;

// Maximum of pav_score over every k-subset, lexicographically first optimum,
// exact tie count.
RuleResult pav_enumerate(const ApprovalElection& e, int k, const PavWeights& w);

// Minimum over every simple path from any source to the target, same
// composite tie-break as the fast search.
PathResult path_enumerate(const PreferenceGraph& g, const std::vector<std::string>& sources,
                          const std::string& target, const Scalarization& s,
                          const KnowledgeMap* km = nullptr);

// Exhaustive two-stage screening: best size-l set by total approvals, then
// best k-subset by total disapprovals, committee-lexicographic ties.
PipelineReport tav_enumerate(const ApprovalElection& e, int l, int k);

}  // namespace csi::oracle
