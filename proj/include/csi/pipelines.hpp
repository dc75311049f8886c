#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csi/discrimination.hpp"
#include "csi/election.hpp"
#include "csi/graph.hpp"
#include "csi/mwsr.hpp"

namespace csi {

// Stage sizes: stage-one committee l, inclusion retention j, final vote k.
struct StageParams {
  int l = 3;
  int j = 2;
  int k = 1;

  void require() const;  // enforces l > j > k >= 1
};

// Rolling adoption state threaded through the step pipelines.
struct PolicyState {
  std::vector<std::string> adopted;  // adoption order, duplicate-free
  PathHistory history;
  int step_count = 0;
};

struct RetainedEntry {
  std::string id;
  double value = 0.0;
};

// Common result shape: the pool that entered the final vote, the retained
// set with its scores, the transited path where one exists, the elected
// committee, and an ordered audit trail.
struct PipelineReport {
  Committee stage1;
  std::vector<RetainedEntry> argmin_set;  // retention priority order
  std::optional<std::vector<std::string>> path;
  Committee final;
  bool no_path = false;
  std::vector<std::pair<std::string, std::string>> audit;
};

// Two-stage screening rule: the l most approved candidates, then the k of
// them with the fewest disapprovals. Requires |candidates| >= l > k >= 1.
PipelineReport minimax_tav(const ApprovalElection& e, int l, int k);

// One-stage inclusion rule: filter candidates whose scalarized
// discrimination is at most tau (relaxing tau to the k-th smallest value
// when too few pass; the relaxation is audited), then approval-vote k
// winners from the retained set.
PipelineReport oav_csi(const SocialUniverse& u, const ApprovalElection& e, int k, double tau);

// Two-vote inclusion rule: exact vote of size l, keep the j members with
// the smallest profile-weighted discrimination, exact vote of size k over
// those.
PipelineReport pnm_tav(const SocialUniverse& u, const ApprovalElection& e,
                       const StageParams& p);

// Pre-filter over the ballot-eligible candidate pool.
struct SpSelector {
  enum class Mode { All, Explicit, RandomM };
  Mode mode = Mode::All;
  std::vector<std::string> ids;  // Explicit mode
  int m = 0;                     // RandomM subset size, redrawn from each step's seed
};

struct PaOptions {
  SpSelector sp;
  bool use_knowledge_map = false;  // pessimistic edge costs where mapped
};

// One adoption step: pre-filter, stage-one vote, discrimination argmin,
// walk to the best retained node, final vote over the not-yet-adopted path
// nodes. Stage sizes clamp to availability with audited shortfalls. An
// unreachable target leaves the state untouched and flags no_path.
std::pair<PolicyState, PipelineReport> pa_step(const SocialUniverse& u,
                                               const PreferenceGraph& g,
                                               const ApprovalElection& e,
                                               const PolicyState& state, const StageParams& p,
                                               std::uint64_t sp_seed,
                                               const PaOptions& opts = {});

// Iterated steps from an empty state. A step whose path begins by retracing
// the history backwards is a derogation: every re-transited edge must have a
// reversible opposite-direction edge, or the step is vetoed (no_path, state
// stands). A legal retrace revokes the adoptions made past the roll-back
// point; the step's own adoptions stay. An unreachable target is blocked
// outright.
std::pair<PolicyState, std::vector<PipelineReport>> pm_run(const SocialUniverse& u,
                                                           const PreferenceGraph& g,
                                                           const ApprovalElection& e,
                                                           const StageParams& p, int steps,
                                                           std::uint64_t sp_seed,
                                                           const PaOptions& opts = {});

}  // namespace csi
