#pragma once

#include <vector>

#include "csi/election.hpp"
#include "csi/rational.hpp"

namespace csi {

// Above this many candidates the exact search refuses and callers fall back
// to the greedy rule.
inline constexpr int kExhaustiveSearchCap = 20;

// Position weights alpha_1..alpha_m: a voter whose t-th approved member sits
// in the committee contributes alpha_t. Nonnegative, non-increasing,
// alpha_1 > 0.
struct PavWeights {
  std::vector<Rational> alpha;

  static PavWeights harmonic(int k);
  // Checks the shape above and that at least k weights are present.
  void require(int k) const;
};

struct RuleResult {
  Committee committee;
  Rational objective;
  long ties = 1;  // number of optimal committees (exact search only)
};

// Top k by approval score, ties by candidate order.
Committee av_top_k(const ApprovalElection& e, int k);

// Number of committees achieving the same score multiset as av_top_k(e, k);
// saturates at INT64_MAX.
long av_committee_ties(const ApprovalElection& e, int k);

// Sum over ballots of alpha_1 + ... + alpha_t, t = approved members in the
// committee. Exact arithmetic throughout.
Rational pav_score(const ApprovalElection& e, const Committee& committee, const PavWeights& w);

// Exact optimum via branch-and-bound over committees in candidate order.
// Returns the lexicographically first optimal committee and the count of
// optima. Refuses elections above `cap` candidates.
RuleResult pav_exact(const ApprovalElection& e, int k, const PavWeights& w,
                     int cap = kExhaustiveSearchCap);

// Greedy fallback: k rounds of best marginal gain, ties by candidate order.
RuleResult pav_greedy(const ApprovalElection& e, int k, const PavWeights& w);

}  // namespace csi
