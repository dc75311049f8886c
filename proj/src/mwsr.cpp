#include "csi/mwsr.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>

#include "csi/error.hpp"

namespace csi {

PavWeights PavWeights::harmonic(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidParameter, "harmonic weights need k >= 1");
  PavWeights w;
  w.alpha.reserve(k);
  for (int l = 1; l <= k; ++l) w.alpha.emplace_back(1, l);
  return w;
}

void PavWeights::require(int k) const {
  if (static_cast<int>(alpha.size()) < k) {
    throw Error(ErrorKind::InvalidParameter,
                "weight vector has " + std::to_string(alpha.size()) +
                    " entries, committee size " + std::to_string(k) + " needs that many");
  }
  if (alpha.empty() || !(alpha[0] > Rational(0))) {
    throw Error(ErrorKind::InvalidParameter, "first position weight must be positive");
  }
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < Rational(0)) {
      throw Error(ErrorKind::InvalidParameter, "position weights must be nonnegative");
    }
    if (i > 0 && alpha[i] > alpha[i - 1]) {
      throw Error(ErrorKind::InvalidParameter, "position weights must be non-increasing");
    }
  }
}

namespace {

void check_committee_size(int k, int n) {
  if (k < 1 || k > n) {
    throw Error(ErrorKind::InvalidParameter,
                "committee size " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
}

std::vector<int> approval_counts(const ApprovalElection& e) {
  auto idx = candidate_index(e);
  std::vector<int> score(e.candidates.size(), 0);
  for (const Ballot& b : e.ballots) {
    for (const auto& c : b.approve) {
      auto it = idx.find(c);
      if (it != idx.end()) ++score[it->second];
    }
  }
  return score;
}

// Ballot -> indices of approved candidates; candidate -> approving ballots.
struct ApprovalIndex {
  std::vector<std::vector<int>> approvers;  // per candidate index
  int ballots = 0;
};

ApprovalIndex build_approval_index(const ApprovalElection& e) {
  auto idx = candidate_index(e);
  ApprovalIndex ai;
  ai.approvers.assign(e.candidates.size(), {});
  ai.ballots = static_cast<int>(e.ballots.size());
  for (int b = 0; b < static_cast<int>(e.ballots.size()); ++b) {
    for (const auto& c : e.ballots[b].approve) {
      auto it = idx.find(c);
      if (it != idx.end()) ai.approvers[it->second].push_back(b);
    }
  }
  return ai;
}

}  // namespace

Committee av_top_k(const ApprovalElection& e, int k) {
  const int n = static_cast<int>(e.candidates.size());
  check_committee_size(k, n);
  std::vector<int> score = approval_counts(e);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return score[a] != score[b] ? score[a] > score[b] : a < b; });
  std::vector<int> take(order.begin(), order.begin() + k);
  std::sort(take.begin(), take.end());
  Committee c;
  for (int i : take) c.members.push_back(e.candidates[i]);
  return c;
}

long av_committee_ties(const ApprovalElection& e, int k) {
  const int n = static_cast<int>(e.candidates.size());
  check_committee_size(k, n);
  std::vector<int> score = approval_counts(e);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return score[a] != score[b] ? score[a] > score[b] : a < b; });
  const int boundary = score[order[k - 1]];
  long tied = 0;
  long slots = 0;
  for (int i = 0; i < n; ++i) {
    if (score[order[i]] == boundary) {
      ++tied;
      if (i < k) ++slots;
    }
  }
  // C(tied, slots), saturating.
  unsigned __int128 ways = 1;
  for (long i = 1; i <= slots; ++i) {
    ways = ways * static_cast<unsigned __int128>(tied - slots + i) / i;
    if (ways > static_cast<unsigned __int128>(INT64_MAX)) return INT64_MAX;
  }
  return static_cast<long>(ways);
}

Rational pav_score(const ApprovalElection& e, const Committee& committee, const PavWeights& w) {
  auto idx = candidate_index(e);
  for (const auto& m : committee.members) {
    if (!idx.count(m)) throw Error(ErrorKind::Domain, "unknown candidate '" + m + "'");
  }
  const int k = static_cast<int>(committee.size());
  w.require(k);
  // prefix[t] = alpha_1 + ... + alpha_t
  std::vector<Rational> prefix(k + 1, Rational(0));
  for (int t = 1; t <= k; ++t) prefix[t] = prefix[t - 1] + w.alpha[t - 1];
  Rational total(0);
  for (const Ballot& b : e.ballots) {
    int t = 0;
    for (const auto& c : b.approve) {
      if (committee.contains(c)) ++t;
    }
    total += prefix[t];
  }
  return total;
}

RuleResult pav_exact(const ApprovalElection& e, int k, const PavWeights& w, int cap) {
  const int n = static_cast<int>(e.candidates.size());
  check_committee_size(k, n);
  if (n > cap) {
    throw Error(ErrorKind::Capacity,
                "election has " + std::to_string(n) +
                    " candidates, above the exhaustive-search cap of " + std::to_string(cap));
  }
  w.require(k);

  ApprovalIndex ai = build_approval_index(e);
  std::vector<int> count(ai.ballots, 0);  // approved members so far, per ballot
  std::vector<int> chosen;
  chosen.reserve(k);
  Rational current(0);

  bool have_best = false;
  Rational best(0);
  std::vector<int> best_committee;
  long ties = 0;

  // Gain of adding candidate c to the current partial committee.
  auto marginal = [&](int c) {
    Rational g(0);
    for (int b : ai.approvers[c]) g += w.alpha[count[b]];
    return g;
  };
  auto add = [&](int c) {
    for (int b : ai.approvers[c]) {
      current += w.alpha[count[b]];
      ++count[b];
    }
    chosen.push_back(c);
  };
  auto remove = [&](int c) {
    chosen.pop_back();
    for (int b : ai.approvers[c]) {
      --count[b];
      current -= w.alpha[count[b]];
    }
  };

  // Include-first DFS in candidate order visits committees in lexicographic
  // order, so the first optimum found is the canonical one. Marginal gains
  // only shrink as the committee grows, which makes the top-r marginal sum
  // an optimistic completion bound; pruning only on strictly worse bounds
  // keeps the tie count exact.
  std::function<void(int)> dfs = [&](int pos) {
    const int r = k - static_cast<int>(chosen.size());
    if (r == 0) {
      if (!have_best || current > best) {
        have_best = true;
        best = current;
        best_committee = chosen;
        ties = 1;
      } else if (current == best) {
        ++ties;
      }
      return;
    }
    if (n - pos < r) return;
    if (have_best) {
      std::vector<Rational> gains;
      gains.reserve(n - pos);
      for (int c = pos; c < n; ++c) gains.push_back(marginal(c));
      std::sort(gains.begin(), gains.end(), [](const Rational& a, const Rational& b) { return b < a; });
      Rational bound = current;
      for (int i = 0; i < r; ++i) bound += gains[i];
      if (bound < best) return;
    }
    add(pos);
    dfs(pos + 1);
    remove(pos);
    dfs(pos + 1);
  };
  dfs(0);

  RuleResult rr;
  for (int c : best_committee) rr.committee.members.push_back(e.candidates[c]);
  rr.objective = best;
  rr.ties = ties;
  return rr;
}

RuleResult pav_greedy(const ApprovalElection& e, int k, const PavWeights& w) {
  const int n = static_cast<int>(e.candidates.size());
  check_committee_size(k, n);
  w.require(k);

  ApprovalIndex ai = build_approval_index(e);
  std::vector<int> count(ai.ballots, 0);
  std::vector<bool> in(n, false);
  std::vector<int> members;
  Rational total(0);

  for (int round = 0; round < k; ++round) {
    int best_c = -1;
    Rational best_gain(0);
    for (int c = 0; c < n; ++c) {
      if (in[c]) continue;
      Rational g(0);
      for (int b : ai.approvers[c]) g += w.alpha[count[b]];
      if (best_c < 0 || g > best_gain) {
        best_c = c;
        best_gain = g;
      }
    }
    in[best_c] = true;
    members.push_back(best_c);
    total += best_gain;
    for (int b : ai.approvers[best_c]) ++count[b];
  }
  std::sort(members.begin(), members.end());

  RuleResult rr;
  for (int c : members) rr.committee.members.push_back(e.candidates[c]);
  rr.objective = total;
  rr.ties = 1;
  return rr;
}

}  // namespace csi
