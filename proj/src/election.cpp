#include "csi/election.hpp"

#include <algorithm>
#include <unordered_set>

#include "csi/error.hpp"

namespace csi {

bool Committee::contains(const CandidateId& id) const {
  return std::find(members.begin(), members.end(), id) != members.end();
}

bool operator==(const Committee& a, const Committee& b) { return a.members == b.members; }
bool operator!=(const Committee& a, const Committee& b) { return !(a == b); }

std::vector<Violation> validate_election(const ApprovalElection& e) {
  std::vector<Violation> out;
  std::unordered_set<std::string> ids;
  for (const auto& c : e.candidates) {
    if (c.empty()) {
      out.push_back({-1, "empty-candidate-id", "candidate list contains an empty id"});
      continue;
    }
    if (!ids.insert(c).second) {
      out.push_back({-1, "duplicate-candidate", "candidate '" + c + "' listed more than once"});
    }
  }
  for (int i = 0; i < static_cast<int>(e.ballots.size()); ++i) {
    const Ballot& b = e.ballots[i];
    for (const auto& c : b.approve) {
      if (!ids.count(c)) {
        out.push_back({i, "unknown-candidate", "ballot approves unknown candidate '" + c + "'"});
      }
    }
    for (const auto& c : b.disapprove) {
      if (!ids.count(c)) {
        out.push_back({i, "unknown-candidate", "ballot disapproves unknown candidate '" + c + "'"});
      }
      if (std::find(b.approve.begin(), b.approve.end(), c) != b.approve.end()) {
        out.push_back({i, "overlap", "candidate '" + c + "' both approved and disapproved"});
      }
    }
  }
  return out;
}

std::unordered_map<CandidateId, int> candidate_index(const ApprovalElection& e) {
  std::unordered_map<CandidateId, int> idx;
  idx.reserve(e.candidates.size());
  for (int i = 0; i < static_cast<int>(e.candidates.size()); ++i) {
    idx.emplace(e.candidates[i], i);
  }
  return idx;
}

namespace {

int count_ballots(const ApprovalElection& e, const CandidateId& c, bool approve_side) {
  bool known =
      std::find(e.candidates.begin(), e.candidates.end(), c) != e.candidates.end();
  if (!known) {
    throw Error(ErrorKind::Domain, "unknown candidate '" + c + "'");
  }
  int n = 0;
  for (const Ballot& b : e.ballots) {
    const auto& side = approve_side ? b.approve : b.disapprove;
    if (std::find(side.begin(), side.end(), c) != side.end()) ++n;
  }
  return n;
}

}  // namespace

int approval_score(const ApprovalElection& e, const CandidateId& c) {
  return count_ballots(e, c, true);
}

int disapproval_score(const ApprovalElection& e, const CandidateId& c) {
  return count_ballots(e, c, false);
}

Committee make_committee(const ApprovalElection& e, std::vector<CandidateId> ids) {
  auto idx = candidate_index(e);
  for (const auto& id : ids) {
    if (!idx.count(id)) throw Error(ErrorKind::Domain, "unknown candidate '" + id + "'");
  }
  std::sort(ids.begin(), ids.end(),
            [&](const CandidateId& a, const CandidateId& b) { return idx[a] < idx[b]; });
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return Committee{std::move(ids)};
}

ApprovalElection restrict_election(const ApprovalElection& e,
                                   const std::vector<CandidateId>& keep) {
  std::unordered_set<std::string> kept(keep.begin(), keep.end());
  ApprovalElection out;
  for (const auto& c : e.candidates) {
    if (kept.count(c)) out.candidates.push_back(c);
  }
  out.ballots.reserve(e.ballots.size());
  for (const Ballot& b : e.ballots) {
    Ballot nb;
    nb.voter = b.voter;
    for (const auto& c : b.approve) {
      if (kept.count(c)) nb.approve.push_back(c);
    }
    for (const auto& c : b.disapprove) {
      if (kept.count(c)) nb.disapprove.push_back(c);
    }
    out.ballots.push_back(std::move(nb));
  }
  return out;
}

}  // namespace csi
