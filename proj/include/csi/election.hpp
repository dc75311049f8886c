#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace csi {

using CandidateId = std::string;

// One voter's ballot. Approve and disapprove are disjoint sets; a candidate
// in neither is an abstention.
struct Ballot {
  std::string voter;
  std::vector<CandidateId> approve;
  std::vector<CandidateId> disapprove;
};

// Candidate order in `candidates` is the global tie-break order used by
// every selection rule downstream.
struct ApprovalElection {
  std::vector<CandidateId> candidates;
  std::vector<Ballot> ballots;
};

// Committee members are kept in global candidate order.
struct Committee {
  std::vector<CandidateId> members;

  std::size_t size() const { return members.size(); }
  bool contains(const CandidateId& id) const;
};

bool operator==(const Committee& a, const Committee& b);
bool operator!=(const Committee& a, const Committee& b);

struct Violation {
  int ballot = -1;  // -1 when the problem is in the candidate list
  std::string code;
  std::string detail;
};

// Structured report; an empty result means the election is well-formed.
std::vector<Violation> validate_election(const ApprovalElection& e);

std::unordered_map<CandidateId, int> candidate_index(const ApprovalElection& e);

// Number of ballots approving / disapproving c. Unknown c -> domain error.
int approval_score(const ApprovalElection& e, const CandidateId& c);
int disapproval_score(const ApprovalElection& e, const CandidateId& c);

// Sorts ids into global candidate order and drops duplicates.
// Unknown id -> domain error.
Committee make_committee(const ApprovalElection& e, std::vector<CandidateId> ids);

// Election restricted to `keep`: candidate order preserved, ballots
// intersected with the kept set. Voters are all retained.
ApprovalElection restrict_election(const ApprovalElection& e,
                                   const std::vector<CandidateId>& keep);

}  // namespace csi
