#pragma once

// Assertion-level repair of partially consistent problems.

#include <string>
#include <vector>

#include "tcawp/checker.hpp"
#include "tcawp/rng.hpp"

namespace tcawp {

struct RepairEntry {
  IssueClass issue;
  int sentence;
  std::string before;
  std::string after;
  bool operator==(const RepairEntry&) const = default;
};
using RepairLog = std::vector<RepairEntry>;

// The single object type shared by all BT sentences. Throws AmbiguousGroundTruth.
std::string ground_truth_type(const ABox& abox);

// Each fix edits the box in place, appends to the log and is a no-op when the
// slot already holds the expected value.
void fix_qs_objtype(ABox& abox, RepairLog& log);
void fix_objtype_in(ABox& abox, const Individual& sentence, RepairLog& log);
// Throws RepairFailed unless exactly two agents have BT sentences.
void fix_tr_agents(ABox& abox, const Individual& sentence, RepairLog& log);
// Walks transfers in order and redraws any amount the source cannot cover,
// uniformly in [1, stock]; then resets AT values to the simulated stock.
void fix_quantities(ABox& abox, Rng& rng, RepairLog& log);

struct RepairResult {
  RawProblem problem;
  Analysis analysis;
  Verdict verdict;
  RepairLog log;
};

// Consistent input comes back unchanged. Unrepairable input, or a patch that
// does not re-check as consistent, raises RepairFailed.
RepairResult repair(const RawProblem& problem, const Analysis& analysis, const Verdict& verdict,
                    std::uint64_t seed = 0);
RepairResult repair(const RawProblem& problem, std::uint64_t seed = 0);

}  // namespace tcawp
