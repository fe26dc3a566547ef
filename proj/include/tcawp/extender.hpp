#pragma once

// Turns a consistent two-agent, one-transfer problem into a three-agent,
// two-transfer one.

#include <optional>
#include <string>
#include <vector>

#include "tcawp/checker.hpp"
#include "tcawp/rng.hpp"

namespace tcawp {

// Second transfer between Agent3 and one of the original agents, plus the
// agent the rewritten question asks about.
struct Combination {
  int from = 3;
  int to = 2;
  int ask = 2;
  bool operator==(const Combination&) const = default;

  std::string transfer() const;  // "A3->A2"
  std::string ask_name() const;  // "A2"
  std::string str() const;       // "A3->A2:A2"
};

std::vector<Combination> all_combinations();  // 4 directions x 3 question agents
// Accepts "A3->A2:A2". Throws InvalidSpec.
Combination parse_combination(std::string_view text);

struct ExtendOptions {
  int value_lo = 1;  // stock range for the new agent
  int value_hi = 99;
};

// Throws NotApplicable when the input is not a consistent two-agent problem
// with one transfer, InfeasibleCombination when the second transfer's source
// has nothing to give.
RawProblem extend(const RawProblem& problem, const Analysis& analysis, Combination c, Rng& rng,
                  const ExtendOptions& options = {});

// One sentence from the assertions describing a single BT, AT, TR or QS.
// Throws IncompleteTriples.
std::string realize_triples(const std::vector<Assertion>& assertions);

struct EnumeratedExtension {
  Combination combination;
  std::optional<RawProblem> problem;
  std::string error;  // set when the combination is infeasible
};

std::vector<EnumeratedExtension> enumerate(const RawProblem& problem, std::uint64_t seed,
                                           const ExtendOptions& options = {});

}  // namespace tcawp
