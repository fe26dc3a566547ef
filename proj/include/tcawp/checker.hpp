#pragma once

// Structure validation, consistency rules and verdict triage.

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tcawp/abox.hpp"
#include "tcawp/extractor.hpp"
#include "tcawp/issues.hpp"

namespace tcawp {

enum class UnrepairableReason { StructureBroken, MissingInformation, ExtractionFailed };
std::string_view reason_name(UnrepairableReason r);

struct Consistent {
  bool operator==(const Consistent&) const = default;
};
struct PartiallyConsistent {
  std::vector<Issue> issues;  // sorted by sentence, then class
  bool operator==(const PartiallyConsistent&) const = default;
};
struct Unrepairable {
  UnrepairableReason reason;
  bool operator==(const Unrepairable&) const = default;
};
using Verdict = std::variant<Consistent, PartiallyConsistent, Unrepairable>;

std::string_view verdict_name(const Verdict& v);  // "consistent" | "partial" | "unrepairable"
std::string describe(const Verdict& v);

struct Transfer {
  std::string from;
  std::string to;
  Decimal amount;
};

// Replays transfers in order. Agents that appear only as recipients start a
// ledger at zero. Throws UnknownFromAgent for a source with neither a stock
// nor earlier receipts.
bool feasible(const std::map<std::string, Decimal>& stocks, const std::vector<Transfer>& transfers);
// 0-based indexes of transfers whose amount exceeds the source's stock at that point.
std::vector<std::size_t> infeasible_steps(const std::map<std::string, Decimal>& stocks,
                                          const std::vector<Transfer>& transfers);

// Adds ClassAssertion(s, Valid<kind>) on success.
bool validate_sentence(ABox& abox, const Individual& s);
// Adds ClassAssertion(WP, ValidStructure) on success; validates sentences first.
bool validate_structure(ABox& abox);

struct Finding {
  std::variant<Issue, UnrepairableReason> what;
  auto operator<=>(const Finding&) const = default;
};

struct Derivation {
  std::vector<Assertion> assertions;
  std::vector<Finding> findings;
};

// Rules in a lower stratum run to fixpoint before any rule of a higher one;
// within a stratum rules only add facts, so their order does not matter.
struct Rule {
  std::string name;
  int stratum = 0;
  std::function<Derivation(const ABox&, const std::set<Finding>&)> fire;
};

const std::vector<Rule>& consistency_rules();

struct Evaluation {
  ABox abox;
  std::set<Finding> findings;
};
Evaluation run_rules(ABox abox, std::span<const Rule> rules);

Verdict verdict_from(const std::set<Finding>& findings);
Verdict check_abox(const ABox& abox);
Verdict check_consistency(const Analysis& analysis);

}  // namespace tcawp
