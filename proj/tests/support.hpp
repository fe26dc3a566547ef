#pragma once

// Shared helpers for the unit and acceptance tests.

#include <map>
#include <string>

#include "tcawp/checker.hpp"
#include "tcawp/corpus.hpp"
#include "tcawp/extractor.hpp"

namespace tcawp::testing {

inline std::map<std::string, RawProblem> paper_fixtures() {
  std::map<std::string, RawProblem> out;
  for (RawProblem& p : load(std::string(TCAWP_FIXTURE_DIR) + "/paper_examples.jsonl")) out[p.id] = std::move(p);
  return out;
}

inline Analysis analyze_text(std::string text, std::string id = "t") {
  return analyze(RawProblem{std::move(id), std::move(text), std::nullopt, {}});
}

inline Verdict check_text(std::string text) { return check_consistency(analyze_text(std::move(text))); }

inline PartiallyConsistent partial(std::initializer_list<Issue> issues) { return PartiallyConsistent{issues}; }

}  // namespace tcawp::testing
