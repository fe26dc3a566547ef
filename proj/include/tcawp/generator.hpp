#pragma once

// Template-mode problem generation and controlled noise injection.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcawp/corpus.hpp"
#include "tcawp/extractor.hpp"
#include "tcawp/issues.hpp"
#include "tcawp/realizer.hpp"
#include "tcawp/rng.hpp"

namespace tcawp {

struct VerbLexicon {
  std::vector<std::string> possession{"has", "had", "grew", "owns"};
  std::vector<std::string> transfer_to{"gave", "donated", "transfers"};
  std::vector<std::string> transfer_from{"took"};
};

std::vector<std::string> default_type_pool();

struct TemplateSpec {
  int agents = 2;
  int sentences = 4;
  int value_lo = 1;
  int value_hi = 99;
  std::vector<std::string> types = default_type_pool();  // canonical (singular) forms
  VerbLexicon verbs;
  bool surface_names = false;  // first names from the lexicon instead of AgentK
  std::uint64_t seed = 0;

  void validate() const;  // throws InvalidSpec
};

// A generated problem keeps the plan it was rendered from so that noise can be
// applied at the slot level.
struct GeneratedProblem {
  RawProblem raw;                    // text + gold
  std::vector<SlotMap> plan;         // what the text says (after noise, if any)
  std::map<int, std::string> names;  // AgentK -> surface; empty keeps placeholders
  NumberStyle style = NumberStyle::Decimal;
};

GeneratedProblem generate_template(const TemplateSpec& spec, std::string id = "p");

// Renders a plan to text (one space between tokens, sentences joined by a space).
std::string render_plan(const std::vector<SlotMap>& plan, const std::map<int, std::string>& names,
                        NumberStyle style);

// Sequential simulation over a plan; returns the asked agent's final stock.
Decimal plan_answer(const std::vector<SlotMap>& plan);

// Returns a copy whose text carries exactly `issue`; gold.injected gains the
// label and locus while gold.abox and the answer stay those of the clean plan.
// Throws NotApplicable when the problem's shape cannot host the issue.
GeneratedProblem inject_noise(const GeneratedProblem& clean, IssueClass issue, Rng& rng,
                              const std::vector<std::string>& type_pool = default_type_pool());

}  // namespace tcawp
