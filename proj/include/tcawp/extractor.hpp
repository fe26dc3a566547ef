#pragma once

// Slot filling per sentence kind and ABox population for whole problems.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcawp/abox.hpp"
#include "tcawp/classifier.hpp"
#include "tcawp/corpus.hpp"

namespace tcawp {

namespace slot {
inline constexpr std::string_view kAgent = "Agent";
inline constexpr std::string_view kFromAgent = "From-Agent";
inline constexpr std::string_view kToAgent = "To-Agent";
inline constexpr std::string_view kValue = "Q-Value";
inline constexpr std::string_view kType = "Q-Type";
}  // namespace slot

std::vector<std::string_view> slot_labels(SentenceKind k);

struct SlotMap {
  SentenceKind kind = SentenceKind::BT;
  std::map<std::string, std::string, std::less<>> slots;
  // Surface choices that carry no ontology content: "verb", "marker"
  // (to/from for transfers), "pre"/"post" (AT temporal words), "state" (QS).
  std::map<std::string, std::string, std::less<>> notes;

  const std::string& at(std::string_view label) const;
  Decimal value() const { return Decimal::parse_or_throw(at(slot::kValue)); }
  int agent(std::string_view label = slot::kAgent) const;  // K of AgentK
  bool operator==(const SlotMap&) const = default;
};

// Lowercase; the last word loses its plural ending ("red balloons" -> "red balloon").
std::string canonical_type(std::string_view phrase);
std::string plural_type(std::string_view canonical);

// Throws ExtractionError when the sentence is outside the kind's grammar.
SlotMap extract(const Tokens& tokens, SentenceKind kind, const NormalizedProblem* np = nullptr);

// Strict: every sentence must carry a complete slot map.
ABox populate(const std::vector<SlotMap>& sentences);
// Sentences given as nullopt only contribute their kind and WordProblem link.
ABox populate_partial(const std::vector<SentenceKind>& kinds, const std::vector<std::optional<SlotMap>>& slots);

// Inverse of populate for well-formed sentence individuals, in S1..Sn order.
// An entry is nullopt when its individual lacks a kind or a required slot.
std::vector<std::optional<SlotMap>> recover_slots(const ABox& abox);

struct Analysis {
  enum class Stage { Complete, NormalizationFailed, ClassificationFailed, ExtractionFailed };

  std::string id;
  Stage stage = Stage::Complete;
  std::string error;  // first failure message
  NormalizedProblem normalized;
  std::vector<SentenceKind> kinds;
  std::vector<std::optional<SlotMap>> slots;
  std::vector<std::size_t> failed_sentences;  // 0-based
  ABox abox;

  bool complete() const { return stage == Stage::Complete; }
};

Analysis analyze(const RawProblem& p, const NameLexicon& names = NameLexicon::bundled(),
                 const KindLexicon& lexicon = KindLexicon::bundled());

}  // namespace tcawp
