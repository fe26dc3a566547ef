#pragma once

// Sentence-kind assignment by keyword rules with position as tie-breaker.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tcawp/corpus.hpp"
#include "tcawp/vocabulary.hpp"

namespace tcawp {

enum class SentenceKind { BT, TR, AT, QS };
inline constexpr SentenceKind kAllKinds[] = {SentenceKind::BT, SentenceKind::TR, SentenceKind::AT,
                                             SentenceKind::QS};

std::string_view kind_name(SentenceKind k);
std::optional<SentenceKind> kind_from_name(std::string_view name);
ClassName kind_class(SentenceKind k);
std::optional<SentenceKind> kind_of_class(ClassName c);

// Keyword lists; entries may span several tokens ("in total").
struct KindLexicon {
  std::set<std::string> transfer_verbs;
  std::set<std::string> temporal_markers;
  std::set<std::string> question_openers;

  static const KindLexicon& bundled();
  static KindLexicon parse(std::istream& in);  // throws ParseError on unknown section or entry outside one
  static KindLexicon load(const std::filesystem::path& path);
};

struct FeatureVector {
  std::map<std::string, int> bag;                  // token -> count
  std::set<std::vector<std::string>> ngrams;       // n = 1, 2, 3
  std::size_t index = 0;
  std::size_t total = 1;

  bool has_ngram(std::string_view phrase) const;   // space-separated phrase of up to three tokens
  auto operator<=>(const FeatureVector&) const = default;
};

FeatureVector featurize(const Tokens& tokens, std::size_t index, std::size_t total);

// Throws Unclassifiable.
SentenceKind classify(const FeatureVector& fv, const KindLexicon& lexicon = KindLexicon::bundled());

std::vector<SentenceKind> classify_all(const std::vector<Tokens>& sentences,
                                       const KindLexicon& lexicon = KindLexicon::bundled());

}  // namespace tcawp
