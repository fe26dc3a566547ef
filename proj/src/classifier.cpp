#include "tcawp/classifier.hpp"

#include <fstream>
#include <sstream>

#include "bundled_data.hpp"
#include "tcawp/error.hpp"

namespace tcawp {

std::string_view kind_name(SentenceKind k) {
  switch (k) {
    case SentenceKind::BT: return "BT";
    case SentenceKind::TR: return "TR";
    case SentenceKind::AT: return "AT";
    case SentenceKind::QS: return "QS";
  }
  return "?";
}

std::optional<SentenceKind> kind_from_name(std::string_view name) {
  for (SentenceKind k : kAllKinds)
    if (kind_name(k) == name) return k;
  return std::nullopt;
}

ClassName kind_class(SentenceKind k) {
  switch (k) {
    case SentenceKind::BT: return ClassName::BT;
    case SentenceKind::TR: return ClassName::TR;
    case SentenceKind::AT: return ClassName::AT;
    case SentenceKind::QS: return ClassName::QS;
  }
  return ClassName::BT;
}

std::optional<SentenceKind> kind_of_class(ClassName c) {
  switch (c) {
    case ClassName::BT: return SentenceKind::BT;
    case ClassName::TR: return SentenceKind::TR;
    case ClassName::AT: return SentenceKind::AT;
    case ClassName::QS: return SentenceKind::QS;
    default: return std::nullopt;
  }
}

KindLexicon KindLexicon::parse(std::istream& in) {
  KindLexicon lex;
  std::set<std::string>* section = nullptr;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string entry = line.substr(b, e - b + 1);
    if (entry.front() == '[') {
      if (entry == "[transfer-verbs]") section = &lex.transfer_verbs;
      else if (entry == "[temporal-markers]") section = &lex.temporal_markers;
      else if (entry == "[question-openers]") section = &lex.question_openers;
      else throw ParseError("unknown lexicon section " + entry);
      continue;
    }
    if (!section) throw ParseError("lexicon entry '" + entry + "' precedes any section header");
    section->insert(join_tokens(tokenize(entry)));
  }
  return lex;
}

KindLexicon KindLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return parse(in);
}

const KindLexicon& KindLexicon::bundled() {
  static const KindLexicon lex = [] {
    std::istringstream in(bundled::kLexicon);
    return parse(in);
  }();
  return lex;
}

bool FeatureVector::has_ngram(std::string_view phrase) const { return ngrams.contains(tokenize(phrase)); }

FeatureVector featurize(const Tokens& tokens, std::size_t index, std::size_t total) {
  FeatureVector fv;
  fv.index = index;
  fv.total = std::max(total, index + 1);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    ++fv.bag[tokens[i]];
    for (std::size_t n = 1; n <= 3 && i + n <= tokens.size(); ++n)
      fv.ngrams.emplace(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                        tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
  }
  return fv;
}

namespace {

bool any_of_phrases(const FeatureVector& fv, const std::set<std::string>& phrases) {
  for (const std::string& p : phrases)
    if (fv.has_ngram(p)) return true;
  return false;
}

}  // namespace

SentenceKind classify(const FeatureVector& fv, const KindLexicon& lexicon) {
  int agents = 0;
  bool number = false;
  for (const auto& [tok, count] : fv.bag) {
    if (is_agent_placeholder(tok)) agents += count;
    if (is_number_placeholder(tok) || is_numeric_token(tok)) number = true;
  }
  const bool interrogative = fv.bag.contains("?");

  for (const std::string& opener : lexicon.question_openers)
    if (fv.has_ngram(opener + " many")) return SentenceKind::QS;
  if (any_of_phrases(fv, lexicon.transfer_verbs) &&
      (agents >= 2 || fv.bag.contains("to") || fv.bag.contains("from")))
    return SentenceKind::TR;
  if (!interrogative && any_of_phrases(fv, lexicon.temporal_markers)) return SentenceKind::AT;
  if (!interrogative && agents >= 1 && number) return SentenceKind::BT;

  if (fv.index == 0) return SentenceKind::BT;
  if (fv.index + 1 == fv.total) return SentenceKind::QS;
  throw Unclassifiable("no rule matches interior sentence " + std::to_string(fv.index + 1));
}

std::vector<SentenceKind> classify_all(const std::vector<Tokens>& sentences, const KindLexicon& lexicon) {
  std::vector<SentenceKind> out;
  out.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i)
    out.push_back(classify(featurize(sentences[i], i, sentences.size()), lexicon));
  return out;
}

}  // namespace tcawp
