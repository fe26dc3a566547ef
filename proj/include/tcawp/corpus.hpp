#pragma once

// Problem datasets (JSONL), tokenization and agent/number normalization.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tcawp/abox.hpp"
#include "tcawp/issues.hpp"

namespace tcawp {

using Tokens = std::vector<std::string>;

// Generator-side ground truth: the intended ABox, the issues injected into
// the text (empty when the text realizes the ABox), and the answer.
struct GoldRecord {
  std::vector<Assertion> abox;
  std::vector<Issue> injected;
  std::optional<Decimal> answer;

  bool clean() const { return injected.empty(); }
  ABox intended() const { return make_abox(abox); }
};

struct RawProblem {
  std::string id;
  std::string text;
  std::optional<GoldRecord> gold;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();  // unrecognized fields, passed through
};

nlohmann::ordered_json gold_to_json(const GoldRecord& g);
GoldRecord gold_from_json(const nlohmann::ordered_json& j);  // throws ParseError

// One record per line; blank lines are skipped. Throws SchemaError with the
// 1-based line number, or DuplicateId.
std::vector<RawProblem> parse_jsonl(std::istream& in);
std::vector<RawProblem> load(const std::filesystem::path& path);

RawProblem problem_from_json(const nlohmann::ordered_json& j);  // throws ParseError
nlohmann::ordered_json to_json(const RawProblem& p);
void write_jsonl(std::ostream& out, const std::vector<nlohmann::ordered_json>& records);

// Whitespace split; trailing '.', '?', ',' and '!' become standalone tokens.
Tokens tokenize(std::string_view text);
// Splits after every '.' or '?' token; a trailing unterminated run is kept.
std::vector<Tokens> split_sentences(const Tokens& tokens);
std::string join_tokens(const Tokens& tokens);
std::vector<std::string> sentence_texts(std::string_view text);

class NameLexicon {
 public:
  NameLexicon() = default;
  explicit NameLexicon(std::set<std::string> names) : names_(std::move(names)) {}
  static const NameLexicon& bundled();
  static NameLexicon parse(std::istream& in);  // one name per line, '#' comments
  static NameLexicon load(const std::filesystem::path& path);

  bool contains(std::string_view name) const { return names_.contains(std::string(name)); }
  const std::set<std::string>& names() const { return names_; }

 private:
  std::set<std::string> names_;
};

bool is_agent_placeholder(std::string_view token);
bool is_number_placeholder(std::string_view token);
bool is_numeric_token(std::string_view token);

struct PronounUse {
  std::size_t sentence;
  std::size_t token;
  std::string surface;
};

struct NormalizedProblem {
  std::vector<Tokens> sentences;
  std::map<std::string, std::string> agent_map;   // surface name -> AgentK
  std::map<std::string, std::string> number_map;  // numberK -> original token
  std::vector<PronounUse> pronouns;               // restored verbatim by denormalize

  std::optional<std::string> surface_of(std::string_view placeholder) const;
  Decimal number_value(std::string_view token) const;  // numberK or a literal number
};

// First-mentioned agent becomes Agent1 (AgentK tokens already present keep
// their index); each numeric token becomes numberK in order. Throws
// NoSentences, TooManyAgents or NormalizationError (pronoun without antecedent).
NormalizedProblem normalize(const RawProblem& p, const NameLexicon& names = NameLexicon::bundled());
NormalizedProblem normalize_text(std::string_view text, const NameLexicon& names = NameLexicon::bundled());

// Throws UnmappedPlaceholder.
std::string denormalize(const NormalizedProblem& np);
Tokens denormalize_sentence(const NormalizedProblem& np, std::size_t index);

}  // namespace tcawp
