#include "tcawp/corpus.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "bundled_data.hpp"
#include "tcawp/error.hpp"

namespace tcawp {

using json = nlohmann::ordered_json;

nlohmann::ordered_json gold_to_json(const GoldRecord& g) {
  json j = json::object();
  json triples = json::array();
  for (const Assertion& a : g.abox) {
    const auto s = to_strings(a);
    triples.push_back(json::array({s[0], s[1], s[2]}));
  }
  j["abox"] = std::move(triples);
  json labels = json::array();
  json loci = json::array();
  for (const Issue& i : g.injected) {
    labels.push_back(std::string(issue_name(i.cls)));
    loci.push_back(i.sentence);
  }
  j["labels"] = std::move(labels);
  j["loci"] = std::move(loci);
  if (g.answer) j["answer"] = g.answer->str();
  return j;
}

GoldRecord gold_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ParseError("gold must be an object");
  GoldRecord g;
  if (!j.contains("abox") || !j["abox"].is_array()) throw ParseError("gold.abox must be an array");
  for (const auto& t : j["abox"]) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_string())
      throw ParseError("gold.abox entries must be [s, p, o] string triples");
    g.abox.push_back(from_strings(t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()));
  }
  if (!j.contains("labels") || !j["labels"].is_array()) throw ParseError("gold.labels must be an array");
  const json loci = j.value("loci", json::array());
  for (std::size_t i = 0; i < j["labels"].size(); ++i) {
    const auto& l = j["labels"][i];
    if (!l.is_string()) throw ParseError("gold.labels entries must be strings");
    const auto cls = issue_from_name(l.get<std::string>());
    if (!cls) throw ParseError("unknown issue label '" + l.get<std::string>() + "'");
    const int locus = i < loci.size() && loci[i].is_number_integer() ? loci[i].get<int>() : 0;
    g.injected.push_back({*cls, locus});
  }
  if (j.contains("answer")) {
    if (!j["answer"].is_string()) throw ParseError("gold.answer must be a decimal string");
    g.answer = Decimal::parse_or_throw(j["answer"].get<std::string>());
  }
  return g;
}

RawProblem problem_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ParseError("record must be a JSON object");
  if (!j.contains("id") || !j["id"].is_string()) throw ParseError("missing string field \"id\"");
  if (!j.contains("text") || !j["text"].is_string()) throw ParseError("missing string field \"text\"");
  RawProblem p;
  p.id = j["id"].get<std::string>();
  p.text = j["text"].get<std::string>();
  if (p.text.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError("\"text\" is empty");
  if (j.contains("gold") && !j["gold"].is_null()) p.gold = gold_from_json(j["gold"]);
  for (const auto& [k, v] : j.items())
    if (k != "id" && k != "text" && k != "gold") p.extra[k] = v;
  return p;
}

nlohmann::ordered_json to_json(const RawProblem& p) {
  json j = json::object();
  j["id"] = p.id;
  j["text"] = p.text;
  if (p.gold) j["gold"] = gold_to_json(*p.gold);
  for (const auto& [k, v] : p.extra.items()) j[k] = v;
  return j;
}

std::vector<RawProblem> parse_jsonl(std::istream& in) {
  std::vector<RawProblem> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    RawProblem p;
    try {
      p = problem_from_json(json::parse(line));
    } catch (const json::exception& e) {
      throw SchemaError(lineno, e.what());
    } catch (const ParseError& e) {
      throw SchemaError(lineno, e.what());
    }
    if (!ids.insert(p.id).second) throw DuplicateId("id '" + p.id + "' repeats at line " + std::to_string(lineno));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<RawProblem> load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return parse_jsonl(in);
}

void write_jsonl(std::ostream& out, const std::vector<nlohmann::ordered_json>& records) {
  for (const auto& r : records) out << r.dump() << '\n';
}

Tokens tokenize(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) break;
    std::string_view word = text.substr(i, j - i);
    std::vector<std::string> trailing;
    while (!word.empty()) {
      const char c = word.back();
      if (c != '.' && c != '?' && c != ',' && c != '!') break;
      trailing.emplace_back(1, c);
      word.remove_suffix(1);
    }
    if (!word.empty()) out.emplace_back(word);
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
    i = j;
  }
  return out;
}

std::vector<Tokens> split_sentences(const Tokens& tokens) {
  std::vector<Tokens> out;
  Tokens current;
  for (const std::string& t : tokens) {
    current.push_back(t);
    if (t == "." || t == "?") {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::string join_tokens(const Tokens& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::vector<std::string> sentence_texts(std::string_view text) {
  std::vector<std::string> out;
  for (const Tokens& s : split_sentences(tokenize(text))) out.push_back(join_tokens(s));
  return out;
}

NameLexicon NameLexicon::parse(std::istream& in) {
  std::set<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    names.insert(line.substr(b, e - b + 1));
  }
  return NameLexicon(std::move(names));
}

NameLexicon NameLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return parse(in);
}

const NameLexicon& NameLexicon::bundled() {
  static const NameLexicon lexicon = [] {
    std::istringstream in(bundled::kNames);
    return parse(in);
  }();
  return lexicon;
}

namespace {

std::optional<int> placeholder_index(std::string_view token, std::string_view prefix) {
  if (token.size() <= prefix.size() || token.substr(0, prefix.size()) != prefix) return std::nullopt;
  int v = 0;
  for (const char c : token.substr(prefix.size())) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + (c - '0');
    if (v > 1'000'000) return std::nullopt;
  }
  return v;
}

bool is_pronoun(std::string_view t) {
  return t == "he" || t == "she" || t == "him" || t == "her" || t == "He" || t == "She" || t == "Him" ||
         t == "Her";
}

bool is_capitalized_word(std::string_view t) {
  if (t.empty() || !std::isupper(static_cast<unsigned char>(t[0]))) return false;
  for (const char c : t.substr(1))
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '-' && c != '\'') return false;
  return t != "I";
}

}  // namespace

bool is_agent_placeholder(std::string_view token) { return placeholder_index(token, "Agent").has_value(); }
bool is_number_placeholder(std::string_view token) { return placeholder_index(token, "number").has_value(); }
bool is_numeric_token(std::string_view token) { return Decimal::parse(token).has_value(); }

std::optional<std::string> NormalizedProblem::surface_of(std::string_view placeholder) const {
  for (const auto& [surface, ph] : agent_map)
    if (ph == placeholder) return surface;
  if (auto it = number_map.find(std::string(placeholder)); it != number_map.end()) return it->second;
  return std::nullopt;
}

Decimal NormalizedProblem::number_value(std::string_view token) const {
  if (auto it = number_map.find(std::string(token)); it != number_map.end())
    return Decimal::parse_or_throw(it->second);
  if (auto d = Decimal::parse(token)) return *d;
  throw UnmappedPlaceholder("no value for '" + std::string(token) + "'");
}

NormalizedProblem normalize_text(std::string_view text, const NameLexicon& names) {
  NormalizedProblem np;
  np.sentences = split_sentences(tokenize(text));
  if (np.sentences.empty()) throw NoSentences("problem text has no sentences");

  // AgentK tokens keep their index; surface names take the lowest free one.
  std::set<int> used;
  for (const Tokens& s : np.sentences)
    for (const std::string& t : s)
      if (auto k = placeholder_index(t, "Agent")) {
        if (*k < 1 || *k > 3) throw TooManyAgents("agent placeholder " + t + " is outside Agent1..Agent3");
        used.insert(*k);
      }

  auto placeholder_for = [&](const std::string& surface) -> std::string {
    if (auto it = np.agent_map.find(surface); it != np.agent_map.end()) return it->second;
    if (placeholder_index(surface, "Agent")) {
      np.agent_map[surface] = surface;
      return surface;
    }
    int k = 1;
    while (used.contains(k)) ++k;
    if (k > 3) throw TooManyAgents("more than three agents ('" + surface + "')");
    used.insert(k);
    const std::string ph = "Agent" + std::to_string(k);
    np.agent_map[surface] = ph;
    return ph;
  };

  std::optional<std::string> last_agent;
  int number_count = 0;
  for (std::size_t si = 0; si < np.sentences.size(); ++si) {
    Tokens& s = np.sentences[si];
    for (std::size_t ti = 0; ti < s.size(); ++ti) {
      std::string& t = s[ti];
      if (is_numeric_token(t)) {
        const std::string ph = "number" + std::to_string(++number_count);
        np.number_map[ph] = t;
        t = ph;
        continue;
      }
      if (is_pronoun(t)) {
        if (!last_agent) throw NormalizationError("pronoun '" + t + "' has no prior agent");
        np.pronouns.push_back({si, ti, t});
        t = *last_agent;
        continue;
      }
      const bool agent = placeholder_index(t, "Agent").has_value() || names.contains(t) ||
                         (ti > 0 && is_capitalized_word(t)) || np.agent_map.contains(t);
      if (agent) {
        t = placeholder_for(t);
        last_agent = t;
      }
    }
  }
  return np;
}

NormalizedProblem normalize(const RawProblem& p, const NameLexicon& names) { return normalize_text(p.text, names); }

Tokens denormalize_sentence(const NormalizedProblem& np, std::size_t index) {
  Tokens out = np.sentences.at(index);
  for (std::size_t ti = 0; ti < out.size(); ++ti) {
    std::string& t = out[ti];
    if (is_agent_placeholder(t) || is_number_placeholder(t)) {
      auto surface = np.surface_of(t);
      if (!surface) throw UnmappedPlaceholder("'" + t + "' has no surface form");
      t = *surface;
    }
  }
  for (const PronounUse& p : np.pronouns)
    if (p.sentence == index) out.at(p.token) = p.surface;
  return out;
}

std::string denormalize(const NormalizedProblem& np) {
  std::string out;
  for (std::size_t i = 0; i < np.sentences.size(); ++i) {
    if (!out.empty()) out.push_back(' ');
    out += join_tokens(denormalize_sentence(np, i));
  }
  return out;
}

}  // namespace tcawp
