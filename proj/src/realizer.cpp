#include "tcawp/realizer.hpp"

#include "tcawp/error.hpp"

namespace tcawp {

std::string render_number(Decimal v, NumberStyle style) {
  if (style == NumberStyle::Bare && v.is_integral()) return std::to_string(v.whole());
  return v.str();
}

namespace {

std::string note_or(const SlotMap& m, std::string_view key, std::string_view fallback) {
  auto it = m.notes.find(key);
  return it == m.notes.end() ? std::string(fallback) : it->second;
}

void append(Tokens& out, std::string_view phrase) {
  for (std::string& t : tokenize(phrase)) out.push_back(std::move(t));
}

}  // namespace

Tokens realize(const SlotMap& m, NumberStyle style) {
  Tokens out;
  switch (m.kind) {
    case SentenceKind::BT:
      out = {m.at(slot::kAgent), note_or(m, "verb", "has"), render_number(m.value(), style)};
      append(out, plural_type(m.at(slot::kType)));
      break;
    case SentenceKind::AT: {
      out.push_back(m.at(slot::kAgent));
      const std::string pre = note_or(m, "pre", m.notes.contains("post") ? "" : "now");
      if (!pre.empty()) out.push_back(pre);
      out.push_back(note_or(m, "verb", "has"));
      out.push_back(render_number(m.value(), style));
      append(out, plural_type(m.at(slot::kType)));
      if (auto it = m.notes.find("post"); it != m.notes.end()) append(out, it->second);
      break;
    }
    case SentenceKind::TR: {
      const std::string marker = note_or(m, "marker", "to");
      const bool to = marker != "from";
      out = {m.at(to ? slot::kFromAgent : slot::kToAgent), note_or(m, "verb", to ? "gave" : "took"),
             render_number(m.value(), style)};
      append(out, plural_type(m.at(slot::kType)));
      out.push_back(to ? "to" : "from");
      out.push_back(m.at(to ? slot::kToAgent : slot::kFromAgent));
      break;
    }
    case SentenceKind::QS:
      out = {"How", "many"};
      append(out, plural_type(m.at(slot::kType)));
      out.push_back("does");
      out.push_back(m.at(slot::kAgent));
      out.push_back("have");
      append(out, note_or(m, "state", "now"));
      out.push_back("?");
      return out;
  }
  out.push_back(".");
  return out;
}

Tokens with_names(Tokens tokens, const std::map<int, std::string>& names) {
  for (std::string& t : tokens)
    if (auto k = agent_index(Individual(t)); k && is_agent_placeholder(t))
      if (auto it = names.find(*k); it != names.end()) t = it->second;
  return tokens;
}

}  // namespace tcawp
