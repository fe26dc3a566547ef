#include "tcawp/extractor.hpp"

#include <algorithm>
#include <cctype>

#include "tcawp/error.hpp"

namespace tcawp {

std::vector<std::string_view> slot_labels(SentenceKind k) {
  switch (k) {
    case SentenceKind::BT:
    case SentenceKind::AT: return {slot::kAgent, slot::kValue, slot::kType};
    case SentenceKind::TR: return {slot::kFromAgent, slot::kToAgent, slot::kValue, slot::kType};
    case SentenceKind::QS: return {slot::kAgent, slot::kType};
  }
  return {};
}

const std::string& SlotMap::at(std::string_view label) const {
  auto it = slots.find(label);
  if (it == slots.end())
    throw ExtractionError(std::string(kind_name(kind)) + " slot map lacks " + std::string(label));
  return it->second;
}

int SlotMap::agent(std::string_view label) const {
  const auto k = agent_index(Individual(at(label)));
  if (!k) throw ExtractionError("'" + at(label) + "' is not an agent placeholder");
  return *k;
}

namespace {

struct Irregular {
  std::string_view plural;
  std::string_view singular;
};

constexpr Irregular kIrregular[] = {
    {"pies", "pie"},         {"cookies", "cookie"}, {"movies", "movie"},   {"brownies", "brownie"},
    {"buses", "bus"},        {"children", "child"}, {"people", "person"},  {"potatoes", "potato"},
    {"tomatoes", "tomato"},  {"knives", "knife"},   {"leaves", "leaf"},    {"mice", "mouse"},
    {"geese", "goose"},      {"teeth", "tooth"},    {"feet", "foot"},      {"men", "man"},
    {"women", "woman"},      {"sheep", "sheep"},    {"fish", "fish"},      {"deer", "deer"},
    {"series", "series"},    {"species", "species"}};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

std::string singular_word(std::string w) {
  for (const Irregular& ir : kIrregular)
    if (w == ir.plural || w == ir.singular) return std::string(ir.singular);
  if (ends_with(w, "ies") && w.size() > 3) return w.substr(0, w.size() - 3) + "y";
  for (std::string_view es : {"ches", "shes", "xes", "sses", "zzes"})
    if (ends_with(w, es)) return w.substr(0, w.size() - 2);
  if (ends_with(w, "s") && !ends_with(w, "ss") && w.size() > 1) return w.substr(0, w.size() - 1);
  return w;
}

std::string plural_word(const std::string& w) {
  for (const Irregular& ir : kIrregular)
    if (w == ir.singular) return std::string(ir.plural);
  if (ends_with(w, "y") && w.size() > 1 && !is_vowel(w[w.size() - 2])) return w.substr(0, w.size() - 1) + "ies";
  for (std::string_view es : {"ch", "sh", "x", "ss", "zz"})
    if (ends_with(w, es)) return w + "es";
  return w + "s";
}

bool is_word(std::string_view t) {
  return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '-';
  });
}

std::string lower(std::string_view t) {
  std::string out(t);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Cursor over one sentence's tokens; every expectation failure is an ExtractionError.
class Reader {
 public:
  Reader(const Tokens& t, SentenceKind k, const NormalizedProblem* np) : t_(t), kind_(k), np_(np) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ExtractionError(std::string(kind_name(kind_)) + " sentence '" + join_tokens(t_) + "': " + what);
  }
  bool done() const { return i_ >= t_.size(); }
  const std::string& peek(std::size_t ahead = 0) const {
    static const std::string empty;
    return i_ + ahead < t_.size() ? t_[i_ + ahead] : empty;
  }
  bool accept(std::string_view tok) {
    if (peek() != tok) return false;
    ++i_;
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "' at token " + std::to_string(i_ + 1));
  }
  std::string agent() {
    if (!is_agent_placeholder(peek())) fail("expected an agent at token " + std::to_string(i_ + 1));
    return t_[i_++];
  }
  std::string word() {
    if (!is_word(peek()) || is_agent_placeholder(peek())) fail("expected a word at token " + std::to_string(i_ + 1));
    return t_[i_++];
  }
  std::string number() {
    const std::string& tok = peek();
    if (!is_number_placeholder(tok) && !is_numeric_token(tok))
      fail("expected a quantity at token " + std::to_string(i_ + 1));
    ++i_;
    try {
      if (np_) return np_->number_value(tok).str();
      if (auto d = Decimal::parse(tok)) return d->str();
    } catch (const Error& e) {
      fail(e.what());
    }
    fail("quantity '" + tok + "' has no known value");
  }
  // Object-type words up to (not including) any of the stop tokens.
  std::string type_phrase(std::initializer_list<std::string_view> stops) {
    std::vector<std::string> words;
    while (!done() && std::find(stops.begin(), stops.end(), peek()) == stops.end()) {
      if (!is_word(peek()) || is_agent_placeholder(peek())) fail("unexpected '" + peek() + "' in object type");
      words.push_back(lower(t_[i_++]));
    }
    if (words.empty()) fail("missing object type");
    return canonical_type(join_tokens(words));
  }
  void finish(std::string_view terminal) {
    expect(terminal);
    if (!done()) fail("trailing tokens after '" + std::string(terminal) + "'");
  }

 private:
  const Tokens& t_;
  SentenceKind kind_;
  const NormalizedProblem* np_;
  std::size_t i_ = 0;
};

const std::string kNow = "now";

}  // namespace

std::string canonical_type(std::string_view phrase) {
  Tokens words = tokenize(lower(phrase));
  if (words.empty()) return {};
  words.back() = singular_word(words.back());
  return join_tokens(words);
}

std::string plural_type(std::string_view canonical) {
  Tokens words = tokenize(canonical);
  if (words.empty()) return {};
  words.back() = plural_word(words.back());
  return join_tokens(words);
}

SlotMap extract(const Tokens& tokens, SentenceKind kind, const NormalizedProblem* np) {
  Reader r(tokens, kind, np);
  SlotMap m;
  m.kind = kind;
  switch (kind) {
    case SentenceKind::BT: {
      m.slots.emplace(slot::kAgent, r.agent());
      m.notes.emplace("verb", r.word());
      m.slots.emplace(slot::kValue, r.number());
      m.slots.emplace(slot::kType, r.type_phrase({"."}));
      r.finish(".");
      break;
    }
    case SentenceKind::AT: {
      m.slots.emplace(slot::kAgent, r.agent());
      if (r.accept(kNow)) m.notes.emplace("pre", kNow);
      m.notes.emplace("verb", r.word());
      m.slots.emplace(slot::kValue, r.number());
      m.slots.emplace(slot::kType, r.type_phrase({".", "now", "left", "in"}));
      if (r.accept("in")) {
        r.expect("total");
        m.notes.emplace("post", "in total");
      } else if (r.peek() == "now" || r.peek() == "left") {
        m.notes.emplace("post", r.word());
      }
      r.finish(".");
      break;
    }
    case SentenceKind::TR: {
      const std::string first = r.agent();
      m.notes.emplace("verb", r.word());
      m.slots.emplace(slot::kValue, r.number());
      m.slots.emplace(slot::kType, r.type_phrase({"to", "from"}));
      std::string marker = r.peek();
      if (!r.accept("to") && !r.accept("from")) r.fail("expected 'to' or 'from'");
      const std::string second = r.agent();
      m.notes.emplace("marker", marker);
      m.slots.emplace(slot::kFromAgent, marker == "to" ? first : second);
      m.slots.emplace(slot::kToAgent, marker == "to" ? second : first);
      r.finish(".");
      break;
    }
    case SentenceKind::QS: {
      r.expect("How");
      r.expect("many");
      m.slots.emplace(slot::kType, r.type_phrase({"does", "do"}));
      if (!r.accept("does") && !r.accept("do")) r.fail("expected 'does'");
      m.slots.emplace(slot::kAgent, r.agent());
      r.expect("have");
      if (r.accept("at")) {
        r.expect("first");
        m.notes.emplace("state", "at first");
      } else if (r.accept("in")) {
        r.expect("total");
        m.notes.emplace("state", "in total");
      } else if (r.peek() == "now" || r.peek() == "left") {
        m.notes.emplace("state", r.word());
      }
      r.finish("?");
      break;
    }
  }
  return m;
}

namespace {

using P = PropertyName;

PropertyName link_property(SentenceKind k) {
  switch (k) {
    case SentenceKind::BT: return P::hasBT;
    case SentenceKind::TR: return P::hasTRprop;
    case SentenceKind::AT: return P::hasAT;
    case SentenceKind::QS: return P::hasQS;
  }
  return P::hasBT;
}

void add_sentence(ABox& box, int index, const SlotMap& m, int& quantities) {
  const Individual s = sentence_individual(index);
  auto quantity = [&](PropertyName involves) {
    const Individual q = quantity_individual(++quantities);
    box.insert(class_assertion(q, ClassName::TCQuantity));
    box.insert(object_assertion(s, involves, q));
    box.insert(data_assertion(q, P::quantValue, m.value()));
    box.insert(data_assertion(q, P::quantType, m.at(slot::kType)));
    return q;
  };
  auto agent = [&](std::string_view label) {
    const Individual a(m.at(label));
    if (!agent_index(a)) throw ExtractionError("'" + a.local + "' is not an agent placeholder");
    box.insert(class_assertion(a, ClassName::Agent));
    return a;
  };
  switch (m.kind) {
    case SentenceKind::BT:
    case SentenceKind::AT: {
      const bool bt = m.kind == SentenceKind::BT;
      const Individual a = agent(slot::kAgent);
      box.insert(object_assertion(s, bt ? P::involvesAgentBT : P::involvesAgentAT, a));
      const Individual q = quantity(bt ? P::involvesBTQuantity : P::involvesATQuantity);
      box.insert(object_assertion(a, P::hasQuant, q));
      break;
    }
    case SentenceKind::TR: {
      box.insert(object_assertion(s, P::fromAgent, agent(slot::kFromAgent)));
      box.insert(object_assertion(s, P::toAgent, agent(slot::kToAgent)));
      quantity(P::involvesTRQuantity);
      break;
    }
    case SentenceKind::QS: {
      box.insert(object_assertion(word_problem_individual(), P::hasQuestion, s));
      box.insert(object_assertion(s, P::asksAbout, agent(slot::kAgent)));
      box.insert(data_assertion(s, P::asksObjType, m.at(slot::kType)));
      break;
    }
  }
}

}  // namespace

ABox populate_partial(const std::vector<SentenceKind>& kinds, const std::vector<std::optional<SlotMap>>& slots) {
  ABox box;
  const Individual wp = word_problem_individual();
  box.insert(class_assertion(wp, ClassName::WordProblem));
  int quantities = 0;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const int index = static_cast<int>(i) + 1;
    const Individual s = sentence_individual(index);
    box.insert(class_assertion(s, kind_class(kinds[i])));
    box.insert(object_assertion(wp, link_property(kinds[i]), s));
    if (i < slots.size() && slots[i]) add_sentence(box, index, *slots[i], quantities);
  }
  return box;
}

ABox populate(const std::vector<SlotMap>& sentences) {
  std::vector<SentenceKind> kinds;
  std::vector<std::optional<SlotMap>> slots;
  for (const SlotMap& m : sentences) {
    for (std::string_view label : slot_labels(m.kind)) m.at(label);
    kinds.push_back(m.kind);
    slots.emplace_back(m);
  }
  return populate_partial(kinds, slots);
}

std::vector<std::optional<SlotMap>> recover_slots(const ABox& box) {
  int n = 0;
  for (const Individual& x : box.individuals())
    if (auto k = sentence_index(x)) n = std::max(n, *k);
  std::vector<std::optional<SlotMap>> out(static_cast<std::size_t>(n));

  auto single_object = [&](const Individual& s, PropertyName p) -> std::optional<Individual> {
    const auto objs = box.objects(s, p);
    if (objs.size() != 1) return std::nullopt;
    return objs.front();
  };
  auto single_value = [&](const Individual& s, PropertyName p) -> std::optional<Literal> {
    const auto vals = box.values(s, p);
    if (vals.size() != 1) return std::nullopt;
    return vals.front();
  };

  for (int i = 1; i <= n; ++i) {
    const Individual s = sentence_individual(i);
    std::optional<SentenceKind> kind;
    for (SentenceKind k : kAllKinds)
      if (box.contains(class_assertion(s, kind_class(k)))) kind = kind ? std::nullopt : std::optional(k);
    if (!kind) continue;
    SlotMap m;
    m.kind = *kind;
    auto quantity = [&](PropertyName involves) {
      const auto q = single_object(s, involves);
      if (!q) return false;
      const auto v = single_value(*q, P::quantValue);
      const auto t = single_value(*q, P::quantType);
      if (!v || !t || !std::holds_alternative<Decimal>(*v) || !std::holds_alternative<std::string>(*t)) return false;
      m.slots.emplace(slot::kValue, std::get<Decimal>(*v).str());
      m.slots.emplace(slot::kType, std::get<std::string>(*t));
      return true;
    };
    auto agent = [&](std::string_view label, PropertyName p) {
      const auto a = single_object(s, p);
      if (!a) return false;
      m.slots.emplace(label, a->local);
      return true;
    };
    bool ok = false;
    switch (*kind) {
      case SentenceKind::BT: ok = agent(slot::kAgent, P::involvesAgentBT) && quantity(P::involvesBTQuantity); break;
      case SentenceKind::AT: ok = agent(slot::kAgent, P::involvesAgentAT) && quantity(P::involvesATQuantity); break;
      case SentenceKind::TR:
        ok = agent(slot::kFromAgent, P::fromAgent) && agent(slot::kToAgent, P::toAgent) &&
             quantity(P::involvesTRQuantity);
        break;
      case SentenceKind::QS: {
        const auto t = single_value(s, P::asksObjType);
        ok = agent(slot::kAgent, P::asksAbout) && t && std::holds_alternative<std::string>(*t);
        if (ok) m.slots.emplace(slot::kType, std::get<std::string>(*t));
        break;
      }
    }
    if (ok) out[static_cast<std::size_t>(i - 1)] = std::move(m);
  }
  return out;
}

Analysis analyze(const RawProblem& p, const NameLexicon& names, const KindLexicon& lexicon) {
  Analysis a;
  a.id = p.id;
  try {
    a.normalized = normalize(p, names);
  } catch (const Error& e) {
    a.stage = Analysis::Stage::NormalizationFailed;
    a.error = e.what();
    a.abox = populate_partial({}, {});
    return a;
  }
  try {
    a.kinds = classify_all(a.normalized.sentences, lexicon);
  } catch (const Error& e) {
    a.stage = Analysis::Stage::ClassificationFailed;
    a.error = e.what();
    a.abox = populate_partial({}, {});
    return a;
  }
  for (std::size_t i = 0; i < a.kinds.size(); ++i) {
    try {
      a.slots.emplace_back(extract(a.normalized.sentences[i], a.kinds[i], &a.normalized));
    } catch (const ExtractionError& e) {
      a.slots.emplace_back(std::nullopt);
      a.failed_sentences.push_back(i);
      if (a.error.empty()) a.error = e.what();
    }
  }
  if (!a.failed_sentences.empty()) a.stage = Analysis::Stage::ExtractionFailed;
  try {
    a.abox = populate_partial(a.kinds, a.slots);
  } catch (const DomainRangeViolation& e) {
    // A placeholder used in incompatible roles; keep only the sentence skeleton.
    a.stage = Analysis::Stage::ExtractionFailed;
    if (a.error.empty()) a.error = e.what();
    a.abox = populate_partial(a.kinds, {});
  }
  return a;
}

}  // namespace tcawp
