#include "tcawp/abox.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <tuple>

#include "tcawp/error.hpp"

namespace tcawp {
namespace {

std::string predicate_text(const Predicate& p) {
  if (std::holds_alternative<RdfType>(p)) return "rdf:type";
  return "tc:" + std::string(info(std::get<PropertyName>(p)).local_name);
}

// (kind rank, text): individuals and classes are prefixed, literals bare.
std::pair<int, std::string> object_key(const Term& t) {
  if (const auto* i = std::get_if<Individual>(&t)) return {0, i->qualified()};
  if (const auto* c = std::get_if<ClassName>(&t)) return {1, "tc:" + std::string(local_name(*c))};
  const auto& l = std::get<Literal>(t);
  return {std::holds_alternative<Decimal>(l) ? 2 : 3, literal_text(l)};
}

std::optional<int> numbered(const Individual& x, std::string_view prefix) {
  const std::string& s = x.local;
  if (s.size() <= prefix.size() || s.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  int value = 0;
  for (std::size_t i = prefix.size(); i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    value = value * 10 + (s[i] - '0');
    if (value > 1'000'000) return std::nullopt;
  }
  return value;
}

// Naming convention fixes the sort of generated individuals even before any
// class assertion mentions them.
enum class NameSort { None, WordProblem, Sentence, Agent, Quantity };

NameSort name_sort(const Individual& x) {
  if (numbered(x, "Agent")) return NameSort::Agent;
  if (numbered(x, "Q")) return NameSort::Quantity;
  if (numbered(x, "S")) return NameSort::Sentence;
  if (x.local == "WP" || numbered(x, "WP")) return NameSort::WordProblem;
  return NameSort::None;
}

bool is_sentence_sort(Sort s) {
  return s == Sort::BT || s == Sort::TR || s == Sort::AT || s == Sort::QS;
}

void add_closure(std::set<ClassName>& out, ClassName c) {
  for (const ClassName sup : superclasses(c)) out.insert(sup);
}

}  // namespace

Individual::Individual(std::string local_name) : local(std::move(local_name)) {
  if (local.empty()) throw ParseError("individual local-name must be non-empty");
}

Individual agent_individual(int index) { return Individual("Agent" + std::to_string(index)); }
Individual quantity_individual(int index) { return Individual("Q" + std::to_string(index)); }
Individual sentence_individual(int index) { return Individual("S" + std::to_string(index)); }
Individual word_problem_individual() { return Individual("WP"); }

std::optional<int> sentence_index(const Individual& s) { return numbered(s, "S"); }
std::optional<int> agent_index(const Individual& a) { return numbered(a, "Agent"); }

std::string literal_text(const Literal& l) {
  if (const auto* d = std::get_if<Decimal>(&l)) return d->str();
  return std::get<std::string>(l);
}

AssertionKind Assertion::kind() const {
  if (std::holds_alternative<RdfType>(predicate)) return AssertionKind::Class;
  return std::holds_alternative<Literal>(object) ? AssertionKind::Data : AssertionKind::Object;
}

std::optional<PropertyName> Assertion::property() const {
  if (const auto* p = std::get_if<PropertyName>(&predicate)) return *p;
  return std::nullopt;
}

std::strong_ordering Assertion::operator<=>(const Assertion& o) const {
  if (auto c = subject.local <=> o.subject.local; c != 0) return c;
  if (auto c = predicate_text(predicate) <=> predicate_text(o.predicate); c != 0) return c;
  return object_key(object) <=> object_key(o.object);
}

Assertion class_assertion(Individual x, ClassName c) { return {std::move(x), RdfType{}, c}; }
Assertion object_assertion(Individual s, PropertyName p, Individual o) {
  return {std::move(s), p, std::move(o)};
}
Assertion data_assertion(Individual s, PropertyName p, Literal value) {
  return {std::move(s), p, std::move(value)};
}

std::array<std::string, 3> to_strings(const Assertion& a) {
  std::string o;
  if (const auto* i = std::get_if<Individual>(&a.object)) o = i->qualified();
  else if (const auto* c = std::get_if<ClassName>(&a.object)) o = "tc:" + std::string(local_name(*c));
  else o = literal_text(std::get<Literal>(a.object));
  return {a.subject.qualified(), predicate_text(a.predicate), o};
}

std::string to_string(const Assertion& a) {
  const auto [s, p, o] = to_strings(a);
  return "<" + s + " " + p + " " + o + ">";
}

namespace {
std::string strip_prefix(std::string_view text, std::string_view what) {
  const std::string prefix = std::string(kNamespacePrefix) + ":";
  if (text.substr(0, prefix.size()) != prefix)
    throw ParseError(std::string(what) + " must carry the tc: prefix: '" + std::string(text) + "'");
  return std::string(text.substr(prefix.size()));
}
}  // namespace

Assertion from_strings(std::string_view s, std::string_view p, std::string_view o) {
  Individual subject(strip_prefix(s, "subject"));
  if (p == "rdf:type") {
    const auto cls = class_from_name(strip_prefix(o, "class"));
    if (!cls) throw ParseError("unknown class '" + std::string(o) + "'");
    return class_assertion(std::move(subject), *cls);
  }
  const auto prop = property_from_name(strip_prefix(p, "property"));
  if (!prop) throw ParseError("unknown property '" + std::string(p) + "'");
  const PropertyInfo& pi = info(*prop);
  if (pi.kind == PropertyKind::Object)
    return object_assertion(std::move(subject), *prop, Individual(strip_prefix(o, "object")));
  if (pi.range_literal == LiteralKind::Decimal)
    return data_assertion(std::move(subject), *prop, Decimal::parse_or_throw(o));
  return data_assertion(std::move(subject), *prop, std::string(o));
}

bool Pattern::matches(const Assertion& a) const {
  if (subject && *subject != a.subject) return false;
  if (predicate && *predicate != a.predicate) return false;
  if (object && object_key(*object) != object_key(a.object)) return false;
  return true;
}

Pattern any() { return {}; }
Pattern with_property(PropertyName p) { return Pattern{std::nullopt, p, std::nullopt}; }
Pattern with_subject(Individual s, std::optional<PropertyName> p) {
  Pattern pat;
  pat.subject = std::move(s);
  if (p) pat.predicate = *p;
  return pat;
}

std::vector<Sort> ABox::sort_evidence(const Individual& x) const {
  std::vector<Sort> out;
  if (auto it = by_subject_.find(x); it != by_subject_.end()) {
    for (const Assertion& a : it->second) {
      if (a.kind() == AssertionKind::Class) out.push_back(sort_of(a.object_class()));
      else out.push_back(sort_of(info(*a.property()).domain));
    }
  }
  if (auto it = by_object_.find(x); it != by_object_.end()) {
    for (const Assertion& a : it->second) out.push_back(sort_of(*info(*a.property()).range_class));
  }
  return out;
}

void ABox::check_sorts(const Assertion& a) const {
  auto check = [&](const Individual& x, Sort incoming) {
    const bool named_ok = [&] {
      switch (name_sort(x)) {
        case NameSort::None: return true;
        case NameSort::WordProblem: return incoming == Sort::WordProblem;
        case NameSort::Agent: return incoming == Sort::Agent;
        case NameSort::Quantity: return incoming == Sort::Quantity;
        case NameSort::Sentence: return is_sentence_sort(incoming);
      }
      return false;
    }();
    const std::vector<Sort> ev = sort_evidence(x);
    const bool agrees = std::all_of(ev.begin(), ev.end(), [&](Sort s) { return s == incoming; });
    if (!named_ok || !agrees)
      throw DomainRangeViolation(to_string(a) + " gives " + x.qualified() + " a disjoint sort");
  };

  switch (a.kind()) {
    case AssertionKind::Class:
      check(a.subject, sort_of(a.object_class()));
      break;
    case AssertionKind::Object: {
      const PropertyInfo& pi = info(*a.property());
      if (pi.kind != PropertyKind::Object)
        throw DomainRangeViolation(to_string(a) + ": data property used with an individual object");
      check(a.subject, sort_of(pi.domain));
      check(a.object_individual(), sort_of(*pi.range_class));
      if (a.subject == a.object_individual() && sort_of(pi.domain) != sort_of(*pi.range_class))
        throw DomainRangeViolation(to_string(a) + " relates an individual to itself across sorts");
      break;
    }
    case AssertionKind::Data: {
      const PropertyInfo& pi = info(*a.property());
      if (pi.kind != PropertyKind::Data)
        throw DomainRangeViolation(to_string(a) + ": object property used with a literal");
      const Literal& l = a.object_literal();
      const bool is_decimal = std::holds_alternative<Decimal>(l);
      if (is_decimal != (pi.range_literal == LiteralKind::Decimal))
        throw DomainRangeViolation(to_string(a) + ": literal kind does not match the property range");
      if (is_decimal && std::get<Decimal>(l) < Decimal{})
        throw DomainRangeViolation(to_string(a) + ": quantities are non-negative");
      check(a.subject, sort_of(pi.domain));
      break;
    }
  }
}

ABox& ABox::insert(const Assertion& a) {
  if (a.kind() == AssertionKind::Class && std::holds_alternative<Literal>(a.object))
    throw DomainRangeViolation("rdf:type needs a class object");
  if (assertions_.contains(a)) return *this;
  check_sorts(a);
  assertions_.insert(a);
  by_subject_[a.subject].insert(a);
  by_predicate_[a.predicate].insert(a);
  if (a.kind() == AssertionKind::Object) by_object_[a.object_individual()].insert(a);
  if (a.kind() == AssertionKind::Class) by_class_[a.object_class()].insert(a.subject);
  return *this;
}

bool ABox::erase(const Assertion& a) {
  if (!assertions_.erase(a)) return false;
  auto drop = [&](auto& index, const auto& key) {
    auto it = index.find(key);
    it->second.erase(a);
    if (it->second.empty()) index.erase(it);
  };
  drop(by_subject_, a.subject);
  drop(by_predicate_, a.predicate);
  if (a.kind() == AssertionKind::Object) drop(by_object_, a.object_individual());
  if (a.kind() == AssertionKind::Class) {
    auto it = by_class_.find(a.object_class());
    it->second.erase(a.subject);
    if (it->second.empty()) by_class_.erase(it);
  }
  return true;
}

std::vector<Assertion> ABox::query(const Pattern& p) const {
  const std::set<Assertion>* source = &assertions_;
  static const std::set<Assertion> kEmpty;
  if (p.subject) {
    auto it = by_subject_.find(*p.subject);
    source = it == by_subject_.end() ? &kEmpty : &it->second;
  } else if (p.object && std::holds_alternative<Individual>(*p.object)) {
    auto it = by_object_.find(std::get<Individual>(*p.object));
    source = it == by_object_.end() ? &kEmpty : &it->second;
  } else if (p.predicate) {
    auto it = by_predicate_.find(*p.predicate);
    source = it == by_predicate_.end() ? &kEmpty : &it->second;
  }
  std::vector<Assertion> out;
  for (const Assertion& a : *source)
    if (p.matches(a)) out.push_back(a);
  return out;
}

std::vector<Individual> ABox::objects(const Individual& s, PropertyName p) const {
  std::vector<Individual> out;
  for (const Assertion& a : query(with_subject(s, p)))
    if (a.kind() == AssertionKind::Object) out.push_back(a.object_individual());
  return out;
}

std::vector<Individual> ABox::subjects(PropertyName p, const Individual& o) const {
  std::vector<Individual> out;
  for (const Assertion& a : query(Pattern{std::nullopt, p, Term{o}})) out.push_back(a.subject);
  return out;
}

std::vector<Literal> ABox::values(const Individual& s, PropertyName p) const {
  std::vector<Literal> out;
  for (const Assertion& a : query(with_subject(s, p)))
    if (a.kind() == AssertionKind::Data) out.push_back(a.object_literal());
  return out;
}

std::set<ClassName> ABox::classes_of(const Individual& x) const {
  std::set<ClassName> out;
  bool mentioned = false;
  if (auto it = by_subject_.find(x); it != by_subject_.end()) {
    mentioned = true;
    for (const Assertion& a : it->second) {
      if (a.kind() == AssertionKind::Class) add_closure(out, a.object_class());
      // domain typing; for hasQuant this is A.01 (owners of a TC quantity are agents)
      else add_closure(out, info(*a.property()).domain);
    }
  }
  if (auto it = by_object_.find(x); it != by_object_.end()) {
    mentioned = true;
    for (const Assertion& a : it->second) add_closure(out, *info(*a.property()).range_class);
  }
  if (!mentioned) return out;

  // A.02-A.04 are covered by add_closure. A.05 and A.06 define Minuend and
  // Subtrahend quantities by their ownership edges.
  if (out.contains(ClassName::TCQuantity)) {
    auto has_edge = [&](PropertyName p) { return !objects(x, p).empty(); };
    if (has_edge(PropertyName::isOwnedBy)) add_closure(out, ClassName::MinuendQuantity);
    if (has_edge(PropertyName::isGainedBy) && has_edge(PropertyName::isLostBy))
      add_closure(out, ClassName::SubtrahendQuantity);
  }
  return out;
}

bool ABox::member(const Individual& x, ClassName c) const { return classes_of(x).contains(c); }

std::set<Individual> ABox::individuals() const {
  std::set<Individual> out;
  for (const auto& [s, _] : by_subject_) out.insert(s);
  for (const auto& [o, _] : by_object_) out.insert(o);
  return out;
}

std::vector<Individual> ABox::instances(ClassName c) const {
  std::vector<Individual> out;
  for (const Individual& x : individuals())
    if (member(x, c)) out.push_back(x);
  return out;
}

ABox make_abox(const std::vector<Assertion>& assertions) {
  ABox box;
  for (const Assertion& a : assertions) box.insert(a);
  return box;
}

namespace {
std::string iri(std::string_view local) { return "<" + std::string(kNamespaceIri) + std::string(local) + ">"; }

std::string escape_literal(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}
}  // namespace

std::string to_ntriples(const ABox& abox) {
  std::ostringstream os;
  for (const Assertion& a : abox.assertions()) {
    os << iri(a.subject.local) << ' ';
    if (const auto* p = std::get_if<PropertyName>(&a.predicate)) os << iri(info(*p).local_name);
    else os << '<' << kRdfTypeIri << '>';
    os << ' ';
    if (const auto* i = std::get_if<Individual>(&a.object)) {
      os << iri(i->local);
    } else if (const auto* c = std::get_if<ClassName>(&a.object)) {
      os << iri(local_name(*c));
    } else {
      const Literal& l = std::get<Literal>(a.object);
      os << '"' << escape_literal(literal_text(l)) << '"';
      if (std::holds_alternative<Decimal>(l)) os << "^^<http://www.w3.org/2001/XMLSchema#decimal>";
    }
    os << " .\n";
  }
  return os.str();
}

}  // namespace tcawp
