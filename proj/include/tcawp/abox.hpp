#pragma once

// In-memory assertion store (ABox) over the tc namespace, with pattern
// queries, sort-based domain/range enforcement and on-demand axiom closure.

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tcawp/decimal.hpp"
#include "tcawp/vocabulary.hpp"

namespace tcawp {

inline constexpr std::string_view kNamespacePrefix = "tc";
inline constexpr std::string_view kNamespaceIri = "http://example.org/tc#";
inline constexpr std::string_view kRdfTypeIri = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

// Individual identity is the local name; the namespace is always tc.
struct Individual {
  std::string local;

  Individual() = default;
  explicit Individual(std::string local_name);

  std::string qualified() const { return std::string(kNamespacePrefix) + ":" + local; }
  auto operator<=>(const Individual&) const = default;
};

Individual agent_individual(int index);     // Agent1..Agent3
Individual quantity_individual(int index);  // Q1, Q2, ...
Individual sentence_individual(int index);  // S1, S2, ...
Individual word_problem_individual();       // WP

// 1-based index parsed from "S7", "Q3", "Agent2"; nullopt for other names.
std::optional<int> sentence_index(const Individual& s);
std::optional<int> agent_index(const Individual& a);

using Literal = std::variant<std::string, Decimal>;
std::string literal_text(const Literal& l);

struct RdfType {
  auto operator<=>(const RdfType&) const = default;
};
using Predicate = std::variant<RdfType, PropertyName>;
using Term = std::variant<Individual, ClassName, Literal>;

enum class AssertionKind { Class, Object, Data };

// One triple. Built through the factories below; the store rejects
// ill-formed combinations (e.g. rdf:type with a literal object).
struct Assertion {
  Individual subject;
  Predicate predicate;
  Term object;

  AssertionKind kind() const;
  const Individual& object_individual() const { return std::get<Individual>(object); }
  const Literal& object_literal() const { return std::get<Literal>(object); }
  ClassName object_class() const { return std::get<ClassName>(object); }
  std::optional<PropertyName> property() const;

  // Ordering is lexicographic by subject, predicate and object text.
  std::strong_ordering operator<=>(const Assertion& o) const;
  bool operator==(const Assertion& o) const { return (*this <=> o) == 0; }
};

Assertion class_assertion(Individual x, ClassName c);
Assertion object_assertion(Individual s, PropertyName p, Individual o);
Assertion data_assertion(Individual s, PropertyName p, Literal value);

// ("tc:Agent1", "tc:hasQuant", "tc:Q1"); class assertions use "rdf:type";
// literals are bare text.
std::array<std::string, 3> to_strings(const Assertion& a);
Assertion from_strings(std::string_view s, std::string_view p, std::string_view o);
std::string to_string(const Assertion& a);

// Query pattern; unset components are wildcards.
struct Pattern {
  std::optional<Individual> subject;
  std::optional<Predicate> predicate;
  std::optional<Term> object;

  bool matches(const Assertion& a) const;
};

Pattern any();
Pattern with_property(PropertyName p);
Pattern with_subject(Individual s, std::optional<PropertyName> p = std::nullopt);

class ABox {
 public:
  // Idempotent. Throws DomainRangeViolation when the assertion would give an
  // individual two disjoint sorts, or ParseError-like DomainRangeViolation for
  // ill-formed literals (negative quantValue, wrong literal kind).
  ABox& insert(const Assertion& a);
  bool erase(const Assertion& a);
  bool contains(const Assertion& a) const { return assertions_.contains(a); }

  std::vector<Assertion> query(const Pattern& p) const;

  // Convenience projections over query().
  std::vector<Individual> objects(const Individual& s, PropertyName p) const;
  std::vector<Individual> subjects(PropertyName p, const Individual& o) const;
  std::vector<Literal> values(const Individual& s, PropertyName p) const;
  std::vector<Individual> instances(ClassName c) const;  // asserted or entailed

  // Membership under asserted facts, subsumption, property domain/range
  // typing and axioms A.01-A.06.
  bool member(const Individual& x, ClassName c) const;
  std::set<ClassName> classes_of(const Individual& x) const;

  std::set<Individual> individuals() const;
  std::size_t size() const { return assertions_.size(); }
  bool empty() const { return assertions_.empty(); }
  const std::set<Assertion>& assertions() const { return assertions_; }

  bool operator==(const ABox& o) const { return assertions_ == o.assertions_; }

 private:
  void check_sorts(const Assertion& a) const;
  std::vector<Sort> sort_evidence(const Individual& x) const;

  std::set<Assertion> assertions_;
  std::map<Individual, std::set<Assertion>> by_subject_;
  std::map<Individual, std::set<Assertion>> by_object_;
  std::map<Predicate, std::set<Assertion>> by_predicate_;
  std::map<ClassName, std::set<Individual>> by_class_;
};

ABox make_abox(const std::vector<Assertion>& assertions);

// N-Triples rendering with the tc prefix expanded.
std::string to_ntriples(const ABox& abox);

}  // namespace tcawp
