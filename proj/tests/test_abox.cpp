#include <algorithm>

#include "doctest.h"
#include "tcawp/abox.hpp"
#include "tcawp/error.hpp"
#include "tcawp/rng.hpp"

using namespace tcawp;

namespace {
const Individual A1 = agent_individual(1);
const Individual A2 = agent_individual(2);
const Individual Q1 = quantity_individual(1);
const Individual Q2 = quantity_individual(2);
}  // namespace

TEST_CASE("property table is indexed by enum value") {
  for (std::size_t i = 0; i < all_properties().size(); ++i)
    CHECK(static_cast<std::size_t>(all_properties()[i].name) == i);
  for (const ClassName c : kAllClasses) CHECK(class_from_name(local_name(c)) == c);
  CHECK(info(PropertyName::involvesTRQuantity).local_name == "involvesTR-Quantity");
  CHECK(info(PropertyName::involvesTRQuantity).domain == ClassName::TR);
  CHECK(info(PropertyName::involvesAgentBT).domain == ClassName::BT);
  CHECK(info(PropertyName::involvesAgentAT).domain == ClassName::AT);
}

TEST_CASE("the involvesSentence and involvesAgent splits are pairwise disjoint") {
  using P = PropertyName;
  const P sentence_split[] = {P::hasBT, P::hasAT, P::hasTRprop, P::hasQS};
  const P agent_split[] = {P::involvesAgentBT, P::involvesAgentTR, P::involvesAgentAT};
  for (const P a : sentence_split)
    for (const P b : sentence_split)
      if (a != b) CHECK(sort_of(*info(a).range_class) != sort_of(*info(b).range_class));
  for (const P a : agent_split)
    for (const P b : agent_split)
      if (a != b) CHECK(sort_of(info(a).domain) != sort_of(info(b).domain));
}

TEST_CASE("insert") {
  ABox box;
  box.insert(object_assertion(A1, PropertyName::hasQuant, Q1));
  CHECK(box.size() == 1);

  SUBCASE("set idempotence") {
    box.insert(object_assertion(A1, PropertyName::hasQuant, Q1));
    CHECK(box.size() == 1);
  }
  SUBCASE("reversed hasQuant violates the domain") {
    ABox empty;
    CHECK_THROWS_AS(empty.insert(object_assertion(Q1, PropertyName::hasQuant, A1)), DomainRangeViolation);
    CHECK(empty.empty());
  }
  SUBCASE("negative quantities are rejected") {
    CHECK_THROWS_AS(box.insert(data_assertion(Q1, PropertyName::quantValue, Decimal::from_tenths(-10))),
                    DomainRangeViolation);
  }
  SUBCASE("literal kind must match the range") {
    CHECK_THROWS_AS(box.insert(data_assertion(Q1, PropertyName::quantValue, std::string("five"))),
                    DomainRangeViolation);
  }
  SUBCASE("sentence kinds are disjoint") {
    const Individual s = sentence_individual(3);
    box.insert(class_assertion(s, ClassName::TR));
    CHECK_THROWS_AS(box.insert(object_assertion(s, PropertyName::involvesAgentBT, A1)), DomainRangeViolation);
    box.insert(object_assertion(s, PropertyName::fromAgent, A1));
  }
  SUBCASE("unnamed individuals are typed by first use") {
    const Individual x("mystery");
    box.insert(object_assertion(x, PropertyName::hasQuant, Q2));
    CHECK(box.member(x, ClassName::Agent));
    CHECK_THROWS_AS(box.insert(class_assertion(x, ClassName::TCQuantity)), DomainRangeViolation);
  }
}

TEST_CASE("query") {
  ABox box;
  CHECK(box.query(any()).empty());

  box.insert(object_assertion(A2, PropertyName::hasQuant, Q2));
  box.insert(object_assertion(A1, PropertyName::hasQuant, Q1));
  box.insert(data_assertion(Q1, PropertyName::quantValue, Decimal::from_int(5)));
  box.insert(data_assertion(Q1, PropertyName::quantType, std::string("book")));

  const auto owners = box.query(with_property(PropertyName::hasQuant));
  REQUIRE(owners.size() == 2);
  CHECK(owners[0].subject == A1);  // deterministic lexicographic order
  CHECK(owners[1].subject == A2);

  const auto v = box.values(Q1, PropertyName::quantValue);
  REQUIRE(v.size() == 1);
  CHECK(literal_text(v[0]) == "5.0");

  CHECK(box.query(with_subject(Q1)).size() == 2);
  CHECK(box.subjects(PropertyName::hasQuant, Q2) == std::vector{A2});
}

TEST_CASE("member under axioms") {
  ABox box;
  SUBCASE("A.01: owners of a TC quantity are agents") {
    box.insert(object_assertion(A1, PropertyName::hasQuant, Q1));
    CHECK(box.member(A1, ClassName::Agent));
    CHECK(box.member(Q1, ClassName::TCQuantity));
  }
  SUBCASE("A.02: TC quantities are positive quantities") {
    box.insert(class_assertion(Q1, ClassName::TCQuantity));
    CHECK(box.member(Q1, ClassName::PositiveQuantity));
    CHECK_FALSE(box.member(Q1, ClassName::MinuendQuantity));
  }
  SUBCASE("A.03/A.05: owned quantities are minuends") {
    box.insert(class_assertion(Q1, ClassName::TCQuantity));
    box.insert(object_assertion(Q1, PropertyName::isOwnedBy, A1));
    CHECK(box.member(Q1, ClassName::MinuendQuantity));
    CHECK(box.member(A1, ClassName::Agent));
  }
  SUBCASE("A.06 needs both gain and loss") {
    box.insert(object_assertion(Q1, PropertyName::isGainedBy, A2));
    CHECK_FALSE(box.member(Q1, ClassName::SubtrahendQuantity));
    box.insert(object_assertion(Q1, PropertyName::isLostBy, A1));
    CHECK(box.member(Q1, ClassName::SubtrahendQuantity));
    CHECK(box.member(Q1, ClassName::PositiveQuantity));
  }
  SUBCASE("absent individuals belong to nothing") {
    CHECK_FALSE(box.member(Individual("Agent9"), ClassName::Agent));
  }
}

TEST_CASE("triple strings and N-Triples") {
  const Assertion a = data_assertion(Q1, PropertyName::quantValue, Decimal::from_int(5));
  const auto s = to_strings(a);
  CHECK(s[0] == "tc:Q1");
  CHECK(s[1] == "tc:quantValue");
  CHECK(s[2] == "5.0");
  CHECK(from_strings(s[0], s[1], s[2]) == a);
  CHECK(from_strings("tc:Q1", "rdf:type", "tc:TC-Quantity") == class_assertion(Q1, ClassName::TCQuantity));
  CHECK_THROWS_AS(from_strings("Q1", "rdf:type", "tc:Agent"), ParseError);

  ABox box;
  box.insert(object_assertion(A1, PropertyName::hasQuant, Q1));
  box.insert(a);
  CHECK(to_ntriples(box) ==
        "<http://example.org/tc#Agent1> <http://example.org/tc#hasQuant> <http://example.org/tc#Q1> .\n"
        "<http://example.org/tc#Q1> <http://example.org/tc#quantValue> "
        "\"5.0\"^^<http://www.w3.org/2001/XMLSchema#decimal> .\n");
}

namespace {
// Random assertions over a small pool of individuals, including names whose
// convention conflicts with most properties.
Assertion random_assertion(Rng& rng) {
  static const std::vector<Individual> pool = {
      A1, A2, Q1, Q2, sentence_individual(1), sentence_individual(2), word_problem_individual(),
      Individual("x"), Individual("y")};
  const Individual& s = rng.pick<Individual>(pool);
  switch (rng.uniform_int(0, 2)) {
    case 0:
      return class_assertion(s, kAllClasses[rng.uniform_int(0, kAllClasses.size() - 1)]);
    case 1: {
      const auto& p = all_properties()[rng.uniform_int(0, 20)];
      return object_assertion(s, p.name, rng.pick<Individual>(pool));
    }
    default: {
      const auto& p = all_properties()[rng.uniform_int(21, 24)];
      if (p.range_literal == LiteralKind::Decimal)
        return data_assertion(s, p.name, Decimal::from_int(rng.uniform_int(0, 9)));
      return data_assertion(s, p.name, std::string("carrot"));
    }
  }
}

bool sort_compatible(const ABox& box, const Individual& x, ClassName c) {
  for (const ClassName other : box.classes_of(x))
    if (sort_of(other) != sort_of(c)) return false;
  return true;
}
}  // namespace

TEST_CASE("property: stored object assertions always satisfy domain and range") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    ABox box;
    for (int i = 0; i < 60; ++i) {
      const Assertion a = random_assertion(rng);
      const ABox before = box;
      try {
        box.insert(a);
        // round trip: the exact pattern retrieves it
        const auto hits = box.query(Pattern{a.subject, a.predicate, a.object});
        REQUIRE(hits.size() == 1);
        CHECK(hits[0] == a);
      } catch (const DomainRangeViolation&) {
        CHECK(box == before);
      }
      // monotone closure: nothing that held before stops holding
      for (const Individual& x : before.individuals())
        for (const ClassName c : before.classes_of(x)) CHECK(box.member(x, c));
    }
    for (const Assertion& a : box.assertions()) {
      if (a.kind() != AssertionKind::Object) continue;
      const PropertyInfo& pi = info(*a.property());
      CHECK(box.member(a.subject, pi.domain));
      CHECK(box.member(a.object_individual(), *pi.range_class));
      CHECK(sort_compatible(box, a.subject, pi.domain));
      CHECK(sort_compatible(box, a.object_individual(), *pi.range_class));
    }
  }
}
