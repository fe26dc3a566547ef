#include <doctest.h>

#include "tcawp/classifier.hpp"
#include "tcawp/error.hpp"
#include "tcawp/extractor.hpp"
#include "tcawp/realizer.hpp"

using namespace tcawp;
using P = PropertyName;

namespace {

const std::string kCarrot =
    "Stephen grew 72 carrots. Daniel grew 25 carrots. Stephen gave 13 carrots to Daniel. "
    "How many carrots does Daniel have now?";

Tokens toks(std::string_view s) { return tokenize(s); }

// Every sentence the realizer can emit for a small slot universe.
std::vector<SlotMap> grammar() {
  std::vector<SlotMap> out;
  const std::vector<std::string> agents{"Agent1", "Agent2", "Agent3"};
  const std::vector<std::string> types{"carrot", "blue marble", "candy", "box", "cookie", "toy car"};
  const std::vector<std::string> values{"0.0", "5.0", "13.5", "72.0"};
  for (const auto& a : agents)
    for (const auto& t : types) {
      for (const auto& v : values) {
        for (const char* verb : {"has", "had", "grew", "owns"}) {
          SlotMap m{SentenceKind::BT, {{"Agent", a}, {"Q-Value", v}, {"Q-Type", t}}, {{"verb", verb}}};
          out.push_back(m);
        }
        for (const char* post : {"", "left", "in total", "now"}) {
          SlotMap m{SentenceKind::AT, {{"Agent", a}, {"Q-Value", v}, {"Q-Type", t}}, {{"verb", "has"}}};
          if (*post) m.notes.emplace("post", post);
          else m.notes.emplace("pre", "now");
          out.push_back(m);
        }
        for (const auto& b : agents)
          for (const char* verb : {"gave", "donated", "transfers", "took"}) {
            const std::string marker = std::string(verb) == "took" ? "from" : "to";
            out.push_back(SlotMap{SentenceKind::TR,
                                  {{"From-Agent", a}, {"To-Agent", b}, {"Q-Value", v}, {"Q-Type", t}},
                                  {{"verb", verb}, {"marker", marker}}});
          }
      }
      for (const char* state : {"now", "left", "in total", "at first"})
        out.push_back(SlotMap{SentenceKind::QS, {{"Agent", a}, {"Q-Type", t}}, {{"state", state}}});
    }
  return out;
}

}  // namespace

TEST_CASE("featurize") {
  const auto fv = featurize(toks("Agent1 has number1 books ."), 0, 4);
  CHECK(fv.has_ngram("has"));
  CHECK(fv.has_ngram("Agent1 has"));
  CHECK(fv.has_ngram("has number1 books"));
  CHECK(fv.bag.at("Agent1") == 1);
  const auto single = featurize({"Hi"}, 0, 1);
  for (const auto& g : single.ngrams) CHECK(g.size() == 1);
}

TEST_CASE("classify examples") {
  auto kind = [](std::string_view s, std::size_t i, std::size_t n) { return classify(featurize(toks(s), i, n)); };
  CHECK(kind("How many carrots does Agent2 have now ?", 3, 4) == SentenceKind::QS);
  CHECK(kind("Agent1 now has 5 pens .", 2, 4) == SentenceKind::AT);
  CHECK(kind("Agent1 has 5 pens .", 0, 4) == SentenceKind::BT);
  CHECK(kind("Agent1 gave 13 carrots to Agent2 .", 2, 4) == SentenceKind::TR);
  CHECK(kind("Agent1 gave Agent2 gave 4 pens to Agent1 .", 1, 3) == SentenceKind::TR);
  CHECK(kind("Something else entirely .", 0, 3) == SentenceKind::BT);
  CHECK(kind("Something else entirely .", 2, 3) == SentenceKind::QS);
  CHECK_THROWS_AS(kind("Something else entirely .", 1, 3), Unclassifiable);
}

TEST_CASE("lexicon file format") {
  std::istringstream in("# c\n[transfer-verbs]\nhands\n[temporal-markers]\nby now\n[question-openers]\nHow\n");
  const auto lex = KindLexicon::parse(in);
  CHECK(lex.transfer_verbs == std::set<std::string>{"hands"});
  CHECK(classify(featurize(toks("Agent1 hands 3 pens to Agent2 ."), 1, 3), lex) == SentenceKind::TR);
  CHECK(classify(featurize(toks("Agent1 has 3 pens by now ."), 1, 3), lex) == SentenceKind::AT);
  std::istringstream bad("gave\n");
  CHECK_THROWS_AS(KindLexicon::parse(bad), ParseError);
  std::istringstream bad_section("[verbs]\n");
  CHECK_THROWS_AS(KindLexicon::parse(bad_section), ParseError);
}

TEST_CASE("grammar: features injective, classification total, extraction inverts realization") {
  const auto sentences = grammar();
  std::map<FeatureVector, Tokens> seen;
  for (const SlotMap& m : sentences) {
    for (NumberStyle style : {NumberStyle::Decimal, NumberStyle::Bare}) {
      const Tokens t = realize(m, style);
      CAPTURE(join_tokens(t));
      // Kinds sit where the problem shapes put them; BT/AT/TR also appear at index 0..2 of 4.
      const std::size_t index = m.kind == SentenceKind::QS ? 3 : (m.kind == SentenceKind::BT ? 0 : 2);
      const auto fv = featurize(t, index, 4);
      auto [it, fresh] = seen.emplace(fv, t);
      CHECK((fresh || it->second == t));
      CHECK(classify(fv) == m.kind);
      CHECK(classify(featurize(t, 1, 5)) == m.kind);
      CHECK(extract(t, m.kind) == m);
    }
  }
  CHECK(seen.size() > 1000);
}

TEST_CASE("type canonicalization") {
  CHECK(canonical_type("red balloons") == "red balloon");
  CHECK(canonical_type("Carrots") == "carrot");
  CHECK(canonical_type("candies") == "candy");
  CHECK(canonical_type("boxes") == "box");
  CHECK(canonical_type("glasses") == "glass");
  CHECK(canonical_type("cookies") == "cookie");
  CHECK(canonical_type("sheep") == "sheep");
  CHECK(canonical_type("red marble") != canonical_type("red balloons"));
  for (const char* t : {"carrot", "candy", "box", "peach", "cookie", "blue marble", "dollar", "glass", "toy car"}) {
    CHECK(canonical_type(plural_type(t)) == t);
    CHECK(canonical_type(t) == t);
  }
}

TEST_CASE("extract examples") {
  const auto np = normalize_text("Agent1 has 5 books. Agent1 gave 13 carrots to Agent2.");
  const auto bt = extract(np.sentences[0], SentenceKind::BT, &np);
  CHECK(bt.at("Agent") == "Agent1");
  CHECK(bt.at("Q-Value") == "5.0");
  CHECK(bt.at("Q-Type") == "book");
  const auto tr = extract(np.sentences[1], SentenceKind::TR, &np);
  CHECK(tr.at("From-Agent") == "Agent1");
  CHECK(tr.at("To-Agent") == "Agent2");
  CHECK(tr.value() == Decimal::from_int(13));
  CHECK(tr.at("Q-Type") == "carrot");

  const auto took = extract(toks("Agent1 took 3 pens from Agent2 ."), SentenceKind::TR);
  CHECK(took.at("From-Agent") == "Agent2");
  CHECK(took.at("To-Agent") == "Agent1");

  const auto qs = extract(toks("How many red balloons does Agent2 have now ?"), SentenceKind::QS);
  CHECK(qs.at("Q-Type") == "red balloon");
  CHECK(qs.notes.at("state") == "now");
  CHECK(qs.slots.size() == 2);

  CHECK_THROWS_AS(extract(toks("Agent1 gave Agent2 gave 4 pens to Agent1 ."), SentenceKind::TR), ExtractionError);
  CHECK_THROWS_AS(extract(toks("Agent1 has pens ."), SentenceKind::BT), ExtractionError);
  CHECK_THROWS_AS(extract(toks("Agent1 has 4 ."), SentenceKind::BT), ExtractionError);
  CHECK_THROWS_AS(extract(toks("Agent1 has 4 pens . extra"), SentenceKind::BT), ExtractionError);
  CHECK_THROWS_AS(extract(toks("How many pens does Agent1 have"), SentenceKind::QS), ExtractionError);
  CHECK_THROWS_AS(extract(toks("Agent1 has number7 pens ."), SentenceKind::BT, &np), ExtractionError);
}

TEST_CASE("populate the carrot problem") {
  const auto a = analyze(RawProblem{"c", kCarrot, std::nullopt, {}});
  REQUIRE(a.complete());
  CHECK(a.kinds == std::vector{SentenceKind::BT, SentenceKind::BT, SentenceKind::TR, SentenceKind::QS});

  const Individual wp("WP"), s1("S1"), s2("S2"), s3("S3"), s4("S4"), a1("Agent1"), a2("Agent2"), q1("Q1"),
      q2("Q2"), q3("Q3");
  const std::vector<Assertion> expected{
      class_assertion(wp, ClassName::WordProblem),
      class_assertion(s1, ClassName::BT), object_assertion(wp, P::hasBT, s1),
      class_assertion(a1, ClassName::Agent), class_assertion(q1, ClassName::TCQuantity),
      object_assertion(s1, P::involvesAgentBT, a1), object_assertion(s1, P::involvesBTQuantity, q1),
      object_assertion(a1, P::hasQuant, q1), data_assertion(q1, P::quantValue, Decimal::from_int(72)),
      data_assertion(q1, P::quantType, std::string("carrot")),
      class_assertion(s2, ClassName::BT), object_assertion(wp, P::hasBT, s2),
      class_assertion(a2, ClassName::Agent), class_assertion(q2, ClassName::TCQuantity),
      object_assertion(s2, P::involvesAgentBT, a2), object_assertion(s2, P::involvesBTQuantity, q2),
      object_assertion(a2, P::hasQuant, q2), data_assertion(q2, P::quantValue, Decimal::from_int(25)),
      data_assertion(q2, P::quantType, std::string("carrot")),
      class_assertion(s3, ClassName::TR), object_assertion(wp, P::hasTRprop, s3),
      object_assertion(s3, P::fromAgent, a1), object_assertion(s3, P::toAgent, a2),
      class_assertion(q3, ClassName::TCQuantity), object_assertion(s3, P::involvesTRQuantity, q3),
      data_assertion(q3, P::quantValue, Decimal::from_int(13)), data_assertion(q3, P::quantType, std::string("carrot")),
      class_assertion(s4, ClassName::QS), object_assertion(wp, P::hasQS, s4), object_assertion(wp, P::hasQuestion, s4),
      object_assertion(s4, P::asksAbout, a2), data_assertion(s4, P::asksObjType, std::string("carrot")),
  };
  CHECK(a.abox == make_abox(expected));
  const auto from = a.abox.query(with_property(P::fromAgent));
  REQUIRE(from.size() == 1);
  CHECK(from[0] == object_assertion(s3, P::fromAgent, a1));
  CHECK(a.abox.member(a1, ClassName::Agent));
  CHECK(a.abox.member(q1, ClassName::PositiveQuantity));

  const auto back = recover_slots(a.abox);
  REQUIRE(back.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(back[i]);
    CHECK(back[i]->slots == a.slots[i]->slots);
  }
}

TEST_CASE("populate edge cases") {
  const ABox empty = populate({});
  CHECK(empty.size() == 1);
  CHECK(empty.contains(class_assertion(word_problem_individual(), ClassName::WordProblem)));

  const auto row1 = analyze(RawProblem{
      "r1", "Agent1 had 74 dollars. Agent1 donated 6 dollars to Agent2. How many dollars does Agent1 have now ?",
      std::nullopt, {}});
  REQUIRE(row1.complete());
  int sentences = 0;
  for (const Individual& x : row1.abox.individuals()) sentences += sentence_index(x).has_value();
  CHECK(sentences == 3);

  const auto row3 = analyze(RawProblem{
      "r3", "Agent1 has 9 pens. Agent1 gave Agent2 gave 4 pens to Agent1. How many pens does Agent1 have now ?",
      std::nullopt, {}});
  CHECK(row3.stage == Analysis::Stage::ExtractionFailed);
  CHECK(row3.failed_sentences == std::vector<std::size_t>{1});
  CHECK(row3.abox.contains(class_assertion(sentence_individual(2), ClassName::TR)));
  CHECK(row3.abox.objects(sentence_individual(2), P::fromAgent).empty());
  CHECK_FALSE(recover_slots(row3.abox)[1].has_value());

  SlotMap incomplete{SentenceKind::BT, {{"Agent", "Agent1"}, {"Q-Value", "4.0"}}, {}};
  CHECK_THROWS_AS(populate({incomplete}), ExtractionError);

  const auto pron = analyze(RawProblem{"x", "He has 4 pens.", std::nullopt, {}});
  CHECK(pron.stage == Analysis::Stage::NormalizationFailed);
}

TEST_CASE("realizer renders placeholders and names") {
  const SlotMap bt{SentenceKind::BT, {{"Agent", "Agent3"}, {"Q-Value", "40.0"}, {"Q-Type", "carrot"}}, {}};
  CHECK(join_tokens(realize(bt)) == "Agent3 has 40.0 carrots .");
  CHECK(join_tokens(realize(bt, NumberStyle::Bare)) == "Agent3 has 40 carrots .");
  const SlotMap tr{SentenceKind::TR,
                   {{"From-Agent", "Agent3"}, {"To-Agent", "Agent2"}, {"Q-Value", "7.0"}, {"Q-Type", "carrot"}},
                   {}};
  CHECK(join_tokens(realize(tr)) == "Agent3 gave 7.0 carrots to Agent2 .");
  CHECK(join_tokens(with_names(realize(tr), {{3, "Elena"}})) == "Elena gave 7.0 carrots to Agent2 .");
  CHECK(render_number(Decimal::from_tenths(75), NumberStyle::Bare) == "7.5");
}
