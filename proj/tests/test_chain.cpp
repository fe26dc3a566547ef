#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tcawp/chain.hpp"
#include "tcawp/error.hpp"

using namespace tcawp;

namespace {

std::vector<NormalizedProblem> seed_corpus_regime(std::size_t sentences) {
  std::vector<NormalizedProblem> out;
  for (const RawProblem& p : load(std::string(TCAWP_DATA_DIR) + "/seed_corpus.jsonl")) {
    NormalizedProblem np = normalize(p);
    if (np.sentences.size() == sentences) out.push_back(std::move(np));
  }
  return out;
}

}  // namespace

TEST_CASE("a single training sequence is reproduced exactly") {
  const Tokens sentence = tokenize("Agent1 has number1 books . ?");
  for (int k : {1, 2, 3}) {
    const ChainModel m = train_chain_tokens({sentence}, k);
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) CHECK(sample_chain(m, seed) == sentence);
  }
}

TEST_CASE("transition probabilities match hand counts") {
  // a b ? / a c ? / a b ? with k = 1: after "a", b twice and c once.
  const ChainModel m = train_chain_tokens({tokenize("a b ?"), tokenize("a c ?"), tokenize("a b ?")}, 1);
  CHECK(m.table.at({"<s>"}).at("a") == 1.0);
  CHECK(m.table.at({"a"}).at("b") == doctest::Approx(2.0 / 3.0));
  CHECK(m.table.at({"a"}).at("c") == doctest::Approx(1.0 / 3.0));
  CHECK(m.table.at({"b"}).at("?") == 1.0);
  CHECK(m.table.size() == 4);
  CHECK(m.vocabulary() == std::set<std::string>{"a", "b", "c", "?"});
}

TEST_CASE("every row of a trained model sums to one") {
  for (std::size_t n : {3u, 4u, 5u}) {
    const ChainModel m = train_chain(seed_corpus_regime(n), 2);
    CHECK(m.vocabulary().contains("?"));
    for (const auto& [ctx, next] : m.table) {
      double sum = 0;
      for (const auto& [tok, p] : next) sum += p;
      CHECK(std::fabs(sum - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("training errors") {
  CHECK_THROWS_AS(train_chain({}, 2), EmptyCorpus);
  CHECK_THROWS_AS(train_chain_tokens({tokenize("a ?")}, 0), InvalidSpec);
}

TEST_CASE("sampling is reproducible and honours the token cap") {
  const ChainModel m = train_chain(seed_corpus_regime(4), 2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) CHECK(sample_chain(m, seed) == sample_chain(m, seed));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Tokens s = sample_chain(m, seed, 5);
    CHECK(s.size() <= 5);
  }
  const ChainModel loop = train_chain_tokens({tokenize("x x x x x x x x ?")}, 1);
  CHECK(sample_chain(loop, 3, 4).size() == 4);
}

TEST_CASE("samples open with an agent placeholder, as every corpus problem does") {
  std::set<std::string> openers;
  for (std::size_t n : {3u, 4u, 5u}) {
    const auto corpus = seed_corpus_regime(n);
    for (const NormalizedProblem& p : corpus) openers.insert(p.sentences.front().front());
    const ChainModel m = train_chain(corpus, 2);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Tokens s = sample_chain(m, seed);
      REQUIRE_FALSE(s.empty());
      CHECK(is_agent_placeholder(s.front()));
      CHECK(openers.contains(s.front()));
    }
  }
}

TEST_CASE("chain tokens abstract numbers and object phrases") {
  const NormalizedProblem np =
      normalize_text("Agent1 has 44.0 blue marbles . Agent1 gave 6 blue marbles to Agent2 . How many blue marbles does Agent1 have now ?");
  CHECK(join_tokens(chain_tokens(np)) ==
        "Agent1 has NUM OBJ . Agent1 gave NUM OBJ to Agent2 . How many OBJ does Agent1 have now ?");
}

TEST_CASE("model JSON round trip") {
  const ChainModel m = train_chain(seed_corpus_regime(3), 2);
  const ChainModel back = ChainModel::from_json(nlohmann::ordered_json::parse(m.to_json().dump()));
  CHECK(back.order == m.order);
  CHECK(back.table == m.table);
  auto bad = m.to_json();
  bad["version"] = 7;
  CHECK_THROWS_AS(ChainModel::from_json(bad), ParseError);
  CHECK_THROWS_AS(ChainModel::from_json(nlohmann::ordered_json::object()), ParseError);
}

TEST_CASE("grounding keeps transfers within the known stock") {
  const Tokens sample = tokenize("Agent1 has NUM OBJ . Agent2 has NUM OBJ . Agent1 gave NUM OBJ to Agent2 . How many OBJ does Agent2 have now ?");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    GroundingOptions g;
    g.type = "toy car";
    const std::string text = ground_sample(sample, rng, g);
    const Analysis a = testing::analyze_text(text);
    REQUIRE(a.stage == Analysis::Stage::Complete);
    CHECK(std::holds_alternative<Consistent>(check_consistency(a)));
    CHECK(text.find("toy cars") != std::string::npos);
  }
}
