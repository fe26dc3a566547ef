#pragma once

// Order-k token chain over normalized problems, used as a deliberately
// imperfect generator whose output must pass through checking and repair.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcawp/corpus.hpp"
#include "tcawp/rng.hpp"

namespace tcawp {

inline constexpr std::string_view kChainStart = "<s>";
inline constexpr std::string_view kChainEnd = "?";
inline constexpr std::string_view kChainNumber = "NUM";
inline constexpr std::string_view kChainObject = "OBJ";

struct ChainModel {
  int order = 2;
  // Context of `order` tokens -> successor probabilities.
  std::map<Tokens, std::map<std::string, double>> table;

  std::set<std::string> vocabulary() const;
  nlohmann::ordered_json to_json() const;
  static ChainModel from_json(const nlohmann::ordered_json& j);  // throws ParseError
};

// Numbers become NUM and the object-type phrase of each sentence becomes OBJ,
// so the chain learns sentence structure rather than particular values.
Tokens chain_tokens(const NormalizedProblem& problem);

// Throws EmptyCorpus, InvalidSpec when k < 1.
ChainModel train_chain(const std::vector<NormalizedProblem>& corpus, int k);
ChainModel train_chain_tokens(const std::vector<Tokens>& sequences, int k);

// Stops after the end token or `max_tokens` tokens.
Tokens sample_chain(const ChainModel& model, std::uint64_t seed, std::size_t max_tokens = 120);

struct GroundingOptions {
  std::string type = "carrot";  // canonical object type
  int value_lo = 1;
  int value_hi = 99;
  bool bare_numbers = false;
};

// Fills NUM and OBJ: BT stocks drawn from the range, transfer amounts bounded
// by the source's known stock, AT values set to the running stock.
std::string ground_sample(const Tokens& sample, Rng& rng, const GroundingOptions& options);

}  // namespace tcawp
