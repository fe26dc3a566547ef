#include "tcawp/chain.hpp"

#include "tcawp/classifier.hpp"
#include "tcawp/error.hpp"
#include "tcawp/extractor.hpp"

namespace tcawp {

std::set<std::string> ChainModel::vocabulary() const {
  std::set<std::string> v;
  for (const auto& [ctx, next] : table) {
    v.insert(ctx.begin(), ctx.end());
    for (const auto& [tok, p] : next) v.insert(tok);
  }
  v.erase(std::string(kChainStart));
  return v;
}

nlohmann::ordered_json ChainModel::to_json() const {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [ctx, next] : table) {
    nlohmann::ordered_json succ = nlohmann::ordered_json::object();
    for (const auto& [tok, p] : next) succ[tok] = p;
    rows.push_back({{"context", ctx}, {"next", succ}});
  }
  return {{"version", 1}, {"order", order}, {"table", rows}};
}

ChainModel ChainModel::from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.at("version").get<int>() != 1) throw ParseError("unsupported chain model version");
    ChainModel m;
    m.order = j.at("order").get<int>();
    for (const auto& row : j.at("table")) {
      auto& next = m.table[row.at("context").get<Tokens>()];
      for (const auto& [tok, p] : row.at("next").items()) next[tok] = p.get<double>();
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed chain model: ") + e.what());
  }
}

Tokens chain_tokens(const NormalizedProblem& problem) {
  Tokens out;
  for (std::size_t i = 0; i < problem.sentences.size(); ++i) {
    Tokens s = problem.sentences[i];
    // Find the object-type phrase through the extractor; sentences outside the
    // grammar keep their words.
    std::optional<std::string> type;
    try {
      const auto kind = classify(featurize(s, i, problem.sentences.size()));
      type = extract(s, kind, &problem).at(slot::kType);
    } catch (const Error&) {
    }
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (is_number_placeholder(s[t]) || is_numeric_token(s[t])) {
        out.emplace_back(kChainNumber);
        continue;
      }
      if (type) {
        // Longest run starting here whose canonical form is the type.
        bool replaced = false;
        for (std::size_t len = std::min<std::size_t>(4, s.size() - t); len >= 1 && !replaced; --len) {
          const Tokens run(s.begin() + static_cast<std::ptrdiff_t>(t), s.begin() + static_cast<std::ptrdiff_t>(t + len));
          if (canonical_type(join_tokens(run)) == *type) {
            out.emplace_back(kChainObject);
            t += len - 1;
            replaced = true;
          }
        }
        if (replaced) continue;
      }
      out.push_back(s[t]);
    }
  }
  if (out.empty() || out.back() != kChainEnd) out.emplace_back(kChainEnd);
  return out;
}

ChainModel train_chain_tokens(const std::vector<Tokens>& sequences, int k) {
  if (k < 1) throw InvalidSpec("chain order must be at least 1");
  if (sequences.empty()) throw EmptyCorpus("no training sequences");
  std::map<Tokens, std::map<std::string, long>> counts;
  for (const Tokens& seq : sequences) {
    Tokens ctx(static_cast<std::size_t>(k), std::string(kChainStart));
    for (const std::string& tok : seq) {
      ++counts[ctx][tok];
      ctx.erase(ctx.begin());
      ctx.push_back(tok);
    }
  }
  ChainModel m;
  m.order = k;
  for (const auto& [ctx, next] : counts) {
    long total = 0;
    for (const auto& [tok, c] : next) total += c;
    for (const auto& [tok, c] : next) m.table[ctx][tok] = static_cast<double>(c) / static_cast<double>(total);
  }
  return m;
}

ChainModel train_chain(const std::vector<NormalizedProblem>& corpus, int k) {
  std::vector<Tokens> seqs;
  for (const NormalizedProblem& p : corpus) seqs.push_back(chain_tokens(p));
  return train_chain_tokens(seqs, k);
}

Tokens sample_chain(const ChainModel& model, std::uint64_t seed, std::size_t max_tokens) {
  Rng rng(seed);
  Tokens out;
  Tokens ctx(static_cast<std::size_t>(model.order), std::string(kChainStart));
  while (out.size() < max_tokens) {
    auto it = model.table.find(ctx);
    if (it == model.table.end()) break;
    const double u = rng.uniform01();
    double acc = 0;
    std::string chosen = it->second.rbegin()->first;
    for (const auto& [tok, p] : it->second) {
      acc += p;
      if (u < acc) {
        chosen = tok;
        break;
      }
    }
    out.push_back(chosen);
    if (chosen == kChainEnd) break;
    ctx.erase(ctx.begin());
    ctx.push_back(chosen);
  }
  return out;
}

std::string ground_sample(const Tokens& sample, Rng& rng, const GroundingOptions& options) {
  const Tokens type_words = tokenize(plural_type(options.type));
  auto draw = [&] {
    return Decimal::from_int(static_cast<std::int64_t>(rng.uniform_int(options.value_lo, options.value_hi)));
  };
  auto render = [&](Decimal v) {
    return options.bare_numbers && v.is_integral() ? std::to_string(v.whole()) : v.str();
  };

  // Probe sentences with a placeholder amount to read their structure.
  std::vector<Tokens> sentences = split_sentences([&] {
    Tokens t;
    for (const std::string& tok : sample) {
      if (tok == kChainObject) t.insert(t.end(), type_words.begin(), type_words.end());
      else t.push_back(tok);
    }
    return t;
  }());

  std::map<std::string, Decimal> stock;
  std::string text;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    Tokens& s = sentences[i];
    Tokens probe = s;
    for (std::string& t : probe)
      if (t == kChainNumber) t = "1";
    std::optional<SlotMap> slots;
    try {
      slots = extract(probe, classify(featurize(probe, i, sentences.size())));
    } catch (const Error&) {
    }
    std::optional<Decimal> value;
    if (slots) {
      switch (slots->kind) {
        case SentenceKind::BT:
          value = draw();
          stock[slots->at(slot::kAgent)] = *value;
          break;
        case SentenceKind::TR: {
          auto it = stock.find(slots->at(slot::kFromAgent));
          value = it != stock.end() && it->second >= Decimal::from_int(1)
                      ? Decimal::from_int(static_cast<std::int64_t>(rng.uniform_int(1, it->second.whole())))
                      : draw();
          stock[slots->at(slot::kFromAgent)] -= *value;
          stock[slots->at(slot::kToAgent)] += *value;
          break;
        }
        case SentenceKind::AT: {
          auto it = stock.find(slots->at(slot::kAgent));
          value = it != stock.end() && it->second >= Decimal() ? it->second : draw();
          break;
        }
        case SentenceKind::QS: break;
      }
    }
    for (std::string& t : s)
      if (t == kChainNumber) t = render(value ? *value : draw());
    text += (text.empty() ? "" : " ") + join_tokens(s);
  }
  return text;
}

}  // namespace tcawp
