#include "tcawp/generator.hpp"

#include <algorithm>

#include "tcawp/error.hpp"

namespace tcawp {

std::vector<std::string> default_type_pool() {
  return {"carrot", "book", "pen", "dollar", "apple", "sticker", "candy", "blue marble", "red balloon", "cookie",
          "peach", "box", "pencil", "orange", "toy car", "seashell", "flower", "green card", "marble", "balloon"};
}

void TemplateSpec::validate() const {
  if (agents != 2 && agents != 3) throw InvalidSpec("agent count must be 2 or 3");
  if (sentences < 3 || sentences > 5) throw InvalidSpec("sentence count must be 3, 4 or 5");
  if (agents == 3 && sentences != 5)
    throw InvalidSpec("three agents need five sentences (a BT per agent, one TR, one QS)");
  if (value_lo < 0) throw InvalidSpec("value range lower bound must be non-negative");
  if (value_hi < std::max(value_lo, 1)) throw InvalidSpec("value range must contain a positive integer");
  if (types.empty()) throw InvalidSpec("object-type pool is empty");
  for (const std::string& t : types)
    if (t.empty() || canonical_type(t) != t || canonical_type(plural_type(t)) != t)
      throw InvalidSpec("object type '" + t + "' is not in canonical singular form");
  if (verbs.possession.empty() || verbs.transfer_to.empty())
    throw InvalidSpec("verb lexicon needs possession and transfer verbs");
}

namespace {

std::string agent_name(int k) { return agent_individual(k).local; }

SlotMap possession(SentenceKind kind, int agent, Decimal v, const std::string& type) {
  SlotMap m;
  m.kind = kind;
  m.slots.emplace(slot::kAgent, agent_name(agent));
  m.slots.emplace(slot::kValue, v.str());
  m.slots.emplace(slot::kType, type);
  return m;
}

SlotMap transfer(int from, int to, Decimal v, const std::string& type) {
  SlotMap m;
  m.kind = SentenceKind::TR;
  m.slots.emplace(slot::kFromAgent, agent_name(from));
  m.slots.emplace(slot::kToAgent, agent_name(to));
  m.slots.emplace(slot::kValue, v.str());
  m.slots.emplace(slot::kType, type);
  return m;
}

SlotMap question(int agent, const std::string& type) {
  SlotMap m;
  m.kind = SentenceKind::QS;
  m.slots.emplace(slot::kAgent, agent_name(agent));
  m.slots.emplace(slot::kType, type);
  m.notes.emplace("state", "now");
  return m;
}

// Stocks after replaying BT and TR sentences [0, end).
std::map<std::string, Decimal> stocks_before(const std::vector<SlotMap>& plan, std::size_t end) {
  std::map<std::string, Decimal> stock;
  for (std::size_t i = 0; i < end && i < plan.size(); ++i) {
    const SlotMap& m = plan[i];
    if (m.kind == SentenceKind::BT) stock[m.at(slot::kAgent)] = m.value();
    if (m.kind == SentenceKind::TR) {
      stock[m.at(slot::kFromAgent)] -= m.value();
      stock[m.at(slot::kToAgent)] += m.value();
    }
  }
  return stock;
}

std::string other_type(const std::string& current, const std::vector<std::string>& pool, Rng& rng) {
  // Keep an adjective when there is one, as in "blue marble" -> "blue balloon".
  const Tokens words = tokenize(current);
  std::vector<std::string> candidates;
  for (const std::string& t : pool) {
    const Tokens tw = tokenize(t);
    std::string c = t;
    if (words.size() > 1) {
      Tokens swapped(words.begin(), words.end() - 1);
      swapped.push_back(tw.back());
      c = join_tokens(swapped);
    }
    if (c != current && std::find(candidates.begin(), candidates.end(), c) == candidates.end())
      candidates.push_back(c);
  }
  if (candidates.empty()) throw NotApplicable("type pool offers no alternative to '" + current + "'");
  return candidates[rng.uniform_int(0, candidates.size() - 1)];
}

std::optional<std::size_t> first_of(const std::vector<SlotMap>& plan, SentenceKind k) {
  for (std::size_t i = 0; i < plan.size(); ++i)
    if (plan[i].kind == k) return i;
  return std::nullopt;
}

std::set<std::string> bt_agents(const std::vector<SlotMap>& plan) {
  std::set<std::string> out;
  for (const SlotMap& m : plan)
    if (m.kind == SentenceKind::BT) out.insert(m.at(slot::kAgent));
  return out;
}

}  // namespace

std::string render_plan(const std::vector<SlotMap>& plan, const std::map<int, std::string>& names,
                        NumberStyle style) {
  std::string text;
  for (const SlotMap& m : plan) {
    if (!text.empty()) text.push_back(' ');
    text += join_tokens(with_names(realize(m, style), names));
  }
  return text;
}

Decimal plan_answer(const std::vector<SlotMap>& plan) {
  std::map<std::string, Decimal> stock;
  for (const SlotMap& m : plan) {
    switch (m.kind) {
      case SentenceKind::BT: stock[m.at(slot::kAgent)] = m.value(); break;
      case SentenceKind::TR:
        stock[m.at(slot::kFromAgent)] -= m.value();
        stock[m.at(slot::kToAgent)] += m.value();
        break;
      case SentenceKind::AT: break;
      case SentenceKind::QS: {
        auto it = stock.find(m.at(slot::kAgent));
        if (it == stock.end()) throw UnsolvableState("question agent has no stock");
        return it->second;
      }
    }
  }
  throw UnsolvableState("plan has no question");
}

GeneratedProblem generate_template(const TemplateSpec& spec, std::string id) {
  spec.validate();
  Rng rng(spec.seed);
  const std::string type = spec.types[rng.uniform_int(0, spec.types.size() - 1)];
  auto draw_stock = [&] {
    return Decimal::from_int(static_cast<std::int64_t>(rng.uniform_int(std::max(spec.value_lo, 1), spec.value_hi)));
  };
  auto draw_transfer = [&](Decimal stock) {
    return Decimal::from_int(static_cast<std::int64_t>(rng.uniform_int(1, stock.whole())));
  };
  auto pick = [&](const std::vector<std::string>& v) { return v[rng.uniform_int(0, v.size() - 1)]; };

  std::vector<SlotMap> plan;
  const int bt_count = spec.sentences == 3 ? 1 : spec.agents;
  for (int a = 1; a <= bt_count; ++a) {
    plan.push_back(possession(SentenceKind::BT, a, draw_stock(), type));
    plan.back().notes.emplace("verb", pick(spec.verbs.possession));
  }

  int from = 1, to = 2;
  if (spec.sentences > 3) {
    from = static_cast<int>(rng.uniform_int(1, spec.agents));
    to = static_cast<int>(rng.uniform_int(1, spec.agents - 1));
    if (to >= from) ++to;
  }
  const Decimal from_stock = stocks_before(plan, plan.size()).at(agent_name(from));
  plan.push_back(transfer(from, to, draw_transfer(from_stock), type));
  if (!spec.verbs.transfer_from.empty() && rng.bernoulli(0.25)) {
    plan.back().notes.emplace("verb", pick(spec.verbs.transfer_from));
    plan.back().notes.emplace("marker", "from");
  } else {
    plan.back().notes.emplace("verb", pick(spec.verbs.transfer_to));
    plan.back().notes.emplace("marker", "to");
  }

  if (spec.sentences == 5 && spec.agents == 2) {
    const int who = static_cast<int>(rng.uniform_int(1, 2));
    const Decimal now = stocks_before(plan, plan.size()).at(agent_name(who));
    plan.push_back(possession(SentenceKind::AT, who, now, type));
    plan.back().notes.emplace("pre", "now");
    plan.back().notes.emplace("verb", "has");
  }
  const int ask = spec.sentences == 3 ? 1 : static_cast<int>(rng.uniform_int(1, spec.agents));
  plan.push_back(question(ask, type));

  GeneratedProblem g;
  g.style = rng.bernoulli(0.5) ? NumberStyle::Bare : NumberStyle::Decimal;
  if (spec.surface_names) {
    const auto& all = NameLexicon::bundled().names();
    std::vector<std::string> pool(all.begin(), all.end());
    for (int a = 1; a <= spec.agents; ++a) {
      std::string n;
      do n = pool[rng.uniform_int(0, pool.size() - 1)];
      while (std::any_of(g.names.begin(), g.names.end(), [&](const auto& kv) { return kv.second == n; }));
      g.names[a] = n;
    }
  }
  g.plan = std::move(plan);
  g.raw.id = std::move(id);
  g.raw.text = render_plan(g.plan, g.names, g.style);
  GoldRecord gold;
  const ABox box = populate(g.plan);
  gold.abox.assign(box.assertions().begin(), box.assertions().end());
  gold.answer = plan_answer(g.plan);
  g.raw.gold = std::move(gold);
  return g;
}

GeneratedProblem inject_noise(const GeneratedProblem& clean, IssueClass issue, Rng& rng,
                              const std::vector<std::string>& type_pool) {
  GeneratedProblem g = clean;
  auto& plan = g.plan;
  std::optional<Tokens> override_tokens;
  std::size_t locus = 0;

  auto need = [&](std::optional<std::size_t> i, const char* what) {
    if (!i) throw NotApplicable(std::string("problem has no ") + what + " sentence");
    return *i;
  };
  auto set_type = [&](std::size_t i) {
    plan[i].slots[std::string(slot::kType)] = other_type(plan[i].at(slot::kType), type_pool, rng);
  };
  const auto bts = bt_agents(plan);

  switch (issue) {
    case IssueClass::QsObjTypeMismatch:
      locus = need(first_of(plan, SentenceKind::QS), "QS");
      set_type(locus);
      break;
    case IssueClass::TrObjTypeMismatch:
      locus = need(first_of(plan, SentenceKind::TR), "TR");
      set_type(locus);
      break;
    case IssueClass::AtObjTypeMismatch:
      locus = need(first_of(plan, SentenceKind::AT), "AT");
      set_type(locus);
      break;
    case IssueClass::TrSameAgents: {
      locus = need(first_of(plan, SentenceKind::TR), "TR");
      if (bts.size() != 2 || !bts.contains(plan[locus].at(slot::kFromAgent)) ||
          !bts.contains(plan[locus].at(slot::kToAgent)))
        throw NotApplicable("TrSameAgents needs a transfer between the two BT agents");
      plan[locus].slots[std::string(slot::kToAgent)] = plan[locus].at(slot::kFromAgent);
      break;
    }
    case IssueClass::TrUnknownAgent: {
      locus = need(first_of(plan, SentenceKind::TR), "TR");
      std::set<std::string> mentioned;
      for (const SlotMap& m : plan)
        for (const auto& [label, v] : m.slots)
          if (is_agent_placeholder(v)) mentioned.insert(v);
      if (bts.size() != 2 || mentioned.size() != 2 || !bts.contains(plan[locus].at(slot::kToAgent)))
        throw NotApplicable("TrUnknownAgent needs exactly two agents, both with BT sentences");
      int fresh = 1;
      while (mentioned.contains(agent_name(fresh))) ++fresh;
      plan[locus].slots[std::string(slot::kToAgent)] = agent_name(fresh);
      if (!g.names.empty()) {
        const auto& all = NameLexicon::bundled().names();
        std::vector<std::string> pool;
        for (const std::string& n : all)
          if (std::none_of(g.names.begin(), g.names.end(), [&](const auto& kv) { return kv.second == n; }))
            pool.push_back(n);
        g.names[fresh] = pool[rng.uniform_int(0, pool.size() - 1)];
      }
      break;
    }
    case IssueClass::TransferExceedsOwned: {
      locus = need(first_of(plan, SentenceKind::TR), "TR");
      const Decimal stock = stocks_before(plan, locus)[plan[locus].at(slot::kFromAgent)];
      const auto extra = static_cast<std::int64_t>(rng.uniform_int(1, 10));
      plan[locus].slots[std::string(slot::kValue)] = (stock + Decimal::from_int(extra)).str();
      break;
    }
    case IssueClass::AtValueMismatch: {
      locus = need(first_of(plan, SentenceKind::AT), "AT");
      const auto extra = static_cast<std::int64_t>(rng.uniform_int(1, 10));
      plan[locus].slots[std::string(slot::kValue)] = (plan[locus].value() + Decimal::from_int(extra)).str();
      break;
    }
    case IssueClass::StructureBroken: {
      // A second subject and verb spliced in front of the transfer clause.
      locus = need(first_of(plan, SentenceKind::TR), "TR");
      const SlotMap& tr = plan[locus];
      Tokens t{tr.at(slot::kToAgent), tr.notes.contains("verb") ? tr.notes.at("verb") : "gave"};
      if (tr.notes.contains("marker") && tr.notes.at("marker") == "from") t = {tr.at(slot::kFromAgent), "gave"};
      for (std::string& tok : realize(tr, g.style)) t.push_back(std::move(tok));
      override_tokens = std::move(t);
      break;
    }
  }

  std::string text;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (!text.empty()) text.push_back(' ');
    const Tokens t = i == locus && override_tokens ? *override_tokens : realize(plan[i], g.style);
    text += join_tokens(with_names(t, g.names));
  }
  g.raw.text = std::move(text);
  g.raw.gold->injected.push_back({issue, static_cast<int>(locus) + 1});
  return g;
}

}  // namespace tcawp
