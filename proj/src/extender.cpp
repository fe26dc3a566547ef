#include "tcawp/extender.hpp"

#include <algorithm>
#include <map>

#include "tcawp/error.hpp"
#include "tcawp/generator.hpp"
#include "tcawp/realizer.hpp"

namespace tcawp {

std::string Combination::transfer() const { return "A" + std::to_string(from) + "->A" + std::to_string(to); }
std::string Combination::ask_name() const { return "A" + std::to_string(ask); }
std::string Combination::str() const { return transfer() + ":" + ask_name(); }

std::vector<Combination> all_combinations() {
  std::vector<Combination> out;
  for (auto [f, t] : {std::pair{1, 3}, {2, 3}, {3, 1}, {3, 2}})
    for (int ask = 1; ask <= 3; ++ask) out.push_back({f, t, ask});
  return out;
}

Combination parse_combination(std::string_view text) {
  for (const Combination& c : all_combinations())
    if (c.str() == text) return c;
  throw InvalidSpec("unknown combination '" + std::string(text) + "' (expected e.g. A3->A2:A2)");
}

namespace {

std::string agent_name(int k) { return agent_individual(k).local; }

}  // namespace

RawProblem extend(const RawProblem& problem, const Analysis& analysis, Combination c, Rng& rng,
                  const ExtendOptions& options) {
  if (!std::holds_alternative<Consistent>(check_consistency(analysis)))
    throw NotApplicable("only consistent problems can be extended");
  std::vector<SlotMap> plan;
  for (const auto& s : analysis.slots) plan.push_back(*s);

  std::set<std::string> agents, owners;
  std::vector<std::size_t> trs;
  std::size_t last_bt = 0;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    for (const auto& [label, v] : plan[i].slots)
      if (is_agent_placeholder(v)) agents.insert(v);
    if (plan[i].kind == SentenceKind::BT) {
      owners.insert(plan[i].at(slot::kAgent));
      last_bt = i;
    }
    if (plan[i].kind == SentenceKind::TR) trs.push_back(i);
  }
  if (agents != std::set<std::string>{"Agent1", "Agent2"} || owners != agents || trs.size() != 1)
    throw NotApplicable("extension needs two agents, each with a BT sentence, and one transfer");
  if (options.value_lo < 0 || options.value_hi < options.value_lo) throw InvalidSpec("bad value range");

  const std::string type = plan[last_bt].at(slot::kType);
  const Decimal stock3 = Decimal::from_int(static_cast<std::int64_t>(rng.uniform_int(options.value_lo, options.value_hi)));

  // Source stock once the existing transfer has happened.
  std::map<std::string, Decimal> stock;
  for (const SlotMap& m : plan)
    if (m.kind == SentenceKind::BT) stock[m.at(slot::kAgent)] = m.value();
  stock[agent_name(3)] = stock3;
  const SlotMap& first = plan[trs[0]];
  stock[first.at(slot::kFromAgent)] -= first.value();
  stock[first.at(slot::kToAgent)] += first.value();
  const Decimal available = stock[agent_name(c.from)];
  if (available < Decimal::from_int(1))
    throw InfeasibleCombination(c.transfer() + ": " + agent_name(c.from) + " has nothing left to give");
  const Decimal amount = Decimal::from_int(static_cast<std::int64_t>(rng.uniform_int(1, available.whole())));

  SlotMap bt3{SentenceKind::BT,
              {{std::string(slot::kAgent), agent_name(3)}, {std::string(slot::kValue), stock3.str()},
               {std::string(slot::kType), type}},
              plan[last_bt].notes};
  SlotMap tr2{SentenceKind::TR,
              {{std::string(slot::kFromAgent), agent_name(c.from)}, {std::string(slot::kToAgent), agent_name(c.to)},
               {std::string(slot::kValue), amount.str()}, {std::string(slot::kType), type}},
              {{"verb", "gave"}, {"marker", "to"}}};

  // Source sentence index for every slot of the new plan; nullopt marks new text.
  std::vector<std::optional<std::size_t>> origin;
  std::vector<SlotMap> next;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    next.push_back(plan[i]);
    origin.push_back(i);
    if (i == last_bt) {
      next.push_back(bt3);
      origin.push_back(std::nullopt);
    }
    if (i == trs[0]) {
      next.push_back(tr2);
      origin.push_back(std::nullopt);
    }
  }
  // After-transfer values and the question follow the new sequence of events.
  std::map<std::string, Decimal> run;
  for (std::size_t i = 0; i < next.size(); ++i) {
    SlotMap& m = next[i];
    if (m.kind == SentenceKind::BT) run[m.at(slot::kAgent)] = m.value();
    if (m.kind == SentenceKind::TR) {
      run[m.at(slot::kFromAgent)] -= m.value();
      run[m.at(slot::kToAgent)] += m.value();
    }
    if (m.kind == SentenceKind::AT) m.slots[std::string(slot::kValue)] = run[m.at(slot::kAgent)].str();
    if (m.kind == SentenceKind::QS) m.slots[std::string(slot::kAgent)] = agent_name(c.ask);
  }

  const NormalizedProblem& np = analysis.normalized;
  std::map<int, std::string> names;
  bool surface = false;
  for (const auto& [s, ph] : np.agent_map) {
    names[*agent_index(Individual(ph))] = s;
    surface |= s != ph;
  }
  if (surface) {
    std::vector<std::string> pool;
    for (const std::string& n : NameLexicon::bundled().names())
      if (std::none_of(names.begin(), names.end(), [&](const auto& kv) { return kv.second == n; })) pool.push_back(n);
    names[3] = pool.at(rng.uniform_int(0, pool.size() - 1));
  }
  NumberStyle style = NumberStyle::Decimal;
  for (const auto& [ph, text] : np.number_map)
    if (text.find('.') == std::string::npos) style = NumberStyle::Bare;

  std::string text;
  for (std::size_t i = 0; i < next.size(); ++i) {
    Tokens t;
    if (origin[i] && next[i] == plan[*origin[i]])
      t = denormalize_sentence(np, *origin[i]);
    else
      t = with_names(realize(next[i], style), names);
    text += (text.empty() ? "" : " ") + join_tokens(t);
  }

  RawProblem out;
  out.id = problem.id + ":" + c.str();
  out.text = std::move(text);
  GoldRecord gold;
  const ABox box = populate(next);
  gold.abox.assign(box.assertions().begin(), box.assertions().end());
  gold.answer = plan_answer(next);
  out.gold = std::move(gold);
  out.extra["derived_from"] = problem.id;
  out.extra["combination"] = {{"transfer", c.transfer()}, {"ask", c.ask_name()}};
  return out;
}

std::string realize_triples(const std::vector<Assertion>& assertions) {
  using P = PropertyName;
  const ABox box = make_abox(assertions);
  auto one = [&](PropertyName p) -> std::optional<Assertion> {
    const auto xs = box.query(with_property(p));
    if (xs.size() != 1) return std::nullopt;
    return xs.front();
  };
  auto require = [](const std::optional<Assertion>& a, const char* what) {
    if (!a) throw IncompleteTriples(std::string("assertions lack a unique ") + what);
    return *a;
  };
  auto quantity_slots = [&](SlotMap& m, const Individual& q) {
    const auto v = box.values(q, P::quantValue);
    const auto t = box.values(q, P::quantType);
    if (v.size() != 1 || t.size() != 1) throw IncompleteTriples(q.local + " needs one quantValue and one quantType");
    m.slots.emplace(slot::kValue, literal_text(v.front()));
    m.slots.emplace(slot::kType, canonical_type(literal_text(t.front())));
  };

  SlotMap m;
  if (one(P::fromAgent) || one(P::toAgent)) {
    m.kind = SentenceKind::TR;
    const Assertion from = require(one(P::fromAgent), "fromAgent");
    m.slots.emplace(slot::kFromAgent, from.object_individual().local);
    m.slots.emplace(slot::kToAgent, require(one(P::toAgent), "toAgent").object_individual().local);
    std::optional<Individual> q;
    if (auto link = one(P::involvesTRQuantity)) q = link->object_individual();
    else if (auto val = one(P::quantValue)) q = val->subject;
    if (!q) throw IncompleteTriples("transfer quantity is missing");
    quantity_slots(m, *q);
  } else if (auto ask = one(P::asksAbout)) {
    m.kind = SentenceKind::QS;
    m.slots.emplace(slot::kAgent, ask->object_individual().local);
    m.slots.emplace(slot::kType, canonical_type(literal_text(require(one(P::asksObjType), "asksObjType").object_literal())));
  } else {
    const Assertion owns = require(one(P::hasQuant), "hasQuant");
    m.kind = one(P::involvesAgentAT) ? SentenceKind::AT : SentenceKind::BT;
    m.slots.emplace(slot::kAgent, owns.subject.local);
    quantity_slots(m, owns.object_individual());
  }
  return join_tokens(realize(m));
}

std::vector<EnumeratedExtension> enumerate(const RawProblem& problem, std::uint64_t seed, const ExtendOptions& options) {
  const Analysis a = analyze(problem);
  std::vector<EnumeratedExtension> out;
  const auto combos = all_combinations();
  for (std::size_t i = 0; i < combos.size(); ++i) {
    Rng rng(mix_seed(mix_seed(stable_hash(problem.id), seed), i));
    EnumeratedExtension e{combos[i], std::nullopt, {}};
    try {
      e.problem = extend(problem, a, combos[i], rng, options);
    } catch (const InfeasibleCombination& err) {
      e.error = err.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace tcawp
