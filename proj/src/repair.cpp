#include "tcawp/repair.hpp"

#include <algorithm>
#include <map>

#include "tcawp/error.hpp"
#include "tcawp/realizer.hpp"

namespace tcawp {

namespace {

using P = PropertyName;

Individual single(const ABox& box, const Individual& s, PropertyName p) {
  const auto xs = box.objects(s, p);
  if (xs.size() != 1) throw RepairFailed(s.local + " lacks a unique " + std::string(info(p).local_name));
  return xs.front();
}

// Replaces the unique value of (s, p); returns the old value's text.
std::string replace_value(ABox& box, const Individual& s, PropertyName p, const Literal& value) {
  const auto vals = box.values(s, p);
  if (vals.size() != 1) throw RepairFailed(s.local + " lacks a unique " + std::string(info(p).local_name));
  box.erase(data_assertion(s, p, vals.front()));
  box.insert(data_assertion(s, p, value));
  return literal_text(vals.front());
}

std::string replace_object(ABox& box, const Individual& s, PropertyName p, const Individual& o) {
  const Individual old = single(box, s, p);
  box.erase(object_assertion(s, p, old));
  box.insert(object_assertion(s, p, o));
  return old.local;
}

int index_of(const Individual& s) { return sentence_index(s).value_or(0); }

std::vector<Individual> ordered(std::vector<Individual> xs) {
  std::sort(xs.begin(), xs.end(), [](const Individual& a, const Individual& b) { return index_of(a) < index_of(b); });
  return xs;
}

std::map<Individual, Individual> bt_owner(const ABox& box) {
  std::map<Individual, Individual> out;  // BT sentence -> agent
  for (const Individual& s : box.objects(word_problem_individual(), P::hasBT))
    out.emplace(s, single(box, s, P::involvesAgentBT));
  return out;
}

std::set<Individual> bt_agents(const ABox& box) {
  std::set<Individual> out;
  for (const auto& [s, a] : bt_owner(box)) out.insert(a);
  return out;
}

void drop_orphan_agents(ABox& box) {
  for (const Individual& a : box.instances(ClassName::Agent)) {
    const auto all = box.query(any());
    const bool used = std::any_of(all.begin(), all.end(), [&](const Assertion& x) {
      if (x.kind() == AssertionKind::Class) return false;
      return x.subject == a || (x.kind() == AssertionKind::Object && x.object_individual() == a);
    });
    if (!used) box.erase(class_assertion(a, ClassName::Agent));
  }
}

}  // namespace

std::string ground_truth_type(const ABox& box) {
  std::set<std::string> types;
  for (const Individual& s : box.objects(word_problem_individual(), P::hasBT))
    for (const Literal& t : box.values(single(box, s, P::involvesBTQuantity), P::quantType)) types.insert(literal_text(t));
  if (types.size() != 1) throw AmbiguousGroundTruth("BT sentences name " + std::to_string(types.size()) + " object types");
  return *types.begin();
}

void fix_qs_objtype(ABox& box, RepairLog& log) {
  const std::string truth = ground_truth_type(box);
  for (const Individual& s : box.objects(word_problem_individual(), P::hasQuestion)) {
    const std::string before = replace_value(box, s, P::asksObjType, truth);
    if (before != truth) log.push_back({IssueClass::QsObjTypeMismatch, index_of(s), before, truth});
  }
}

void fix_objtype_in(ABox& box, const Individual& s, RepairLog& log) {
  const std::string truth = ground_truth_type(box);
  IssueClass cls;
  PropertyName involves;
  if (box.contains(class_assertion(s, ClassName::TR))) {
    cls = IssueClass::TrObjTypeMismatch;
    involves = P::involvesTRQuantity;
  } else if (box.contains(class_assertion(s, ClassName::AT))) {
    cls = IssueClass::AtObjTypeMismatch;
    involves = P::involvesATQuantity;
  } else {
    throw RepairFailed(s.local + " is neither a TR nor an AT sentence");
  }
  const std::string before = replace_value(box, single(box, s, involves), P::quantType, truth);
  if (before != truth) log.push_back({cls, index_of(s), before, truth});
}

void fix_tr_agents(ABox& box, const Individual& s, RepairLog& log) {
  const auto owners = bt_agents(box);
  if (owners.size() != 2) throw RepairFailed("transfer agents at " + s.local + " are ambiguous with " +
                                             std::to_string(owners.size()) + " BT agents");
  const Individual from = single(box, s, P::fromAgent), to = single(box, s, P::toAgent);
  auto other_than = [&](const Individual& a) {
    for (const Individual& o : owners)
      if (o != a) return o;
    return a;
  };
  if (from == to) {
    const Individual fixed = other_than(from);
    replace_object(box, s, P::toAgent, fixed);
    log.push_back({IssueClass::TrSameAgents, index_of(s), to.local, fixed.local});
  } else if (!owners.contains(to) && owners.contains(from)) {
    const Individual fixed = other_than(from);
    replace_object(box, s, P::toAgent, fixed);
    log.push_back({IssueClass::TrUnknownAgent, index_of(s), to.local, fixed.local});
  } else if (!owners.contains(from) && owners.contains(to)) {
    const Individual fixed = other_than(to);
    replace_object(box, s, P::fromAgent, fixed);
    log.push_back({IssueClass::TrUnknownAgent, index_of(s), from.local, fixed.local});
  } else if (!owners.contains(from)) {
    throw RepairFailed("neither endpoint of " + s.local + " has a BT sentence");
  }
  drop_orphan_agents(box);
}

void fix_quantities(ABox& box, Rng& rng, RepairLog& log) {
  const Individual wp = word_problem_individual();
  std::map<Individual, Decimal> stock;
  for (const auto& [s, a] : bt_owner(box))
    stock[a] = std::get<Decimal>(box.values(single(box, s, P::involvesBTQuantity), P::quantValue).at(0));
  const auto owners = bt_agents(box);

  std::vector<Individual> events = box.objects(wp, P::hasTRprop);
  for (const Individual& s : box.objects(wp, P::hasAT)) events.push_back(s);
  for (const Individual& s : ordered(events)) {
    if (box.contains(class_assertion(s, ClassName::TR))) {
      const Individual from = single(box, s, P::fromAgent), to = single(box, s, P::toAgent);
      const Individual q = single(box, s, P::involvesTRQuantity);
      Decimal amount = std::get<Decimal>(box.values(q, P::quantValue).at(0));
      const Decimal have = stock[from];
      if (amount > have) {
        if (have < Decimal::from_int(1)) throw RepairFailed(from.local + " has nothing left to give at " + s.local);
        const Decimal drawn = Decimal::from_int(static_cast<std::int64_t>(rng.uniform_int(1, have.whole())));
        log.push_back({IssueClass::TransferExceedsOwned, index_of(s), replace_value(box, q, P::quantValue, drawn),
                       drawn.str()});
        amount = drawn;
      }
      stock[from] -= amount;
      stock[to] += amount;
    } else {
      const Individual a = single(box, s, P::involvesAgentAT);
      if (!owners.contains(a)) continue;
      const Individual q = single(box, s, P::involvesATQuantity);
      const Decimal expected = stock[a];
      const std::string before = replace_value(box, q, P::quantValue, expected);
      if (before != expected.str()) log.push_back({IssueClass::AtValueMismatch, index_of(s), before, expected.str()});
    }
  }
}

RepairResult repair(const RawProblem& problem, const Analysis& analysis, const Verdict& verdict, std::uint64_t seed) {
  if (std::holds_alternative<Consistent>(verdict)) return {problem, analysis, verdict, {}};
  if (const auto* u = std::get_if<Unrepairable>(&verdict))
    throw RepairFailed("problem is unrepairable (" + std::string(reason_name(u->reason)) + ")");
  const auto& issues = std::get<PartiallyConsistent>(verdict).issues;

  ABox box = analysis.abox;
  RepairLog log;
  Rng rng(mix_seed(stable_hash(problem.id), seed));
  // Types first, then agents, then amounts: later fixes read what earlier ones settle.
  for (const Issue& i : issues) {
    if (i.cls == IssueClass::QsObjTypeMismatch) fix_qs_objtype(box, log);
    if (i.cls == IssueClass::TrObjTypeMismatch || i.cls == IssueClass::AtObjTypeMismatch)
      fix_objtype_in(box, sentence_individual(i.sentence), log);
  }
  for (const Issue& i : issues)
    if (i.cls == IssueClass::TrSameAgents || i.cls == IssueClass::TrUnknownAgent)
      fix_tr_agents(box, sentence_individual(i.sentence), log);
  fix_quantities(box, rng, log);

  // Re-render only the sentences whose slots changed.
  const auto before = recover_slots(analysis.abox);
  const auto after = recover_slots(box);
  const NormalizedProblem& np = analysis.normalized;
  std::map<int, std::string> names;
  for (const auto& [surface, ph] : np.agent_map)
    if (auto k = agent_index(Individual(ph))) names[*k] = surface;
  std::string text;
  for (std::size_t i = 0; i < np.sentences.size(); ++i) {
    Tokens t;
    if (i < after.size() && after[i] && before[i] && after[i]->slots != before[i]->slots) {
      SlotMap m = *after[i];
      m.notes = analysis.slots.at(i)->notes;
      NumberStyle style = NumberStyle::Decimal;
      for (const std::string& tok : np.sentences[i])
        if (is_number_placeholder(tok))
          if (auto s = np.surface_of(tok); s && s->find('.') == std::string::npos) style = NumberStyle::Bare;
      t = with_names(realize(m, style), names);
    } else {
      t = denormalize_sentence(np, i);
    }
    text += (text.empty() ? "" : " ") + join_tokens(t);
  }

  RawProblem fixed = problem;
  fixed.text = text;
  Analysis reanalyzed = analyze(fixed);
  Verdict v = check_consistency(reanalyzed);
  if (!std::holds_alternative<Consistent>(v)) throw RepairFailed("patched problem re-checks as " + describe(v));
  if (reanalyzed.abox != box) throw RepairFailed("re-rendered text does not reproduce the patched assertions");
  return {std::move(fixed), std::move(reanalyzed), std::move(v), std::move(log)};
}

RepairResult repair(const RawProblem& problem, std::uint64_t seed) {
  const Analysis a = analyze(problem);
  return repair(problem, a, check_consistency(a), seed);
}

}  // namespace tcawp
