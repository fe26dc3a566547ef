#include "tcawp/checker.hpp"

#include <algorithm>

#include "tcawp/error.hpp"

namespace tcawp {

using P = PropertyName;

std::string_view reason_name(UnrepairableReason r) {
  switch (r) {
    case UnrepairableReason::StructureBroken: return "StructureBroken";
    case UnrepairableReason::MissingInformation: return "MissingInformation";
    case UnrepairableReason::ExtractionFailed: return "ExtractionFailed";
  }
  return "?";
}

std::string_view verdict_name(const Verdict& v) {
  if (std::holds_alternative<Consistent>(v)) return "consistent";
  if (std::holds_alternative<PartiallyConsistent>(v)) return "partial";
  return "unrepairable";
}

std::string describe(const Verdict& v) {
  std::string out(verdict_name(v));
  if (const auto* p = std::get_if<PartiallyConsistent>(&v)) {
    out += "(";
    for (std::size_t i = 0; i < p->issues.size(); ++i) out += (i ? "," : "") + to_string(p->issues[i]);
    out += ")";
  }
  if (const auto* u = std::get_if<Unrepairable>(&v)) out += "(" + std::string(reason_name(u->reason)) + ")";
  return out;
}

std::vector<std::size_t> infeasible_steps(const std::map<std::string, Decimal>& stocks,
                                          const std::vector<Transfer>& transfers) {
  std::map<std::string, Decimal> stock = stocks;
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < transfers.size(); ++i) {
    const Transfer& t = transfers[i];
    auto it = stock.find(t.from);
    if (it == stock.end()) throw UnknownFromAgent("no stock known for " + t.from);
    if (it->second < t.amount) bad.push_back(i);
    it->second -= t.amount;
    stock[t.to] += t.amount;
  }
  return bad;
}

bool feasible(const std::map<std::string, Decimal>& stocks, const std::vector<Transfer>& transfers) {
  return infeasible_steps(stocks, transfers).empty();
}

namespace {

std::optional<ClassName> sentence_kind(const ABox& box, const Individual& s) {
  std::optional<ClassName> kind;
  for (ClassName c : {ClassName::BT, ClassName::TR, ClassName::AT, ClassName::QS})
    if (box.contains(class_assertion(s, c))) {
      if (kind) return std::nullopt;
      kind = c;
    }
  return kind;
}

std::vector<Individual> sentences(const ABox& box) {
  std::vector<Individual> out;
  for (const Individual& x : box.individuals())
    if (sentence_index(x)) out.push_back(x);
  std::sort(out.begin(), out.end(),
            [](const Individual& a, const Individual& b) { return *sentence_index(a) < *sentence_index(b); });
  return out;
}

std::optional<Individual> one_object(const ABox& box, const Individual& s, PropertyName p) {
  const auto xs = box.objects(s, p);
  if (xs.size() != 1) return std::nullopt;
  return xs.front();
}

template <typename T>
std::optional<T> one_value(const ABox& box, const Individual& s, PropertyName p) {
  const auto vs = box.values(s, p);
  if (vs.size() != 1 || !std::holds_alternative<T>(vs.front())) return std::nullopt;
  return std::get<T>(vs.front());
}

bool quantity_ok(const ABox& box, const Individual& q) {
  return one_value<Decimal>(box, q, P::quantValue) && one_value<std::string>(box, q, P::quantType);
}

bool sentence_ok(const ABox& box, const Individual& s, ClassName kind) {
  switch (kind) {
    case ClassName::BT:
    case ClassName::AT: {
      const bool bt = kind == ClassName::BT;
      const auto a = one_object(box, s, bt ? P::involvesAgentBT : P::involvesAgentAT);
      const auto q = one_object(box, s, bt ? P::involvesBTQuantity : P::involvesATQuantity);
      return a && q && box.contains(object_assertion(*a, P::hasQuant, *q)) && quantity_ok(box, *q);
    }
    case ClassName::TR: {
      const auto q = one_object(box, s, P::involvesTRQuantity);
      return one_object(box, s, P::fromAgent) && one_object(box, s, P::toAgent) && q && quantity_ok(box, *q);
    }
    case ClassName::QS: {
      const auto a = one_object(box, s, P::asksAbout);
      return a && box.member(*a, ClassName::Agent) && one_value<std::string>(box, s, P::asksObjType);
    }
    default: return false;
  }
}

bool is_valid(const ABox& box, const Individual& s) {
  const auto kind = sentence_kind(box, s);
  return kind && box.contains(class_assertion(s, *valid_class_for(*kind)));
}

// View of a structurally valid problem, read back from the ABox.
struct Story {
  struct Possession {
    int sentence;
    Individual agent;
    Decimal value;
    std::string type;
  };
  struct Move {
    int sentence;
    Individual from, to;
    Decimal value;
    std::string type;
  };
  std::vector<Possession> bts, ats;
  std::vector<Move> trs;
  int qs_sentence = 0;
  Individual asked;
  std::string asked_type;

  std::set<Individual> bt_agents() const {
    std::set<Individual> out;
    for (const auto& b : bts) out.insert(b.agent);
    return out;
  }
};

Story read_story(const ABox& box) {
  Story st;
  for (const Individual& s : sentences(box)) {
    const int i = *sentence_index(s);
    const auto kind = sentence_kind(box, s);
    if (!kind) continue;
    auto quantity = [&](PropertyName involves) {
      const Individual q = *one_object(box, s, involves);
      return std::pair{*one_value<Decimal>(box, q, P::quantValue), *one_value<std::string>(box, q, P::quantType)};
    };
    switch (*kind) {
      case ClassName::BT: {
        auto [v, t] = quantity(P::involvesBTQuantity);
        st.bts.push_back({i, *one_object(box, s, P::involvesAgentBT), v, t});
        break;
      }
      case ClassName::AT: {
        auto [v, t] = quantity(P::involvesATQuantity);
        st.ats.push_back({i, *one_object(box, s, P::involvesAgentAT), v, t});
        break;
      }
      case ClassName::TR: {
        auto [v, t] = quantity(P::involvesTRQuantity);
        st.trs.push_back({i, *one_object(box, s, P::fromAgent), *one_object(box, s, P::toAgent), v, t});
        break;
      }
      case ClassName::QS:
        st.qs_sentence = i;
        st.asked = *one_object(box, s, P::asksAbout);
        st.asked_type = *one_value<std::string>(box, s, P::asksObjType);
        break;
      default: break;
    }
  }
  return st;
}

bool has_unrepairable(const std::set<Finding>& f) {
  return std::any_of(f.begin(), f.end(), [](const Finding& x) { return std::holds_alternative<UnrepairableReason>(x.what); });
}

bool has_issue(const std::set<Finding>& f, std::initializer_list<IssueClass> classes) {
  return std::any_of(f.begin(), f.end(), [&](const Finding& x) {
    const auto* i = std::get_if<Issue>(&x.what);
    return i && std::find(classes.begin(), classes.end(), i->cls) != classes.end();
  });
}

Finding issue(IssueClass c, int sentence) { return Finding{Issue{c, sentence}}; }

// Stocks at the start of the problem for agents with a BT sentence.
std::map<std::string, Decimal> initial_stocks(const Story& st) {
  std::map<std::string, Decimal> stocks;
  for (const auto& b : st.bts) stocks[b.agent.local] = b.value;
  return stocks;
}

Rule sentence_rule(ClassName kind, std::string name) {
  return Rule{std::move(name), 0, [kind](const ABox& box, const std::set<Finding>&) {
                Derivation d;
                for (const Individual& s : box.instances(kind))
                  if (sentence_kind(box, s) == kind && sentence_ok(box, s, kind))
                    d.assertions.push_back(class_assertion(s, *valid_class_for(kind)));
                return d;
              }};
}

struct StructureFacts {
  bool sentences_valid = true;
  int qs = 0;
  int tr = 0;
  bool sources_known = true;  // every from-agent and asked agent has a BT
};

StructureFacts structure_facts(const ABox& box) {
  StructureFacts f;
  std::set<Individual> bt_agents;
  for (const Individual& s : sentences(box)) {
    if (!is_valid(box, s)) f.sentences_valid = false;
    const auto kind = sentence_kind(box, s);
    if (kind == ClassName::QS) ++f.qs;
    if (kind == ClassName::TR) ++f.tr;
    if (kind == ClassName::BT)
      for (const Individual& a : box.objects(s, P::involvesAgentBT)) bt_agents.insert(a);
  }
  for (const Individual& s : sentences(box))
    for (PropertyName p : {P::fromAgent, P::asksAbout})
      for (const Individual& a : box.objects(s, p))
        if (!bt_agents.contains(a)) f.sources_known = false;
  return f;
}

std::vector<Rule> build_rules() {
  std::vector<Rule> rules;
  rules.push_back(sentence_rule(ClassName::BT, "valid-bt"));
  rules.push_back(sentence_rule(ClassName::AT, "valid-at"));
  rules.push_back(sentence_rule(ClassName::TR, "valid-tr"));
  rules.push_back(sentence_rule(ClassName::QS, "valid-qs"));

  rules.push_back({"valid-structure", 1, [](const ABox& box, const std::set<Finding>&) {
                     Derivation d;
                     const auto f = structure_facts(box);
                     if (f.sentences_valid && f.qs == 1 && f.tr >= 1 && f.sources_known)
                       d.assertions.push_back(class_assertion(word_problem_individual(), ClassName::ValidStructure));
                     return d;
                   }});

  rules.push_back({"structure-triage", 2, [](const ABox& box, const std::set<Finding>&) {
                     Derivation d;
                     if (box.contains(class_assertion(word_problem_individual(), ClassName::ValidStructure))) return d;
                     const auto f = structure_facts(box);
                     const bool only_sources = f.sentences_valid && f.qs == 1 && f.tr >= 1;
                     d.findings.push_back(Finding{only_sources ? UnrepairableReason::MissingInformation
                                                               : UnrepairableReason::StructureBroken});
                     return d;
                   }});
  rules.push_back({"ground-truth", 2, [](const ABox& box, const std::set<Finding>&) {
                     Derivation d;
                     if (!box.contains(class_assertion(word_problem_individual(), ClassName::ValidStructure))) return d;
                     const Story st = read_story(box);
                     std::set<Individual> agents;
                     std::set<std::string> types;
                     for (const auto& b : st.bts) {
                       // Two BTs for one agent, or BTs disagreeing on the object, leave no single truth.
                       if (!agents.insert(b.agent).second) d.findings.push_back({UnrepairableReason::MissingInformation});
                       types.insert(b.type);
                     }
                     if (types.size() > 1) d.findings.push_back({UnrepairableReason::MissingInformation});
                     return d;
                   }});

  rules.push_back({"object-types", 3, [](const ABox& box, const std::set<Finding>& f) {
                     Derivation d;
                     if (has_unrepairable(f)) return d;
                     const Story st = read_story(box);
                     const std::string& truth = st.bts.front().type;
                     if (st.asked_type != truth) d.findings.push_back(issue(IssueClass::QsObjTypeMismatch, st.qs_sentence));
                     for (const auto& t : st.trs)
                       if (t.type != truth) d.findings.push_back(issue(IssueClass::TrObjTypeMismatch, t.sentence));
                     for (const auto& a : st.ats)
                       if (a.type != truth) d.findings.push_back(issue(IssueClass::AtObjTypeMismatch, a.sentence));
                     return d;
                   }});
  rules.push_back({"transfer-agents", 3, [](const ABox& box, const std::set<Finding>& f) {
                     Derivation d;
                     if (has_unrepairable(f)) return d;
                     const Story st = read_story(box);
                     const auto owners = st.bt_agents();
                     for (const auto& t : st.trs) {
                       if (t.from == t.to) {
                         d.findings.push_back(issue(IssueClass::TrSameAgents, t.sentence));
                         continue;
                       }
                       const bool stranger = !owners.contains(t.from) || !owners.contains(t.to);
                       const bool bystander = std::any_of(owners.begin(), owners.end(), [&](const Individual& a) {
                         return a != t.from && a != t.to;
                       });
                       if (stranger && bystander && owners.size() >= 2)
                         d.findings.push_back(issue(IssueClass::TrUnknownAgent, t.sentence));
                     }
                     return d;
                   }});
  rules.push_back({"transfer-feasibility", 3, [](const ABox& box, const std::set<Finding>& f) {
                     Derivation d;
                     if (has_unrepairable(f)) return d;
                     const Story st = read_story(box);
                     std::vector<Transfer> moves;
                     for (const auto& t : st.trs) moves.push_back({t.from.local, t.to.local, t.value});
                     for (std::size_t i : infeasible_steps(initial_stocks(st), moves))
                       d.findings.push_back(issue(IssueClass::TransferExceedsOwned, st.trs[i].sentence));
                     return d;
                   }});

  rules.push_back({"after-transfer-values", 4, [](const ABox& box, const std::set<Finding>& f) {
                     Derivation d;
                     if (has_unrepairable(f) ||
                         has_issue(f, {IssueClass::TrSameAgents, IssueClass::TrUnknownAgent,
                                       IssueClass::TransferExceedsOwned}))
                       return d;
                     const Story st = read_story(box);
                     for (const auto& a : st.ats) {
                       if (!st.bt_agents().contains(a.agent)) continue;
                       auto stock = initial_stocks(st);
                       for (const auto& t : st.trs)
                         if (t.sentence < a.sentence) {
                           stock[t.from.local] -= t.value;
                           stock[t.to.local] += t.value;
                         }
                       if (stock[a.agent.local] != a.value)
                         d.findings.push_back(issue(IssueClass::AtValueMismatch, a.sentence));
                     }
                     return d;
                   }});
  return rules;
}

}  // namespace

const std::vector<Rule>& consistency_rules() {
  static const std::vector<Rule> rules = build_rules();
  return rules;
}

Evaluation run_rules(ABox abox, std::span<const Rule> rules) {
  Evaluation ev{std::move(abox), {}};
  std::set<int> strata;
  for (const Rule& r : rules) strata.insert(r.stratum);
  for (int stratum : strata) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Rule& r : rules) {
        if (r.stratum != stratum) continue;
        const Derivation d = r.fire(ev.abox, ev.findings);
        for (const Assertion& a : d.assertions)
          if (!ev.abox.contains(a)) {
            ev.abox.insert(a);
            changed = true;
          }
        for (const Finding& f : d.findings) changed |= ev.findings.insert(f).second;
      }
    }
  }
  return ev;
}

namespace {

int severity(UnrepairableReason r) {
  switch (r) {
    case UnrepairableReason::MissingInformation: return 0;
    case UnrepairableReason::StructureBroken: return 1;
    case UnrepairableReason::ExtractionFailed: return 2;
  }
  return 0;
}

}  // namespace

Verdict verdict_from(const std::set<Finding>& findings) {
  std::optional<UnrepairableReason> reason;
  std::vector<Issue> issues;
  for (const Finding& f : findings) {
    if (const auto* r = std::get_if<UnrepairableReason>(&f.what)) {
      if (!reason || severity(*r) > severity(*reason)) reason = *r;
    } else {
      issues.push_back(std::get<Issue>(f.what));
    }
  }
  if (reason) return Unrepairable{*reason};
  if (issues.empty()) return Consistent{};
  std::sort(issues.begin(), issues.end(), [](const Issue& a, const Issue& b) {
    return std::pair(a.sentence, static_cast<int>(a.cls)) < std::pair(b.sentence, static_cast<int>(b.cls));
  });
  return PartiallyConsistent{issues};
}

bool validate_sentence(ABox& abox, const Individual& s) {
  const auto kind = sentence_kind(abox, s);
  if (!kind || !sentence_ok(abox, s, *kind)) return false;
  abox.insert(class_assertion(s, *valid_class_for(*kind)));
  return true;
}

bool validate_structure(ABox& abox) {
  for (const Individual& s : sentences(abox)) validate_sentence(abox, s);
  const auto f = structure_facts(abox);
  if (!(f.sentences_valid && f.qs == 1 && f.tr >= 1 && f.sources_known)) return false;
  abox.insert(class_assertion(word_problem_individual(), ClassName::ValidStructure));
  return true;
}

Verdict check_abox(const ABox& abox) { return verdict_from(run_rules(abox, consistency_rules()).findings); }

Verdict check_consistency(const Analysis& analysis) {
  switch (analysis.stage) {
    case Analysis::Stage::NormalizationFailed:
    case Analysis::Stage::ClassificationFailed: return Unrepairable{UnrepairableReason::ExtractionFailed};
    default: return check_abox(analysis.abox);
  }
}

}  // namespace tcawp
