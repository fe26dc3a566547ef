#include "tcawp/solver.hpp"

#include <map>

#include "tcawp/error.hpp"

namespace tcawp {

namespace {

using P = PropertyName;

Individual only(const std::vector<Individual>& xs, const char* what) {
  if (xs.size() != 1) throw UnsolvableState(std::string("expected exactly one ") + what);
  return xs.front();
}

template <typename T>
T only_value(const ABox& box, const Individual& x, PropertyName p, const char* what) {
  const auto vals = box.values(x, p);
  if (vals.size() != 1 || !std::holds_alternative<T>(vals.front()))
    throw UnsolvableState(std::string("expected exactly one ") + what);
  return std::get<T>(vals.front());
}

}  // namespace

Decimal solve(const ABox& box) {
  const Individual wp = word_problem_individual();
  const Individual qs = only(box.objects(wp, P::hasQuestion), "question");
  const Individual asked = only(box.objects(qs, P::asksAbout), "asked agent");
  const auto type = only_value<std::string>(box, qs, P::asksObjType, "asked object type");

  // Sentence individuals keyed by index so transfers replay in text order.
  std::map<int, Individual> bts, trs;
  for (const Individual& s : box.objects(wp, P::hasBT)) bts.emplace(sentence_index(s).value_or(0), s);
  for (const Individual& s : box.objects(wp, P::hasTRprop)) trs.emplace(sentence_index(s).value_or(0), s);

  std::map<Individual, Decimal> stock;
  for (const auto& [i, s] : bts) {
    const Individual a = only(box.objects(s, P::involvesAgentBT), "BT agent");
    const Individual q = only(box.objects(s, P::involvesBTQuantity), "BT quantity");
    if (only_value<std::string>(box, q, P::quantType, "BT type") != type) continue;
    stock[a] = only_value<Decimal>(box, q, P::quantValue, "BT value");
  }
  for (const auto& [i, s] : trs) {
    const Individual from = only(box.objects(s, P::fromAgent), "from-agent");
    const Individual to = only(box.objects(s, P::toAgent), "to-agent");
    const Individual q = only(box.objects(s, P::involvesTRQuantity), "TR quantity");
    if (only_value<std::string>(box, q, P::quantType, "TR type") != type) continue;
    const Decimal v = only_value<Decimal>(box, q, P::quantValue, "TR value");
    auto it = stock.find(from);
    if (it == stock.end() || it->second < v) throw UnsolvableState("transfer from " + from.local + " is infeasible");
    it->second -= v;
    stock[to] += v;
  }
  auto it = stock.find(asked);
  if (it == stock.end()) throw UnsolvableState("no known stock for " + asked.local);
  // An agent that only ever received has no known starting stock.
  bool has_bt = false;
  for (const auto& [i, s] : bts)
    if (box.contains(object_assertion(s, P::involvesAgentBT, asked))) has_bt = true;
  if (!has_bt) throw UnsolvableState("no known stock for " + asked.local);
  return it->second;
}

}  // namespace tcawp
