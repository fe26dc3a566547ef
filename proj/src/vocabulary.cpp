#include "tcawp/vocabulary.hpp"

#include <algorithm>

namespace tcawp {
namespace {

using C = ClassName;
using P = PropertyName;
using K = PropertyKind;

// Domain and range per property. involvesBT-Quantity and involvesAT-Quantity
// mirror involvesTR-Quantity so each BT/AT sentence names the quantity it
// states; without them an agent mentioned in both a BT and an AT sentence
// cannot be tied to the right quantity.
constexpr std::array<PropertyInfo, 25> kProperties = {{
    {P::hasQuant, "hasQuant", K::Object, C::Agent, C::TCQuantity, std::nullopt},
    {P::hasBT, "hasBT", K::Object, C::WordProblem, C::BT, std::nullopt},
    {P::hasAT, "hasAT", K::Object, C::WordProblem, C::AT, std::nullopt},
    {P::hasTRprop, "hasTRprop", K::Object, C::WordProblem, C::TR, std::nullopt},
    {P::hasQS, "hasQS", K::Object, C::WordProblem, C::QS, std::nullopt},
    {P::involvesAgentBT, "involvesAgentBT", K::Object, C::BT, C::Agent, std::nullopt},
    {P::involvesAgentTR, "involvesAgentTR", K::Object, C::TR, C::Agent, std::nullopt},
    {P::involvesAgentAT, "involvesAgentAT", K::Object, C::AT, C::Agent, std::nullopt},
    {P::fromAgent, "fromAgent", K::Object, C::TR, C::Agent, std::nullopt},
    {P::toAgent, "toAgent", K::Object, C::TR, C::Agent, std::nullopt},
    {P::transfersTo, "transfersTo", K::Object, C::Agent, C::Agent, std::nullopt},
    {P::hasGained, "hasGained", K::Object, C::Agent, C::TCQuantity, std::nullopt},
    {P::hasLost, "hasLost", K::Object, C::Agent, C::TCQuantity, std::nullopt},
    {P::hasQuestion, "hasQuestion", K::Object, C::WordProblem, C::QS, std::nullopt},
    {P::asksAbout, "asksAbout", K::Object, C::QS, C::Agent, std::nullopt},
    {P::involvesTRQuantity, "involvesTR-Quantity", K::Object, C::TR, C::TCQuantity, std::nullopt},
    {P::involvesBTQuantity, "involvesBT-Quantity", K::Object, C::BT, C::TCQuantity, std::nullopt},
    {P::involvesATQuantity, "involvesAT-Quantity", K::Object, C::AT, C::TCQuantity, std::nullopt},
    {P::isOwnedBy, "isOwnedBy", K::Object, C::TCQuantity, C::Agent, std::nullopt},
    {P::isGainedBy, "isGainedBy", K::Object, C::TCQuantity, C::Agent, std::nullopt},
    {P::isLostBy, "isLostBy", K::Object, C::TCQuantity, C::Agent, std::nullopt},
    {P::inquiresState, "inquiresState", K::Data, C::QS, std::nullopt, LiteralKind::String},
    {P::quantValue, "quantValue", K::Data, C::TCQuantity, std::nullopt, LiteralKind::Decimal},
    {P::quantType, "quantType", K::Data, C::TCQuantity, std::nullopt, LiteralKind::String},
    {P::asksObjType, "asksObjType", K::Data, C::QS, std::nullopt, LiteralKind::String},
}};

struct ClassEntry {
  ClassName name;
  std::string_view local_name;
  Sort sort;
};

constexpr std::array<ClassEntry, 15> kClasses = {{
    {C::WordProblem, "WordProblem", Sort::WordProblem},
    {C::BT, "BT", Sort::BT},
    {C::TR, "TR", Sort::TR},
    {C::AT, "AT", Sort::AT},
    {C::QS, "QS", Sort::QS},
    {C::Agent, "Agent", Sort::Agent},
    {C::TCQuantity, "TC-Quantity", Sort::Quantity},
    {C::PositiveQuantity, "PositiveQuantity", Sort::Quantity},
    {C::MinuendQuantity, "MinuendQuantity", Sort::Quantity},
    {C::SubtrahendQuantity, "SubtrahendQuantity", Sort::Quantity},
    {C::ValidBT, "ValidBT", Sort::BT},
    {C::ValidAT, "ValidAT", Sort::AT},
    {C::ValidTR, "ValidTR", Sort::TR},
    {C::ValidQS, "ValidQS", Sort::QS},
    {C::ValidStructure, "ValidStructure", Sort::WordProblem},
}};

// Subsumption chains (A.02-A.04 plus Valid* below their sentence kinds).
constexpr std::array kSupWordProblem = {C::WordProblem};
constexpr std::array kSupBT = {C::BT};
constexpr std::array kSupTR = {C::TR};
constexpr std::array kSupAT = {C::AT};
constexpr std::array kSupQS = {C::QS};
constexpr std::array kSupAgent = {C::Agent};
constexpr std::array kSupTCQuantity = {C::TCQuantity, C::PositiveQuantity};
constexpr std::array kSupPositive = {C::PositiveQuantity};
constexpr std::array kSupMinuend = {C::MinuendQuantity, C::TCQuantity, C::PositiveQuantity};
constexpr std::array kSupSubtrahend = {C::SubtrahendQuantity, C::TCQuantity, C::PositiveQuantity};
constexpr std::array kSupValidBT = {C::ValidBT, C::BT};
constexpr std::array kSupValidAT = {C::ValidAT, C::AT};
constexpr std::array kSupValidTR = {C::ValidTR, C::TR};
constexpr std::array kSupValidQS = {C::ValidQS, C::QS};
constexpr std::array kSupValidStructure = {C::ValidStructure, C::WordProblem};

}  // namespace

const PropertyInfo& info(PropertyName p) {
  return kProperties[static_cast<std::size_t>(p)];
}

std::span<const PropertyInfo> all_properties() { return kProperties; }

std::string_view local_name(ClassName c) {
  return kClasses[static_cast<std::size_t>(c)].local_name;
}

std::optional<ClassName> class_from_name(std::string_view local) {
  for (const auto& e : kClasses)
    if (e.local_name == local) return e.name;
  return std::nullopt;
}

std::optional<PropertyName> property_from_name(std::string_view local) {
  for (const auto& p : kProperties)
    if (p.local_name == local) return p.name;
  return std::nullopt;
}

std::span<const ClassName> superclasses(ClassName c) {
  switch (c) {
    case C::WordProblem: return kSupWordProblem;
    case C::BT: return kSupBT;
    case C::TR: return kSupTR;
    case C::AT: return kSupAT;
    case C::QS: return kSupQS;
    case C::Agent: return kSupAgent;
    case C::TCQuantity: return kSupTCQuantity;
    case C::PositiveQuantity: return kSupPositive;
    case C::MinuendQuantity: return kSupMinuend;
    case C::SubtrahendQuantity: return kSupSubtrahend;
    case C::ValidBT: return kSupValidBT;
    case C::ValidAT: return kSupValidAT;
    case C::ValidTR: return kSupValidTR;
    case C::ValidQS: return kSupValidQS;
    case C::ValidStructure: return kSupValidStructure;
  }
  return {};
}

bool subsumes(ClassName super, ClassName sub) {
  const auto sups = superclasses(sub);
  return std::find(sups.begin(), sups.end(), super) != sups.end();
}

Sort sort_of(ClassName c) { return kClasses[static_cast<std::size_t>(c)].sort; }

std::optional<ClassName> valid_class_for(ClassName sentence_kind) {
  switch (sentence_kind) {
    case C::BT: return C::ValidBT;
    case C::TR: return C::ValidTR;
    case C::AT: return C::ValidAT;
    case C::QS: return C::ValidQS;
    default: return std::nullopt;
  }
}

}  // namespace tcawp
