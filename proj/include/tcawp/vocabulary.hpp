#pragma once

// TC-Ontology terminology: the closed class and property sets, the property
// domain/range table, and subsumption.

#include <array>
#include <optional>
#include <span>
#include <string_view>

namespace tcawp {

enum class ClassName {
  WordProblem,
  BT,
  TR,
  AT,
  QS,
  Agent,
  TCQuantity,
  PositiveQuantity,
  MinuendQuantity,
  SubtrahendQuantity,
  ValidBT,
  ValidAT,
  ValidTR,
  ValidQS,
  ValidStructure,
};

inline constexpr std::array kAllClasses = {
    ClassName::WordProblem,      ClassName::BT,
    ClassName::TR,               ClassName::AT,
    ClassName::QS,               ClassName::Agent,
    ClassName::TCQuantity,       ClassName::PositiveQuantity,
    ClassName::MinuendQuantity,  ClassName::SubtrahendQuantity,
    ClassName::ValidBT,          ClassName::ValidAT,
    ClassName::ValidTR,          ClassName::ValidQS,
    ClassName::ValidStructure,
};

enum class PropertyName {
  // object properties
  hasQuant,
  hasBT,
  hasAT,
  hasTRprop,
  hasQS,
  involvesAgentBT,
  involvesAgentTR,
  involvesAgentAT,
  fromAgent,
  toAgent,
  transfersTo,
  hasGained,
  hasLost,
  hasQuestion,
  asksAbout,
  involvesTRQuantity,
  involvesBTQuantity,
  involvesATQuantity,
  isOwnedBy,
  isGainedBy,
  isLostBy,
  // data properties
  inquiresState,
  quantValue,
  quantType,
  asksObjType,
};

enum class PropertyKind { Object, Data };
enum class LiteralKind { String, Decimal };

struct PropertyInfo {
  PropertyName name;
  std::string_view local_name;
  PropertyKind kind;
  ClassName domain;
  std::optional<ClassName> range_class;    // object properties
  std::optional<LiteralKind> range_literal;  // data properties
};

const PropertyInfo& info(PropertyName p);
std::span<const PropertyInfo> all_properties();

std::string_view local_name(ClassName c);
std::optional<ClassName> class_from_name(std::string_view local);
std::optional<PropertyName> property_from_name(std::string_view local);

// Reflexive-transitive superclasses, most specific first.
std::span<const ClassName> superclasses(ClassName c);
bool subsumes(ClassName super, ClassName sub);

// Partition of the classes into mutually disjoint sorts. Two classes may share
// an individual only when they fall in the same sort.
enum class Sort { WordProblem, BT, TR, AT, QS, Agent, Quantity };
Sort sort_of(ClassName c);

// Sentence-kind class for a sort, and the matching Valid* class.
std::optional<ClassName> valid_class_for(ClassName sentence_kind);

}  // namespace tcawp
