#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcawp {

enum class IssueClass {
  QsObjTypeMismatch,
  TrSameAgents,
  TrUnknownAgent,
  TrObjTypeMismatch,
  AtObjTypeMismatch,
  AtValueMismatch,
  TransferExceedsOwned,
  StructureBroken,  // the one unrepairable class
};

inline constexpr IssueClass kRepairableIssues[] = {
    IssueClass::QsObjTypeMismatch, IssueClass::TrSameAgents,      IssueClass::TrUnknownAgent,
    IssueClass::TrObjTypeMismatch, IssueClass::AtObjTypeMismatch, IssueClass::TransferExceedsOwned,
};

std::string_view issue_name(IssueClass c);
std::optional<IssueClass> issue_from_name(std::string_view name);

// An issue located at a 1-based sentence index.
struct Issue {
  IssueClass cls;
  int sentence = 0;
  auto operator<=>(const Issue&) const = default;
};

std::string to_string(const Issue& i);

}  // namespace tcawp
