#include "tcawp/issues.hpp"

#include <array>
#include <utility>

namespace tcawp {
namespace {
constexpr std::array<std::pair<IssueClass, std::string_view>, 8> kNames = {{
    {IssueClass::QsObjTypeMismatch, "QsObjTypeMismatch"},
    {IssueClass::TrSameAgents, "TrSameAgents"},
    {IssueClass::TrUnknownAgent, "TrUnknownAgent"},
    {IssueClass::TrObjTypeMismatch, "TrObjTypeMismatch"},
    {IssueClass::AtObjTypeMismatch, "AtObjTypeMismatch"},
    {IssueClass::AtValueMismatch, "AtValueMismatch"},
    {IssueClass::TransferExceedsOwned, "TransferExceedsOwned"},
    {IssueClass::StructureBroken, "StructureBroken"},
}};
}  // namespace

std::string_view issue_name(IssueClass c) { return kNames[static_cast<std::size_t>(c)].second; }

std::optional<IssueClass> issue_from_name(std::string_view name) {
  for (const auto& [c, n] : kNames)
    if (n == name) return c;
  return std::nullopt;
}

std::string to_string(const Issue& i) {
  return std::string(issue_name(i.cls)) + "@S" + std::to_string(i.sentence);
}

}  // namespace tcawp
