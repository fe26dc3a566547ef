#pragma once

#include <stdexcept>
#include <string>

namespace tcawp {

// Every library failure derives from Error; kind() is the stable name used in
// JSONL output ("ExtractionError", "RepairFailed", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TCAWP_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

TCAWP_DEFINE_ERROR(ParseError);
TCAWP_DEFINE_ERROR(DomainRangeViolation);
TCAWP_DEFINE_ERROR(DuplicateId);
TCAWP_DEFINE_ERROR(NormalizationError);
TCAWP_DEFINE_ERROR(TooManyAgents);
TCAWP_DEFINE_ERROR(NoSentences);
TCAWP_DEFINE_ERROR(UnmappedPlaceholder);
TCAWP_DEFINE_ERROR(Unclassifiable);
TCAWP_DEFINE_ERROR(ExtractionError);
TCAWP_DEFINE_ERROR(EmptyCorpus);
TCAWP_DEFINE_ERROR(NotApplicable);
TCAWP_DEFINE_ERROR(UnknownFromAgent);
TCAWP_DEFINE_ERROR(RepairFailed);
TCAWP_DEFINE_ERROR(AmbiguousGroundTruth);
TCAWP_DEFINE_ERROR(InfeasibleCombination);
TCAWP_DEFINE_ERROR(IncompleteTriples);
TCAWP_DEFINE_ERROR(UnsolvableState);
TCAWP_DEFINE_ERROR(InvalidSpec);

#undef TCAWP_DEFINE_ERROR

// Line-numbered JSONL schema failure.
class SchemaError : public Error {
 public:
  SchemaError(std::size_t line, const std::string& message)
      : Error("SchemaError", "line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tcawp
