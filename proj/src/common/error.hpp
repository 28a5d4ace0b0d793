#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semreg {

// Error vocabulary shared by every module. The names are surfaced verbatim
// through the C API, the CLI and the HTTP envelopes.
enum class ErrorCode {
  kOk = 0,
  // ontology-core
  kXmlMalformed,
  kUnsupportedConstructFatal,
  kUnresolvedEntity,
  kConflictingDefinition,
  kCyclicHierarchy,
  kInvalidOntology,
  // reasoner
  kUnknownClass,
  kUnknownProperty,
  // registry
  kCheckedTaxonomyViolation,
  kMissingOverviewDoc,
  kUnknownBusinessKey,
  kUnknownTModelKey,
  kNotFound,
  kTModelInUse,
  // semantic-discovery
  kUnknownDomain,
  kUnknownGenericClass,
  kOntologyMergeConflict,
  kInvalidInstanceDocument,
  // catalog
  kFetchFailed,
  kParseFailed,
  kDuplicateItemId,
  kTypeMismatch,
  kMalformedDescriptor,
  kUnsupportedSchemaType,
  // server-cli
  kInvalidArgument,
  kUnauthorized,
  kSnapshotCorrupt,
  kIoError,
  kInternal,
};

std::string_view error_code_name(ErrorCode code) noexcept;
// Inverse of error_code_name; returns kInternal for unknown names.
ErrorCode error_code_from_name(std::string_view name) noexcept;

struct ErrorDetail {
  std::string key;
  std::string value;
  friend bool operator==(const ErrorDetail&, const ErrorDetail&) = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::vector<ErrorDetail> details = {})
      : std::runtime_error(std::move(message)), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<ErrorDetail>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<ErrorDetail> details_;
};

}  // namespace semreg
