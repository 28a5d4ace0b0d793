#include "common/error.hpp"

#include <array>

namespace semreg {
namespace {

struct CodeName {
  ErrorCode code;
  std::string_view name;
};

constexpr std::array kNames{
    CodeName{ErrorCode::kOk, "Ok"},
    CodeName{ErrorCode::kXmlMalformed, "XmlMalformed"},
    CodeName{ErrorCode::kUnsupportedConstructFatal, "UnsupportedConstructFatal"},
    CodeName{ErrorCode::kUnresolvedEntity, "UnresolvedEntity"},
    CodeName{ErrorCode::kConflictingDefinition, "ConflictingDefinition"},
    CodeName{ErrorCode::kCyclicHierarchy, "CyclicHierarchy"},
    CodeName{ErrorCode::kInvalidOntology, "InvalidOntology"},
    CodeName{ErrorCode::kUnknownClass, "UnknownClass"},
    CodeName{ErrorCode::kUnknownProperty, "UnknownProperty"},
    CodeName{ErrorCode::kCheckedTaxonomyViolation, "CheckedTaxonomyViolation"},
    CodeName{ErrorCode::kMissingOverviewDoc, "MissingOverviewDoc"},
    CodeName{ErrorCode::kUnknownBusinessKey, "UnknownBusinessKey"},
    CodeName{ErrorCode::kUnknownTModelKey, "UnknownTModelKey"},
    CodeName{ErrorCode::kNotFound, "NotFound"},
    CodeName{ErrorCode::kTModelInUse, "TModelInUse"},
    CodeName{ErrorCode::kUnknownDomain, "UnknownDomain"},
    CodeName{ErrorCode::kUnknownGenericClass, "UnknownGenericClass"},
    CodeName{ErrorCode::kOntologyMergeConflict, "OntologyMergeConflict"},
    CodeName{ErrorCode::kInvalidInstanceDocument, "InvalidInstanceDocument"},
    CodeName{ErrorCode::kFetchFailed, "FetchFailed"},
    CodeName{ErrorCode::kParseFailed, "ParseFailed"},
    CodeName{ErrorCode::kDuplicateItemId, "DuplicateItemId"},
    CodeName{ErrorCode::kTypeMismatch, "TypeMismatch"},
    CodeName{ErrorCode::kMalformedDescriptor, "MalformedDescriptor"},
    CodeName{ErrorCode::kUnsupportedSchemaType, "UnsupportedSchemaType"},
    CodeName{ErrorCode::kInvalidArgument, "InvalidArgument"},
    CodeName{ErrorCode::kUnauthorized, "Unauthorized"},
    CodeName{ErrorCode::kSnapshotCorrupt, "SnapshotCorrupt"},
    CodeName{ErrorCode::kIoError, "IoError"},
    CodeName{ErrorCode::kInternal, "Internal"},
};

}  // namespace

std::string_view error_code_name(ErrorCode code) noexcept {
  for (const auto& entry : kNames) {
    if (entry.code == code) return entry.name;
  }
  return "Internal";
}

ErrorCode error_code_from_name(std::string_view name) noexcept {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.code;
  }
  return ErrorCode::kInternal;
}

}  // namespace semreg
