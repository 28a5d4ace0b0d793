#pragma once

#include <string>
#include <vector>

#include "ontology/model.hpp"

namespace semreg::onto {

enum class Severity { kError, kWarning };

struct Finding {
  Severity severity = Severity::kError;
  std::string code;  // CyclicHierarchy, UnresolvedReference, UniquePropertyViolation, ...
  Iri entity;
  std::string message;
  std::vector<Iri> related;  // cycle members, the unresolved reference, ...

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> errors;
  std::vector<Finding> warnings;

  bool ok() const noexcept { return errors.empty(); }
};

// Structural checks over a graph. Findings are ordered by entity id, then
// code, then message. Never throws on ontology content.
//
// Errors: CyclicHierarchy, UnresolvedReference (any reference role that is
// neither a graph entity nor declared external), UniquePropertyViolation,
// LiteralTypeMismatch (decimal-ranged property with a non-decimal literal),
// EmptyEnumeration.
// Warnings: ServiceTypeDefaulted.
ValidationReport validate(const OntologyGraph& graph);

// Every identifier the graph refers to, paired with the entity that refers to
// it. Used by validation and by the exhaustive reference-walk tests.
struct Reference {
  Iri from;
  Iri to;
  std::string role;  // "superclass", "restriction.onProperty", "instance.class", ...
};
std::vector<Reference> collect_references(const OntologyGraph& graph);

// True when `iri` names an entity of the graph or is declared external.
bool resolves(const OntologyGraph& graph, const Iri& iri);

}  // namespace semreg::onto
