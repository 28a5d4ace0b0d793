#pragma once

#include <json.hpp>

#include "catalog/catalog.hpp"
#include "common/error.hpp"
#include "discovery/semantic_registry.hpp"
#include "ontology/validate.hpp"
#include "registry/registry.hpp"

// JSON shapes shared by the C API, the HTTP server and the snapshot file.
namespace semreg::codec {

using Json = nlohmann::json;

Json to_json(const registry::KeyedReference& ref);
Json to_json(const registry::CategoryBag& bag);
Json to_json(const registry::TModel& t);
Json to_json(const registry::BusinessEntity& b);
Json to_json(const registry::BusinessService& s);
Json to_json(const registry::Taxonomy& t);
Json to_json(const catalog::CatalogItem& item);
Json to_json(const discovery::DiscoveryReport& report);
Json to_json(const discovery::RegistrationOutcome& outcome);
Json to_json(const discovery::SemanticBinding& binding);
Json to_json(const onto::ValidationReport& report);
Json to_json(const Error& error);

// Drafts from request bodies. Throw InvalidArgument on wrong shapes.
registry::KeyedReference keyed_reference_from_json(const Json& j);
registry::CategoryBag category_bag_from_json(const Json& j);
registry::TModel tmodel_from_json(const Json& j);
registry::BusinessEntity business_from_json(const Json& j);
registry::BusinessService service_from_json(const Json& j);
registry::Taxonomy taxonomy_from_json(const Json& j);
catalog::Predicate predicate_from_json(const Json& j);
std::vector<catalog::Predicate> predicates_from_json(const Json& j);

// Parses text as JSON, mapping syntax errors to InvalidArgument.
Json parse(std::string_view text);
// Deterministic rendering (keys sorted, no trailing newline).
std::string dump(const Json& j, bool pretty = false);

Json ok_envelope(Json payload);
Json error_envelope(const Error& error);

}  // namespace semreg::codec
