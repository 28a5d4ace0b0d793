#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catalog/catalog.hpp"
#include "ontology/model.hpp"
#include "ontology/validate.hpp"
#include "registry/registry.hpp"

namespace semreg::discovery {

inline constexpr std::string_view kDefaultPublicBase = "http://localhost:8080";

enum class BindingKind { kGenericClass, kImplementationInstance, kDomainSchema };
std::string_view binding_kind_name(BindingKind kind);

// Ties an ontology entity to its tModel. For classes and instances the
// ontology holds the key itself (a decimal tModelKey assertion); the domain
// schema binding is held by the domain record.
struct SemanticBinding {
  Iri entity;
  std::string tmodel_key;
  BindingKind kind = BindingKind::kGenericClass;

  friend bool operator==(const SemanticBinding&, const SemanticBinding&) = default;
};

enum class Via { kFunctionality, kComplement, kAddonProduct, kProductInstance };
std::string_view via_name(Via via);

struct SupportingFact {
  std::string kind;  // matched_class, implementation, tmodel_key, declared_on, add_on, unspsc, catalog_item, ...
  std::string value;

  friend bool operator==(const SupportingFact&, const SupportingFact&) = default;
};

struct Evidence {
  Iri generic_class;
  Via via = Via::kFunctionality;
  std::vector<SupportingFact> supporting;
  // Full records of matched catalog items (product-instance discovery only),
  // so callers can rank on price or any other attribute.
  std::vector<catalog::CatalogItem> matched_items;
};

struct DiscoveryResult {
  registry::BusinessService service;
  Evidence evidence;
};

struct DiscoveryWarning {
  std::string code;
  std::string subject;
  std::string message;
};

struct DiscoveryReport {
  std::vector<DiscoveryResult> results;
  std::vector<DiscoveryWarning> warnings;

  std::vector<std::string> service_keys() const;
};

struct Registration {
  Iri instance;
  std::string service_key;
  std::string document_id;

  friend bool operator==(const Registration&, const Registration&) = default;
};

// One industry domain: its source documents (upper ontology, taxonomy and
// every registered instance document) and the combined schema merged from
// them.
struct Domain {
  std::string id;
  std::string schema_url;
  std::string schema_tmodel_key;
  std::uint64_t version = 0;
  std::vector<std::shared_ptr<const onto::OntologyDocument>> documents;
  std::shared_ptr<const onto::OntologyGraph> graph;
  std::vector<Registration> registrations;

  const onto::OntologyGraph& schema() const { return *graph; }
};

struct State {
  registry::Registry registry;
  std::map<std::string, Domain, std::less<>> domains;
  std::string public_base{kDefaultPublicBase};

  const Domain& domain(std::string_view id) const;
};

struct RegistrationRequest {
  std::string domain;
  onto::OntologyDocument instance_document;
  registry::BusinessService service;
  // Where the provider hosts the instance description; defaults to a
  // fragment of the combined schema URL.
  std::optional<std::string> instance_url;
};

struct RegistrationOutcome {
  registry::BusinessService service;
  std::vector<SemanticBinding> bindings;
};

// Seeded checked taxonomies (uddi-org:types, UNSPSC subset, geography subset).
std::vector<registry::Taxonomy> builtin_taxonomies();

// Resolves a class given by IRI or by local name. Local names are tried in
// the upper-ontology namespace, then matched against unique local names of
// the domain's classes. Unresolvable names come back in the upper-ontology
// namespace so lookups fail with a message naming them.
Iri resolve_class_name(const onto::OntologyGraph& graph, std::string_view name);

// Bindings of one domain, ordered by entity.
std::vector<SemanticBinding> bindings_of(const State& state, const Domain& domain);
// Empty when bindings are bijective across all domains and every bound key
// names an existing tModel.
std::vector<std::string> binding_violations(const State& state);

// Read-side flows; pure functions over a state snapshot.
DiscoveryReport find_by_functionality(const State& state, std::string_view domain, const Iri& generic);
DiscoveryReport find_complementary(const State& state, std::string_view domain, const Iri& anchor);
DiscoveryReport find_addon_product_services(const State& state, std::string_view domain, const Iri& anchor_product);
DiscoveryReport find_by_product_instance(const State& state, std::string_view domain, const Iri& generic,
                                         const catalog::CatalogQuery& query, const catalog::ResourceFetcher& fetcher);

// Thread-safe facade. Readers take an immutable State snapshot; writers are
// serialized, build the next State on a copy and publish it in one step, so
// a failed write leaves nothing behind and readers never see partial
// updates.
class SemanticRegistry {
 public:
  explicit SemanticRegistry(std::uint64_t seed = 0, std::string public_base = std::string(kDefaultPublicBase));
  explicit SemanticRegistry(State state);

  std::shared_ptr<const State> snapshot() const;

  // Called with every committed state while the writer lock is held.
  void set_commit_hook(std::function<void(const State&)> hook);
  void set_fetcher(std::shared_ptr<const catalog::ResourceFetcher> fetcher);
  std::shared_ptr<const catalog::ResourceFetcher> fetcher() const;

  // Adds (or replaces, by source_id) documents of a domain, creating the
  // domain and its damlSpec schema tModel on first use. Rejects the change
  // with InvalidOntology when the merged graph has validation errors.
  onto::ValidationReport load_ontology(std::string_view domain, std::vector<onto::OntologyDocument> documents);
  void load_taxonomy(registry::Taxonomy taxonomy);

  registry::TModel publish_tmodel(registry::TModel draft);
  registry::BusinessEntity publish_business(registry::BusinessEntity draft);
  registry::BusinessService publish_service(registry::BusinessService draft);
  // Deleting a semantically registered service also removes its instance
  // document from the combined schema and its instance tModel.
  void delete_service(std::string_view key);
  // Refused with TModelInUse for tModels bound to ontology entities.
  void delete_tmodel(std::string_view key);

  RegistrationOutcome register_semantic_service(RegistrationRequest request);

  DiscoveryReport find_by_functionality(std::string_view domain, std::string_view generic) const;
  DiscoveryReport find_complementary(std::string_view domain, std::string_view anchor) const;
  DiscoveryReport find_addon_product_services(std::string_view domain, std::string_view anchor_product) const;
  DiscoveryReport find_by_product_instance(std::string_view domain, std::string_view generic,
                                           const catalog::CatalogQuery& query) const;

 private:
  template <typename Fn>
  auto write(Fn&& fn);

  mutable std::mutex state_mutex_;  // guards current_ and fetcher_
  std::mutex write_mutex_;
  std::shared_ptr<const State> current_;
  std::shared_ptr<const catalog::ResourceFetcher> fetcher_;
  std::function<void(const State&)> commit_hook_;
};

}  // namespace semreg::discovery
