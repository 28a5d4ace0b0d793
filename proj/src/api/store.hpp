#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "api/json_codec.hpp"
#include "catalog/catalog.hpp"
#include "discovery/semantic_registry.hpp"

namespace semreg::api {

using codec::Json;

struct StoreOptions {
  // When set, state is loaded from and saved to <data_dir>/snapshot.json.
  std::optional<std::string> data_dir;
  std::string public_base{discovery::kDefaultPublicBase};
  // Relative catalog paths resolve against this directory.
  std::string catalog_root = ".";
  std::optional<std::uint64_t> seed;
};

struct DocumentSource {
  std::string content;
  std::string base;
  std::string source_id;
};

inline constexpr std::string_view kSnapshotFile = "snapshot.json";

// Reads http(s) URIs over the network and everything else from disk.
std::shared_ptr<const catalog::ResourceFetcher> make_default_fetcher(std::string root);

// JSON-level facade over the semantic registry, shared by the C API, the CLI
// and the HTTP server. Every mutating call is persisted before it returns
// when a data directory is configured.
class Store {
 public:
  explicit Store(StoreOptions options);

  discovery::SemanticRegistry& registry() noexcept { return *registry_; }
  const StoreOptions& options() const noexcept { return options_; }
  std::optional<std::string> snapshot_path() const;

  Json load_ontology(const std::string& domain, std::vector<DocumentSource> sources);
  Json load_ontology_files(const std::string& domain, const std::vector<std::string>& paths);
  Json load_taxonomy(std::string_view text);

  // kind: tmodel | business | service
  Json publish(std::string_view kind, const Json& draft);
  Json get(std::string_view kind, std::string_view key) const;
  void remove(std::string_view kind, std::string_view key);
  // {"filters": [keyed references], "match": "all" | "any"}
  Json find_services(const Json& request) const;
  // {"name_prefix": "...", "categories": [keyed references]}
  Json find_tmodels(const Json& request) const;

  // {"instance_document": RDF/XML, "base"?, "instance_url"?, "service": {...}}
  Json register_service(const std::string& domain, const Json& request);

  // mode: functionality | complement | addon | product. An empty domain
  // selects the only domain when exactly one exists.
  Json discover(const std::string& domain, std::string_view mode, const std::string& class_name,
                const Json& predicates = Json::array()) const;

  std::string schema(const std::string& domain) const;
  Json domains() const;
  Json integrity() const;
  // Writes the current state; defaults to the data directory snapshot.
  Json save_snapshot(std::optional<std::string> path = std::nullopt) const;

  std::string resolve_domain(const std::string& domain) const;

 private:
  StoreOptions options_;
  std::unique_ptr<discovery::SemanticRegistry> registry_;
};

}  // namespace semreg::api
