#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "common/keys.hpp"

namespace semreg::registry {

// Fixed keys of the seeded taxonomy tModels.
inline constexpr std::string_view kUddiTypesKey = "c1acf26d-9672-4404-9d70-39b756e62ab4";
inline constexpr std::string_view kUnspscKey = "cd153257-086a-4237-b336-6bdcbdcc6634";
inline constexpr std::string_view kGeographyKey = "4e49a8d6-d5a2-4fc2-93a0-0411d8d19e88";

inline constexpr std::string_view kDamlSpec = "damlSpec";
inline constexpr std::string_view kWsdlSpec = "wsdlSpec";

struct KeyedReference {
  std::string tmodel_key;
  std::string key_name;
  std::string key_value;

  friend auto operator<=>(const KeyedReference&, const KeyedReference&) = default;
};

// Ordered list of classifications. Entries with the same (tmodel_key,
// key_value) collapse to the first one added.
class CategoryBag {
 public:
  CategoryBag() = default;
  CategoryBag(std::initializer_list<KeyedReference> refs);

  void add(KeyedReference ref);
  const std::vector<KeyedReference>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  // A filter with an empty key_value matches any value of its tModel.
  bool matches(const KeyedReference& filter) const;
  bool references(std::string_view tmodel_key) const;

  friend bool operator==(const CategoryBag&, const CategoryBag&) = default;

 private:
  std::vector<KeyedReference> entries_;
};

struct TModel {
  std::string key;
  std::string name;
  std::optional<std::string> overview_doc;
  CategoryBag category_bag;

  bool is_daml_spec() const;
  friend bool operator==(const TModel&, const TModel&) = default;
};

struct BusinessEntity {
  std::string key;
  std::string name;
  std::string contact;
  CategoryBag category_bag;

  friend bool operator==(const BusinessEntity&, const BusinessEntity&) = default;
};

struct BusinessService {
  std::string key;
  std::string business_key;
  std::string name;
  std::vector<std::string> binding_urls;
  CategoryBag category_bag;

  friend bool operator==(const BusinessService&, const BusinessService&) = default;
};

// A value set that keyed references against its tModel are checked against.
struct Taxonomy {
  std::string tmodel_key;
  std::string name;
  bool checked = true;
  std::vector<std::pair<std::string, std::string>> values;  // (code, label), sorted by code

  bool contains(std::string_view code) const;
  friend bool operator==(const Taxonomy&, const Taxonomy&) = default;
};

// Parses a taxonomy seed file:
//   # name: unspsc-org:unspsc
//   # tmodel-key: cd153257-...
//   # checked: true
//   43211507<TAB>Desktop computers
Taxonomy parse_taxonomy(std::string_view text);
std::string format_taxonomy(const Taxonomy& taxonomy);

enum class MatchMode { kAll, kAny };

struct TModelQuery {
  std::string name_prefix;
  std::vector<KeyedReference> categories;  // all must match
};

// UDDI-lite store. A plain value type: copying gives an independent
// snapshot, which is how the facade layers consistent reads over it.
class Registry {
 public:
  explicit Registry(std::uint64_t seed = 0) : keys_(seed) {}

  // Registers the taxonomy's tModel under its fixed key (or replaces it).
  void add_taxonomy(Taxonomy taxonomy);
  const Taxonomy* find_taxonomy(std::string_view tmodel_key) const;

  // Assigns a key when draft.key is empty; updates the record otherwise.
  // Saving a keyless draft identical to an existing tModel of the same name
  // returns the existing record.
  TModel save_tmodel(TModel draft);
  BusinessEntity save_business(BusinessEntity draft);
  BusinessService save_service(BusinessService draft);

  const TModel& get_tmodel(std::string_view key) const;
  const BusinessEntity& get_business(std::string_view key) const;
  const BusinessService& get_service(std::string_view key) const;

  std::vector<BusinessService> find_services(std::span<const KeyedReference> filters, MatchMode mode) const;
  std::vector<TModel> find_tmodels(const TModelQuery& query) const;

  void delete_service(std::string_view key);
  // Refused with TModelInUse while any category bag references the tModel.
  void delete_tmodel(std::string_view key);

  // Full-store walk: every keyed reference and business key resolves.
  std::vector<std::string> integrity_violations() const;

  const std::map<std::string, TModel, std::less<>>& tmodels() const noexcept { return tmodels_; }
  const std::map<std::string, BusinessEntity, std::less<>>& businesses() const noexcept { return businesses_; }
  const std::map<std::string, BusinessService, std::less<>>& services() const noexcept { return services_; }
  const std::map<std::string, Taxonomy, std::less<>>& taxonomies() const noexcept { return taxonomies_; }
  const KeyGenerator& key_generator() const noexcept { return keys_; }

  // Rebuilds a registry from persisted records without re-running checks.
  static Registry restore(KeyGenerator keys, std::vector<Taxonomy> taxonomies, std::vector<TModel> tmodels,
                          std::vector<BusinessEntity> businesses, std::vector<BusinessService> services);

 private:
  void check_bag(const CategoryBag& bag) const;
  bool tmodel_referenced(std::string_view key) const;

  KeyGenerator keys_;
  std::map<std::string, Taxonomy, std::less<>> taxonomies_;
  std::map<std::string, TModel, std::less<>> tmodels_;
  std::map<std::string, BusinessEntity, std::less<>> businesses_;
  std::map<std::string, BusinessService, std::less<>> services_;
};

}  // namespace semreg::registry
