#include "registry/registry.hpp"

#include <algorithm>
#include <type_traits>

#include "common/error.hpp"
#include "common/iri.hpp"

namespace semreg::registry {
namespace {

template <typename Map>
const typename Map::mapped_type& require(const Map& map, std::string_view key, std::string_view kind) {
  auto it = map.find(key);
  if (it == map.end()) {
    throw Error(ErrorCode::kNotFound, std::string(kind) + " " + std::string(key) + " not found",
                {{"key", std::string(key)}});
  }
  return it->second;
}

void require_name(const std::string& name, std::string_view kind) {
  if (name.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(kind) + " name must not be empty");
}

}  // namespace

CategoryBag::CategoryBag(std::initializer_list<KeyedReference> refs) {
  for (const auto& r : refs) add(r);
}

void CategoryBag::add(KeyedReference ref) {
  const bool dup = std::any_of(entries_.begin(), entries_.end(), [&](const KeyedReference& e) {
    return e.tmodel_key == ref.tmodel_key && e.key_value == ref.key_value;
  });
  if (!dup) entries_.push_back(std::move(ref));
}

bool CategoryBag::matches(const KeyedReference& filter) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const KeyedReference& e) {
    return e.tmodel_key == filter.tmodel_key && (filter.key_value.empty() || e.key_value == filter.key_value);
  });
}

bool CategoryBag::references(std::string_view tmodel_key) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const KeyedReference& e) { return e.tmodel_key == tmodel_key; });
}

bool TModel::is_daml_spec() const { return category_bag.matches({std::string(kUddiTypesKey), {}, std::string(kDamlSpec)}); }

bool Taxonomy::contains(std::string_view code) const {
  auto it = std::lower_bound(values.begin(), values.end(), code,
                             [](const auto& entry, std::string_view c) { return entry.first < c; });
  return it != values.end() && it->first == code;
}

void Registry::add_taxonomy(Taxonomy taxonomy) {
  if (!is_uuid_key(taxonomy.tmodel_key)) {
    throw Error(ErrorCode::kInvalidArgument, "taxonomy key must be a lowercase UUID: " + taxonomy.tmodel_key);
  }
  require_name(taxonomy.name, "taxonomy");
  std::sort(taxonomy.values.begin(), taxonomy.values.end());
  TModel t;
  t.key = taxonomy.tmodel_key;
  t.name = taxonomy.name;
  const bool self = taxonomy.tmodel_key == kUddiTypesKey;
  if (self || tmodels_.contains(kUddiTypesKey)) {
    t.category_bag.add({std::string(kUddiTypesKey), "uddi-org:types", "categorization"});
    if (taxonomy.checked) t.category_bag.add({std::string(kUddiTypesKey), "uddi-org:types", "checked"});
  }
  const std::string key = taxonomy.tmodel_key;
  taxonomies_.insert_or_assign(key, std::move(taxonomy));
  tmodels_.insert_or_assign(key, std::move(t));
}

const Taxonomy* Registry::find_taxonomy(std::string_view tmodel_key) const {
  auto it = taxonomies_.find(tmodel_key);
  return it == taxonomies_.end() ? nullptr : &it->second;
}

void Registry::check_bag(const CategoryBag& bag) const {
  for (const auto& ref : bag.entries()) {
    if (!tmodels_.contains(ref.tmodel_key)) {
      throw Error(ErrorCode::kUnknownTModelKey, "keyed reference to unknown tModel " + ref.tmodel_key,
                  {{"tmodel_key", ref.tmodel_key}});
    }
    const Taxonomy* tax = find_taxonomy(ref.tmodel_key);
    if (tax != nullptr && tax->checked && !tax->contains(ref.key_value)) {
      throw Error(ErrorCode::kCheckedTaxonomyViolation,
                  "value \"" + ref.key_value + "\" is not in checked taxonomy " + tax->name,
                  {{"tmodel_key", ref.tmodel_key}, {"key_value", ref.key_value}, {"taxonomy", tax->name}});
    }
  }
}

TModel Registry::save_tmodel(TModel draft) {
  require_name(draft.name, "tModel");
  if (draft.overview_doc && draft.overview_doc->empty()) draft.overview_doc.reset();
  check_bag(draft.category_bag);
  if (draft.is_daml_spec() && !draft.overview_doc) {
    throw Error(ErrorCode::kMissingOverviewDoc, "damlSpec tModel " + draft.name + " needs an overview document");
  }
  if (draft.overview_doc && !is_syntactic_url(*draft.overview_doc)) {
    throw Error(ErrorCode::kInvalidArgument, "overview document is not a URL: " + *draft.overview_doc);
  }
  if (draft.key.empty()) {
    for (const auto& [key, existing] : tmodels_) {
      if (existing.name == draft.name && existing.overview_doc == draft.overview_doc &&
          existing.category_bag == draft.category_bag) {
        return existing;
      }
    }
    draft.key = keys_.next();
  } else {
    require(tmodels_, draft.key, "tModel");
  }
  tmodels_.insert_or_assign(draft.key, draft);
  return draft;
}

BusinessEntity Registry::save_business(BusinessEntity draft) {
  require_name(draft.name, "business");
  check_bag(draft.category_bag);
  if (draft.key.empty()) {
    draft.key = keys_.next();
  } else {
    require(businesses_, draft.key, "business");
  }
  businesses_.insert_or_assign(draft.key, draft);
  return draft;
}

BusinessService Registry::save_service(BusinessService draft) {
  require_name(draft.name, "service");
  if (!businesses_.contains(draft.business_key)) {
    throw Error(ErrorCode::kUnknownBusinessKey, "unknown business " + draft.business_key,
                {{"business_key", draft.business_key}});
  }
  for (const auto& url : draft.binding_urls) {
    if (!is_syntactic_url(url)) throw Error(ErrorCode::kInvalidArgument, "binding is not a URL: " + url);
  }
  check_bag(draft.category_bag);
  if (draft.key.empty()) {
    draft.key = keys_.next();
  } else {
    require(services_, draft.key, "service");
  }
  services_.insert_or_assign(draft.key, draft);
  return draft;
}

const TModel& Registry::get_tmodel(std::string_view key) const { return require(tmodels_, key, "tModel"); }
const BusinessEntity& Registry::get_business(std::string_view key) const {
  return require(businesses_, key, "business");
}
const BusinessService& Registry::get_service(std::string_view key) const {
  return require(services_, key, "service");
}

std::vector<BusinessService> Registry::find_services(std::span<const KeyedReference> filters, MatchMode mode) const {
  if (filters.empty()) throw Error(ErrorCode::kInvalidArgument, "find_services needs at least one filter");
  for (const auto& f : filters) {
    if (!tmodels_.contains(f.tmodel_key)) {
      throw Error(ErrorCode::kUnknownTModelKey, "filter references unknown tModel " + f.tmodel_key,
                  {{"tmodel_key", f.tmodel_key}});
    }
  }
  std::vector<BusinessService> out;
  for (const auto& [key, service] : services_) {
    auto hit = [&](const KeyedReference& f) { return service.category_bag.matches(f); };
    const bool ok = mode == MatchMode::kAll ? std::all_of(filters.begin(), filters.end(), hit)
                                            : std::any_of(filters.begin(), filters.end(), hit);
    if (ok) out.push_back(service);
  }
  return out;
}

std::vector<TModel> Registry::find_tmodels(const TModelQuery& query) const {
  std::vector<TModel> out;
  for (const auto& [key, t] : tmodels_) {
    if (!t.name.starts_with(query.name_prefix)) continue;
    const bool cats = std::all_of(query.categories.begin(), query.categories.end(),
                                  [&](const KeyedReference& f) { return t.category_bag.matches(f); });
    if (cats) out.push_back(t);
  }
  return out;
}

void Registry::delete_service(std::string_view key) {
  require(services_, key, "service");
  services_.erase(services_.find(key));
}

bool Registry::tmodel_referenced(std::string_view key) const {
  auto in = [&](const auto& map) {
    return std::any_of(map.begin(), map.end(), [&](const auto& kv) {
      // A tModel classifying itself (uddi-org:types) does not pin itself.
      if constexpr (std::is_same_v<std::decay_t<decltype(kv.second)>, TModel>) {
        if (kv.first == key) return false;
      }
      return kv.second.category_bag.references(key);
    });
  };
  return in(tmodels_) || in(businesses_) || in(services_);
}

void Registry::delete_tmodel(std::string_view key) {
  require(tmodels_, key, "tModel");
  if (tmodel_referenced(key)) {
    throw Error(ErrorCode::kTModelInUse, "tModel " + std::string(key) + " is referenced by a category bag",
                {{"key", std::string(key)}});
  }
  tmodels_.erase(tmodels_.find(key));
  if (auto it = taxonomies_.find(key); it != taxonomies_.end()) taxonomies_.erase(it);
}

std::vector<std::string> Registry::integrity_violations() const {
  std::vector<std::string> out;
  auto walk = [&](std::string_view owner, const CategoryBag& bag) {
    for (const auto& ref : bag.entries()) {
      if (!tmodels_.contains(ref.tmodel_key)) {
        out.push_back(std::string(owner) + " references missing tModel " + ref.tmodel_key);
      }
    }
  };
  for (const auto& [k, t] : tmodels_) walk("tModel " + k, t.category_bag);
  for (const auto& [k, b] : businesses_) walk("business " + k, b.category_bag);
  for (const auto& [k, s] : services_) {
    walk("service " + k, s.category_bag);
    if (!businesses_.contains(s.business_key)) out.push_back("service " + k + " references missing business");
  }
  return out;
}

Registry Registry::restore(KeyGenerator keys, std::vector<Taxonomy> taxonomies, std::vector<TModel> tmodels,
                           std::vector<BusinessEntity> businesses, std::vector<BusinessService> services) {
  Registry r;
  r.keys_ = keys;
  for (auto& t : taxonomies) {
    std::string k = t.tmodel_key;
    r.taxonomies_.insert_or_assign(std::move(k), std::move(t));
  }
  for (auto& t : tmodels) {
    std::string k = t.key;
    r.tmodels_.insert_or_assign(std::move(k), std::move(t));
  }
  for (auto& b : businesses) {
    std::string k = b.key;
    r.businesses_.insert_or_assign(std::move(k), std::move(b));
  }
  for (auto& s : services) {
    std::string k = s.key;
    r.services_.insert_or_assign(std::move(k), std::move(s));
  }
  return r;
}

}  // namespace semreg::registry
