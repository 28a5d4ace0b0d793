#include "api/store.hpp"

#include <filesystem>
#include <random>

#include "api/snapshot.hpp"
#include "ontology/parser.hpp"
#include "ontology/vocabulary.hpp"

namespace semreg::api {
namespace {

namespace fs = std::filesystem;

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

Json list_json(const auto& items) {
  Json out = Json::array();
  for (const auto& i : items) out.push_back(codec::to_json(i));
  return out;
}

std::vector<registry::KeyedReference> refs_field(const Json& j, const char* field, bool required) {
  std::vector<registry::KeyedReference> out;
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) {
    if (required) throw Error(ErrorCode::kInvalidArgument, std::string("missing field \"") + field + "\"");
    return out;
  }
  if (!it->is_array()) throw Error(ErrorCode::kInvalidArgument, std::string("field \"") + field + "\" must be an array");
  for (const auto& r : *it) out.push_back(codec::keyed_reference_from_json(r));
  return out;
}

std::string file_base(const std::string& path) {
  std::error_code ec;
  auto abs = fs::absolute(path, ec);
  return "file://" + (ec ? path : abs.lexically_normal().string());
}

}  // namespace

Store::Store(StoreOptions options) : options_(std::move(options)) {
  if (options_.data_dir) {
    std::error_code ec;
    fs::create_directories(*options_.data_dir, ec);
    if (ec) {
      throw Error(ErrorCode::kIoError, "cannot create data directory " + *options_.data_dir + ": " + ec.message(),
                  {{"path", *options_.data_dir}});
    }
  }
  const auto path = snapshot_path();
  if (path && fs::exists(*path)) {
    registry_ = std::make_unique<discovery::SemanticRegistry>(snapshot::from_text(snapshot::read_file(*path)));
  } else {
    registry_ = std::make_unique<discovery::SemanticRegistry>(options_.seed.value_or(fresh_seed()),
                                                              options_.public_base);
    if (path) snapshot::write_atomic(*path, snapshot::to_text(*registry_->snapshot()));
  }
  if (path) {
    registry_->set_commit_hook([p = *path](const discovery::State& s) { snapshot::write_atomic(p, snapshot::to_text(s)); });
  }
  registry_->set_fetcher(make_default_fetcher(options_.catalog_root));
}

std::optional<std::string> Store::snapshot_path() const {
  if (!options_.data_dir) return std::nullopt;
  return (fs::path(*options_.data_dir) / kSnapshotFile).string();
}

Json Store::load_ontology(const std::string& domain, std::vector<DocumentSource> sources) {
  std::vector<onto::OntologyDocument> docs;
  Json parse_warnings = Json::array();
  for (auto& src : sources) {
    auto doc = onto::parse_document(src.content, src.base, src.source_id);
    for (const auto& w : doc.warnings) {
      parse_warnings.push_back({{"source_id", doc.source_id},
                                {"code", w.code},
                                {"message", w.message},
                                {"line", w.line},
                                {"column", w.column}});
    }
    docs.push_back(std::move(doc));
  }
  auto report = registry_->load_ontology(domain, std::move(docs));
  const auto& d = registry_->snapshot()->domain(domain);
  return {{"domain", domain},
          {"version", d.version},
          {"schema_url", d.schema_url},
          {"schema_tmodel_key", d.schema_tmodel_key},
          {"validation", codec::to_json(report)},
          {"parse_warnings", parse_warnings}};
}

Json Store::load_ontology_files(const std::string& domain, const std::vector<std::string>& paths) {
  std::vector<DocumentSource> sources;
  for (const auto& p : paths) {
    sources.push_back({snapshot::read_file(p), file_base(p), fs::path(p).filename().string()});
  }
  return load_ontology(domain, std::move(sources));
}

Json Store::load_taxonomy(std::string_view text) {
  auto t = registry::parse_taxonomy(text);
  Json out = {{"tmodel_key", t.tmodel_key}, {"name", t.name}, {"checked", t.checked}, {"values", t.values.size()}};
  registry_->load_taxonomy(std::move(t));
  return out;
}

Json Store::publish(std::string_view kind, const Json& draft) {
  if (kind == "tmodel") return codec::to_json(registry_->publish_tmodel(codec::tmodel_from_json(draft)));
  if (kind == "business") return codec::to_json(registry_->publish_business(codec::business_from_json(draft)));
  if (kind == "service") return codec::to_json(registry_->publish_service(codec::service_from_json(draft)));
  throw Error(ErrorCode::kInvalidArgument, "unknown record kind " + std::string(kind));
}

Json Store::get(std::string_view kind, std::string_view key) const {
  auto s = registry_->snapshot();
  if (kind == "tmodel") return codec::to_json(s->registry.get_tmodel(key));
  if (kind == "business") return codec::to_json(s->registry.get_business(key));
  if (kind == "service") return codec::to_json(s->registry.get_service(key));
  throw Error(ErrorCode::kInvalidArgument, "unknown record kind " + std::string(kind));
}

void Store::remove(std::string_view kind, std::string_view key) {
  if (kind == "tmodel") return registry_->delete_tmodel(key);
  if (kind == "service") return registry_->delete_service(key);
  throw Error(ErrorCode::kInvalidArgument, "cannot delete records of kind " + std::string(kind));
}

Json Store::find_services(const Json& request) const {
  if (!request.is_object()) throw Error(ErrorCode::kInvalidArgument, "find request must be an object");
  const auto filters = refs_field(request, "filters", true);
  const std::string match = request.value("match", "all");
  if (match != "all" && match != "any") throw Error(ErrorCode::kInvalidArgument, "match must be \"all\" or \"any\"");
  auto s = registry_->snapshot();
  return list_json(
      s->registry.find_services(filters, match == "all" ? registry::MatchMode::kAll : registry::MatchMode::kAny));
}

Json Store::find_tmodels(const Json& request) const {
  if (!request.is_object()) throw Error(ErrorCode::kInvalidArgument, "find request must be an object");
  registry::TModelQuery q;
  q.name_prefix = request.value("name_prefix", "");
  q.categories = refs_field(request, "categories", false);
  return list_json(registry_->snapshot()->registry.find_tmodels(q));
}

Json Store::register_service(const std::string& domain, const Json& request) {
  if (!request.is_object()) throw Error(ErrorCode::kInvalidArgument, "registration request must be an object");
  auto doc_it = request.find("instance_document");
  if (doc_it == request.end() || !doc_it->is_string()) {
    throw Error(ErrorCode::kInvalidArgument, "registration needs an instance_document string");
  }
  auto svc_it = request.find("service");
  if (svc_it == request.end()) throw Error(ErrorCode::kInvalidArgument, "registration needs a service draft");

  const std::string d = resolve_domain(domain);
  discovery::RegistrationRequest r;
  r.domain = d;
  const std::string base = request.value("base", registry_->snapshot()->domain(d).schema_url);
  r.instance_document = onto::parse_document(doc_it->get<std::string>(), base);
  r.service = codec::service_from_json(*svc_it);
  if (auto u = request.find("instance_url"); u != request.end() && u->is_string()) r.instance_url = u->get<std::string>();
  return codec::to_json(registry_->register_semantic_service(std::move(r)));
}

std::string Store::resolve_domain(const std::string& domain) const {
  if (!domain.empty()) return domain;
  auto s = registry_->snapshot();
  if (s->domains.size() == 1) return s->domains.begin()->first;
  throw Error(ErrorCode::kInvalidArgument,
              s->domains.empty() ? "no domain loaded" : "several domains loaded, name one with --domain");
}

Json Store::discover(const std::string& domain, std::string_view mode, const std::string& class_name,
                     const Json& predicates) const {
  const std::string d = resolve_domain(domain);
  auto s = registry_->snapshot();
  const Iri cls = discovery::resolve_class_name(s->domain(d).schema(), class_name);
  discovery::DiscoveryReport report;
  if (mode == "functionality") {
    report = discovery::find_by_functionality(*s, d, cls);
  } else if (mode == "complement") {
    report = discovery::find_complementary(*s, d, cls);
  } else if (mode == "addon") {
    report = discovery::find_addon_product_services(*s, d, cls);
  } else if (mode == "product") {
    const catalog::CatalogQuery query(codec::predicates_from_json(predicates));
    auto fetcher = registry_->fetcher();
    report = discovery::find_by_product_instance(*s, d, cls, query, *fetcher);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown discovery mode " + std::string(mode));
  }
  Json out = codec::to_json(report);
  out["domain"] = d;
  out["mode"] = std::string(mode);
  out["class"] = cls.str();
  return out;
}

std::string Store::schema(const std::string& domain) const {
  auto s = registry_->snapshot();
  return onto::serialize(s->domain(resolve_domain(domain)).schema());
}

Json Store::domains() const {
  auto s = registry_->snapshot();
  Json out = Json::array();
  for (const auto& [id, d] : s->domains) {
    out.push_back({{"id", id},
                   {"version", d.version},
                   {"schema_url", d.schema_url},
                   {"schema_tmodel_key", d.schema_tmodel_key},
                   {"documents", d.documents.size()},
                   {"registrations", d.registrations.size()}});
  }
  return out;
}

Json Store::integrity() const {
  auto s = registry_->snapshot();
  auto refs = s->registry.integrity_violations();
  auto bindings = discovery::binding_violations(*s);
  return {{"ok", refs.empty() && bindings.empty()}, {"referential", refs}, {"bindings", bindings}};
}

Json Store::save_snapshot(std::optional<std::string> path) const {
  if (!path) path = snapshot_path();
  if (!path) throw Error(ErrorCode::kInvalidArgument, "no snapshot path and no data directory configured");
  snapshot::write_atomic(*path, snapshot::to_text(*registry_->snapshot()));
  return {{"path", *path}};
}

}  // namespace semreg::api
