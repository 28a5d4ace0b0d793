#include "api/snapshot.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ontology/parser.hpp"

namespace semreg::snapshot {
namespace {

using codec::Json;

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(ErrorCode::kSnapshotCorrupt, "snapshot is corrupt: " + what);
}

std::uint64_t to_u64(const Json& j, const char* field) {
  try {
    return std::stoull(j.at(field).get<std::string>());
  } catch (const std::exception&) {
    corrupt(std::string("bad ") + field);
  }
}

}  // namespace

Json encode(const discovery::State& state) {
  const auto& reg = state.registry;
  Json taxonomies = Json::array();
  for (const auto& [_, t] : reg.taxonomies()) taxonomies.push_back(codec::to_json(t));
  Json tmodels = Json::array();
  for (const auto& [_, t] : reg.tmodels()) tmodels.push_back(codec::to_json(t));
  Json businesses = Json::array();
  for (const auto& [_, b] : reg.businesses()) businesses.push_back(codec::to_json(b));
  Json services = Json::array();
  for (const auto& [_, s] : reg.services()) services.push_back(codec::to_json(s));

  Json domains = Json::array();
  for (const auto& [id, d] : state.domains) {
    Json docs = Json::array();
    for (const auto& doc : d.documents) {
      docs.push_back({{"source_id", doc->source_id}, {"base", doc->base}, {"content", onto::serialize(*doc)}});
    }
    Json regs = Json::array();
    for (const auto& r : d.registrations) {
      regs.push_back({{"instance", r.instance.str()}, {"service_key", r.service_key}, {"document_id", r.document_id}});
    }
    domains.push_back({{"id", d.id},
                       {"schema_url", d.schema_url},
                       {"schema_tmodel_key", d.schema_tmodel_key},
                       {"version", d.version},
                       {"documents", docs},
                       {"registrations", regs}});
  }
  return {{"format", kFormat},
          {"version", kVersion},
          {"public_base", state.public_base},
          {"key_seed", std::to_string(reg.key_generator().seed())},
          {"key_sequence", std::to_string(reg.key_generator().sequence())},
          {"taxonomies", taxonomies},
          {"tmodels", tmodels},
          {"businesses", businesses},
          {"services", services},
          {"domains", domains}};
}

discovery::State decode(const Json& j) {
  if (!j.is_object() || j.value("format", "") != kFormat) corrupt("not a semreg snapshot");
  if (j.value("version", 0) != kVersion) corrupt("unsupported version");
  discovery::State state;
  try {
    std::vector<registry::Taxonomy> taxonomies;
    std::vector<registry::TModel> tmodels;
    std::vector<registry::BusinessEntity> businesses;
    std::vector<registry::BusinessService> services;
    for (const auto& t : j.at("taxonomies")) taxonomies.push_back(codec::taxonomy_from_json(t));
    for (const auto& t : j.at("tmodels")) tmodels.push_back(codec::tmodel_from_json(t));
    for (const auto& b : j.at("businesses")) businesses.push_back(codec::business_from_json(b));
    for (const auto& s : j.at("services")) services.push_back(codec::service_from_json(s));
    state.public_base = j.at("public_base").get<std::string>();
    state.registry = registry::Registry::restore(KeyGenerator(to_u64(j, "key_seed"), to_u64(j, "key_sequence")),
                                                 std::move(taxonomies), std::move(tmodels), std::move(businesses),
                                                 std::move(services));
    for (const auto& dj : j.at("domains")) {
      discovery::Domain d;
      d.id = dj.at("id").get<std::string>();
      d.schema_url = dj.at("schema_url").get<std::string>();
      d.schema_tmodel_key = dj.at("schema_tmodel_key").get<std::string>();
      d.version = dj.at("version").get<std::uint64_t>();
      std::vector<onto::OntologyDocument> plain;
      for (const auto& doc : dj.at("documents")) {
        auto parsed = onto::parse_document(doc.at("content").get<std::string>(), doc.at("base").get<std::string>(),
                                           doc.at("source_id").get<std::string>());
        parsed.base = doc.at("base").get<std::string>();
        parsed.warnings.clear();
        plain.push_back(parsed);
        d.documents.push_back(std::make_shared<const onto::OntologyDocument>(std::move(parsed)));
      }
      d.graph = std::make_shared<const onto::OntologyGraph>(onto::merge(plain));
      for (const auto& r : dj.at("registrations")) {
        d.registrations.push_back({Iri(r.at("instance").get<std::string>()), r.at("service_key").get<std::string>(),
                                   r.at("document_id").get<std::string>()});
      }
      const std::string id = d.id;
      if (!state.domains.emplace(id, std::move(d)).second) corrupt("domain " + id + " listed twice");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSnapshotCorrupt) throw;
    corrupt(e.what());
  } catch (const Json::exception& e) {
    corrupt(e.what());
  }
  return state;
}

std::string to_text(const discovery::State& state) { return codec::dump(encode(state), true) + "\n"; }

discovery::State from_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    corrupt(e.what());
  }
  return decode(j);
}

void write_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string(), {{"path", tmp.string()}});
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string(), {{"path", tmp.string()}});
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot replace " + path + ": " + ec.message(), {{"path", path}});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path, {{"path", path}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace semreg::snapshot
