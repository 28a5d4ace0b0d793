#include "semreg/semreg.h"

#include <cstring>
#include <memory>

#include "api/snapshot.hpp"
#include "api/store.hpp"
#include "server/config.hpp"
#include "server/http_server.hpp"

struct semreg_store {
  std::unique_ptr<semreg::api::Store> store;
};

struct semreg_server {
  semreg_store* owner = nullptr;
  std::unique_ptr<semreg::server::HttpServer> server;
};

namespace {

using semreg::Error;
using semreg::ErrorCode;
using semreg::codec::Json;

static_assert(static_cast<int>(ErrorCode::kXmlMalformed) == SEMREG_XML_MALFORMED);
static_assert(static_cast<int>(ErrorCode::kUnknownClass) == SEMREG_UNKNOWN_CLASS);
static_assert(static_cast<int>(ErrorCode::kCheckedTaxonomyViolation) == SEMREG_CHECKED_TAXONOMY_VIOLATION);
static_assert(static_cast<int>(ErrorCode::kUnknownDomain) == SEMREG_UNKNOWN_DOMAIN);
static_assert(static_cast<int>(ErrorCode::kFetchFailed) == SEMREG_FETCH_FAILED);
static_assert(static_cast<int>(ErrorCode::kInvalidArgument) == SEMREG_INVALID_ARGUMENT);
static_assert(static_cast<int>(ErrorCode::kInternal) == SEMREG_INTERNAL);

thread_local std::string g_last_error;

semreg_status fail(const Error& e) {
  g_last_error = semreg::codec::dump(semreg::codec::to_json(e));
  return static_cast<semreg_status>(e.code());
}

template <typename Fn>
semreg_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SEMREG_OK;
  } catch (const Error& e) {
    return fail(e);
  } catch (const std::bad_alloc&) {
    return fail(Error(ErrorCode::kInternal, "out of memory"));
  } catch (const std::exception& e) {
    return fail(Error(ErrorCode::kInternal, e.what()));
  }
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void put(char** out, const Json& j) {
  if (out != nullptr) *out = copy_out(semreg::codec::dump(j));
}

semreg::api::Store& require(semreg_store* s) {
  if (s == nullptr || !s->store) throw Error(ErrorCode::kInvalidArgument, "store handle is null");
  return *s->store;
}

std::string arg(const char* s, const char* what) {
  if (s == nullptr) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
  return s;
}

std::string opt(const char* s) { return s == nullptr ? std::string() : std::string(s); }

Json config_to_json(const semreg::server::ServerConfig& c) {
  Json domains = Json::array();
  for (const auto& d : c.domains) domains.push_back({{"id", d.id}, {"ontology", d.ontology}, {"taxonomies", d.taxonomies}});
  return {{"host", c.host},
          {"port", c.port},
          {"listen", c.host + ":" + std::to_string(c.port)},
          {"data_dir", c.data_dir ? Json(*c.data_dir) : Json(nullptr)},
          {"token", c.token},
          {"public_base", c.effective_public_base()},
          {"catalog_root", c.catalog_root},
          {"domains", domains}};
}

semreg::server::ServerConfig config_from_json(const Json& j) {
  semreg::server::ServerConfig c;
  c.host = j.value("host", c.host);
  c.port = j.value("port", c.port);
  if (auto it = j.find("data_dir"); it != j.end() && it->is_string()) c.data_dir = it->get<std::string>();
  c.token = j.value("token", "");
  c.public_base = j.value("public_base", "");
  c.catalog_root = j.value("catalog_root", ".");
  for (const auto& d : j.value("domains", Json::array())) {
    c.domains.push_back({d.at("id").get<std::string>(), d.value("ontology", std::vector<std::string>{}),
                         d.value("taxonomies", std::vector<std::string>{})});
  }
  return c;
}

}  // namespace

extern "C" {

const char* semreg_status_name(semreg_status status) {
  const auto name = semreg::error_code_name(static_cast<ErrorCode>(status));
  return name.data();
}

const char* semreg_last_error(void) { return g_last_error.c_str(); }

void semreg_string_free(char* s) { std::free(s); }

const char* semreg_version(void) { return "1.0.0"; }

semreg_status semreg_open(const char* data_dir, const char* options_json, semreg_store** out) {
  return guarded([&] {
    if (out == nullptr) throw Error(ErrorCode::kInvalidArgument, "out handle must not be null");
    *out = nullptr;
    semreg::api::StoreOptions options;
    if (data_dir != nullptr && *data_dir) options.data_dir = data_dir;
    if (options_json != nullptr && *options_json) {
      const Json j = semreg::codec::parse(options_json);
      if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "options must be a JSON object");
      options.public_base = j.value("public_base", options.public_base);
      options.catalog_root = j.value("catalog_root", options.catalog_root);
      if (auto it = j.find("seed"); it != j.end()) {
        try {
          options.seed = it->is_string() ? std::stoull(it->get<std::string>()) : it->get<std::uint64_t>();
        } catch (const std::exception&) {
          throw Error(ErrorCode::kInvalidArgument, "seed must be an unsigned 64-bit integer");
        }
      }
    }
    auto handle = std::make_unique<semreg_store>();
    handle->store = std::make_unique<semreg::api::Store>(std::move(options));
    *out = handle.release();
  });
}

void semreg_close(semreg_store* store) { delete store; }

semreg_status semreg_load_ontology_files(semreg_store* store, const char* domain, const char* const* paths,
                                         size_t count, char** out_json) {
  return guarded([&] {
    std::vector<std::string> files;
    for (size_t i = 0; i < count; ++i) files.push_back(arg(paths[i], "path"));
    put(out_json, require(store).load_ontology_files(arg(domain, "domain"), files));
  });
}

semreg_status semreg_load_ontology(semreg_store* store, const char* domain, const char* documents_json,
                                   char** out_json) {
  return guarded([&] {
    const Json j = semreg::codec::parse(arg(documents_json, "documents"));
    if (!j.is_array()) throw Error(ErrorCode::kInvalidArgument, "documents must be a JSON array");
    std::vector<semreg::api::DocumentSource> docs;
    for (const auto& d : j) {
      if (!d.is_object() || !d.contains("content")) {
        throw Error(ErrorCode::kInvalidArgument, "each document needs a \"content\" field");
      }
      docs.push_back({d.at("content").get<std::string>(), d.value("base", std::string()),
                      d.value("source_id", std::string())});
    }
    put(out_json, require(store).load_ontology(arg(domain, "domain"), std::move(docs)));
  });
}

semreg_status semreg_load_taxonomy(semreg_store* store, const char* text, char** out_json) {
  return guarded([&] { put(out_json, require(store).load_taxonomy(arg(text, "taxonomy"))); });
}

semreg_status semreg_publish(semreg_store* store, const char* kind, const char* draft_json, char** out_json) {
  return guarded([&] {
    put(out_json, require(store).publish(arg(kind, "kind"), semreg::codec::parse(arg(draft_json, "draft"))));
  });
}

semreg_status semreg_get(semreg_store* store, const char* kind, const char* key, char** out_json) {
  return guarded([&] { put(out_json, require(store).get(arg(kind, "kind"), arg(key, "key"))); });
}

semreg_status semreg_delete(semreg_store* store, const char* kind, const char* key) {
  return guarded([&] { require(store).remove(arg(kind, "kind"), arg(key, "key")); });
}

semreg_status semreg_find_services(semreg_store* store, const char* request_json, char** out_json) {
  return guarded([&] {
    put(out_json, require(store).find_services(semreg::codec::parse(arg(request_json, "request"))));
  });
}

semreg_status semreg_find_tmodels(semreg_store* store, const char* request_json, char** out_json) {
  return guarded([&] {
    put(out_json, require(store).find_tmodels(semreg::codec::parse(arg(request_json, "request"))));
  });
}

semreg_status semreg_register(semreg_store* store, const char* domain, const char* request_json, char** out_json) {
  return guarded([&] {
    put(out_json, require(store).register_service(opt(domain), semreg::codec::parse(arg(request_json, "request"))));
  });
}

semreg_status semreg_discover(semreg_store* store, const char* domain, const char* mode, const char* class_name,
                              const char* predicates_json, char** out_json) {
  return guarded([&] {
    const Json preds = predicates_json != nullptr && *predicates_json ? semreg::codec::parse(predicates_json)
                                                                      : Json::array();
    put(out_json, require(store).discover(opt(domain), arg(mode, "mode"), arg(class_name, "class"), preds));
  });
}

semreg_status semreg_schema(semreg_store* store, const char* domain, char** out_xml) {
  return guarded([&] {
    const std::string xml = require(store).schema(opt(domain));
    if (out_xml != nullptr) *out_xml = copy_out(xml);
  });
}

semreg_status semreg_domains(semreg_store* store, char** out_json) {
  return guarded([&] { put(out_json, require(store).domains()); });
}

semreg_status semreg_integrity(semreg_store* store, char** out_json) {
  return guarded([&] { put(out_json, require(store).integrity()); });
}

semreg_status semreg_snapshot(semreg_store* store, const char* path, char** out_json) {
  return guarded([&] {
    std::optional<std::string> p;
    if (path != nullptr && *path) p = path;
    put(out_json, require(store).save_snapshot(p));
  });
}

semreg_status semreg_config_load(const char* path, char** out_json) {
  return guarded([&] {
    auto config = path != nullptr && *path ? semreg::server::load_config(path) : semreg::server::ServerConfig{};
    semreg::server::apply_environment(config);
    semreg::server::check_config(config);
    put(out_json, config_to_json(config));
  });
}

semreg_status semreg_seed_domains(semreg_store* store, const char* config_json) {
  return guarded([&] {
    const Json j = semreg::codec::parse(arg(config_json, "config"));
    semreg::server::seed_domains(require(store), config_from_json(j));
  });
}

semreg_status semreg_server_start(semreg_store* store, const char* host, int port, const char* token,
                                  semreg_server** out) {
  return guarded([&] {
    if (out == nullptr) throw Error(ErrorCode::kInvalidArgument, "out handle must not be null");
    *out = nullptr;
    auto handle = std::make_unique<semreg_server>();
    handle->owner = store;
    handle->server = std::make_unique<semreg::server::HttpServer>(require(store), arg(token, "token"));
    handle->server->bind(host != nullptr && *host ? host : "127.0.0.1", port);
    handle->server->start();
    *out = handle.release();
  });
}

int semreg_server_port(const semreg_server* server) {
  return server == nullptr || !server->server ? -1 : server->server->port();
}

semreg_status semreg_server_stop(semreg_server* server) {
  std::unique_ptr<semreg_server> owned(server);
  return guarded([&] {
    if (!owned) return;
    owned->server->stop();
    auto& store = require(owned->owner);
    if (store.snapshot_path()) store.save_snapshot();
  });
}

}  // extern "C"
