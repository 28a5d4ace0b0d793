#include "server/http_server.hpp"

#include <httplib.h>

#include <thread>

#include "api/snapshot.hpp"

namespace semreg::server {
namespace {

using codec::Json;

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(codec::dump(body), "application/json");
}

void send_error(httplib::Response& res, const Error& e) { send(res, http_status(e.code()), codec::error_envelope(e)); }

Json body_json(const httplib::Request& req) {
  if (req.body.empty()) throw Error(ErrorCode::kInvalidArgument, "request body is empty");
  return codec::parse(req.body);
}

std::string query_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) {
    throw Error(ErrorCode::kInvalidArgument, std::string("missing query parameter \"") + name + "\"");
  }
  return req.get_param_value(name);
}

// Splits "http://host:port/path" for httplib.
std::pair<std::string, std::string> split_url(std::string_view uri) {
  const auto scheme_end = uri.find("://");
  const auto path_start = uri.find('/', scheme_end + 3);
  if (path_start == std::string_view::npos) return {std::string(uri), "/"};
  return {std::string(uri.substr(0, path_start)), std::string(uri.substr(path_start))};
}

class DefaultFetcher : public catalog::ResourceFetcher {
 public:
  explicit DefaultFetcher(std::string root) : files_(std::move(root)) {}

  std::string fetch(std::string_view uri) const override {
    if (!uri.starts_with("http://") && !uri.starts_with("https://")) return files_.fetch(uri);
    const std::string u(uri);
    if (uri.starts_with("https://")) {
      throw Error(ErrorCode::kFetchFailed, "https is not supported: " + u, {{"uri", u}});
    }
    auto [origin, path] = split_url(uri);
    httplib::Client client(origin);
    client.set_connection_timeout(5);
    client.set_read_timeout(10);
    auto res = client.Get(path);
    if (!res) {
      throw Error(ErrorCode::kFetchFailed, "cannot fetch " + u + ": " + httplib::to_string(res.error()), {{"uri", u}});
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kFetchFailed, "fetching " + u + " returned HTTP " + std::to_string(res->status),
                  {{"uri", u}, {"status", std::to_string(res->status)}});
    }
    return res->body;
  }

 private:
  catalog::FileFetcher files_;
};

}  // namespace
}  // namespace semreg::server

namespace semreg::api {
std::shared_ptr<const catalog::ResourceFetcher> make_default_fetcher(std::string root) {
  return std::make_shared<server::DefaultFetcher>(std::move(root));
}
}  // namespace semreg::api

namespace semreg::server {

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return 200;
    case ErrorCode::kUnauthorized: return 401;
    case ErrorCode::kNotFound:
    case ErrorCode::kUnknownDomain:
    case ErrorCode::kUnknownGenericClass:
    case ErrorCode::kUnknownClass:
    case ErrorCode::kUnknownProperty:
    case ErrorCode::kUnknownBusinessKey:
    case ErrorCode::kUnknownTModelKey: return 404;
    case ErrorCode::kTModelInUse:
    case ErrorCode::kConflictingDefinition:
    case ErrorCode::kOntologyMergeConflict: return 409;
    case ErrorCode::kCheckedTaxonomyViolation: return 422;
    case ErrorCode::kFetchFailed: return 502;
    case ErrorCode::kInternal:
    case ErrorCode::kSnapshotCorrupt:
    case ErrorCode::kIoError: return 500;
    default: return 400;
  }
}

void seed_domains(api::Store& store, const ServerConfig& config) {
  for (const auto& d : config.domains) {
    if (store.registry().snapshot()->domains.contains(d.id)) continue;
    for (const auto& t : d.taxonomies) store.load_taxonomy(snapshot::read_file(t));
    if (!d.ontology.empty()) store.load_ontology_files(d.id, d.ontology);
  }
}

struct HttpServer::Impl {
  api::Store& store;
  std::string token;
  httplib::Server server;
  std::thread thread;
  int port = -1;

  Impl(api::Store& s, std::string t) : store(s), token(std::move(t)) {}

  void authorize(const httplib::Request& req) const {
    std::string given = req.get_header_value("X-Semreg-Token");
    const std::string auth = req.get_header_value("Authorization");
    if (given.empty() && auth.starts_with("Bearer ")) given = auth.substr(7);
    if (token.empty() || given != token) throw Error(ErrorCode::kUnauthorized, "missing or wrong publisher token");
  }

  // Wraps a handler producing a payload into the envelope protocol.
  template <typename Fn>
  httplib::Server::Handler open(Fn fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
      try {
        send(res, 200, codec::ok_envelope(fn(req)));
      } catch (const Error& e) {
        send_error(res, e);
      } catch (const std::exception& e) {
        send_error(res, Error(ErrorCode::kInternal, e.what()));
      }
    };
  }

  template <typename Fn>
  httplib::Server::Handler gated(Fn fn) {
    return open([this, fn](const httplib::Request& req) {
      authorize(req);
      return fn(req);
    });
  }

  void routes() {
    server.Post("/tmodels", gated([this](const auto& req) { return store.publish("tmodel", body_json(req)); }));
    server.Post("/businesses", gated([this](const auto& req) { return store.publish("business", body_json(req)); }));
    server.Post("/services", gated([this](const auto& req) { return store.publish("service", body_json(req)); }));
    server.Post("/taxonomies", gated([this](const auto& req) { return store.load_taxonomy(req.body); }));
    server.Delete(R"(/services/([^/]+))", gated([this](const auto& req) {
                    store.remove("service", req.matches[1].str());
                    return Json{{"deleted", req.matches[1].str()}};
                  }));
    server.Delete(R"(/tmodels/([^/]+))", gated([this](const auto& req) {
                    store.remove("tmodel", req.matches[1].str());
                    return Json{{"deleted", req.matches[1].str()}};
                  }));
    server.Post(R"(/domains/([^/]+)/register)", gated([this](const auto& req) {
                  return store.register_service(req.matches[1].str(), body_json(req));
                }));
    server.Post(R"(/domains/([^/]+)/ontology)", gated([this](const auto& req) {
                  const Json body = body_json(req);
                  std::vector<api::DocumentSource> docs;
                  for (const auto& d : body.at("documents")) {
                    docs.push_back({d.at("content").get<std::string>(), d.value("base", std::string()),
                                    d.value("source_id", std::string())});
                  }
                  return store.load_ontology(req.matches[1].str(), std::move(docs));
                }));

    for (const char* kind : {"tmodel", "business", "service"}) {
      const std::string pattern = std::string("/") + kind + (std::string(kind) == "business" ? "es" : "s") +
                                  "/([^/]+)";
      server.Get(pattern, open([this, k = std::string(kind)](const auto& req) {
                   return store.get(k, req.matches[1].str());
                 }));
    }
    server.Get("/tmodels", open([this](const auto& req) {
                 return store.find_tmodels(Json{{"name_prefix", req.get_param_value("name_prefix")}});
               }));
    server.Post("/find/services", open([this](const auto& req) { return store.find_services(body_json(req)); }));
    server.Post("/find/tmodels", open([this](const auto& req) { return store.find_tmodels(body_json(req)); }));
    server.Get("/domains", open([this](const auto&) { return store.domains(); }));
    server.Get("/integrity", open([this](const auto&) { return store.integrity(); }));
    server.Get("/health", open([](const auto&) { return Json{{"healthy", true}}; }));

    server.Get(R"(/domains/([^/]+)/discover/functionality)", open([this](const auto& req) {
                 return store.discover(req.matches[1].str(), "functionality", query_param(req, "class"));
               }));
    server.Get(R"(/domains/([^/]+)/discover/complementary)", open([this](const auto& req) {
                 return store.discover(req.matches[1].str(), "complement", query_param(req, "class"));
               }));
    server.Get(R"(/domains/([^/]+)/discover/addon-products)", open([this](const auto& req) {
                 return store.discover(req.matches[1].str(), "addon", query_param(req, "product"));
               }));
    server.Post(R"(/domains/([^/]+)/discover/product-instance)", open([this](const auto& req) {
                  const Json body = body_json(req);
                  if (!body.is_object() || !body.contains("class")) {
                    throw Error(ErrorCode::kInvalidArgument, "product-instance query needs \"class\"");
                  }
                  return store.discover(req.matches[1].str(), "product", body.at("class").get<std::string>(),
                                        body.value("predicates", Json::array()));
                }));
    server.Get(R"(/domains/([^/]+)/schema)", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        res.set_content(store.schema(req.matches[1].str()), "application/rdf+xml");
      } catch (const Error& e) {
        send_error(res, e);
      }
    });
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return;
      send(res, res.status,
           codec::error_envelope(Error(res.status == 404 ? ErrorCode::kNotFound : ErrorCode::kInvalidArgument,
                                       "no route for " + req.method + " " + req.path)));
    });
  }
};

HttpServer::HttpServer(api::Store& store, std::string token) : impl_(std::make_unique<Impl>(store, std::move(token))) {
  impl_->routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::kIoError, "cannot listen on " + host + ":" + std::to_string(port),
                {{"host", host}, {"port", std::to_string(port)}});
  }
  impl_->port = bound;
  return bound;
}

void HttpServer::start() {
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int HttpServer::port() const noexcept { return impl_->port; }

}  // namespace semreg::server
