// semreg: command-line front end over the C interface.
#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "semreg/semreg.h"

namespace {

using Json = nlohmann::json;

constexpr const char* kUnspscKey = "cd153257-086a-4237-b336-6bdcbdcc6634";
constexpr const char* kGeographyKey = "4e49a8d6-d5a2-4fc2-93a0-0411d8d19e88";
constexpr const char* kUddiTypesKey = "c1acf26d-9672-4404-9d70-39b756e62ab4";

struct Failure {
  semreg_status status;
  std::string error_json;
};

bool json_mode = false;

int exit_code_for(semreg_status s) {
  switch (s) {
    case SEMREG_OK: return 0;
    case SEMREG_INTERNAL:
    case SEMREG_SNAPSHOT_CORRUPT:
    case SEMREG_IO_ERROR: return 2;
    default: return 1;
  }
}

void check(semreg_status s) {
  if (s != SEMREG_OK) throw Failure{s, semreg_last_error()};
}

Json take(char* out) {
  Json j = Json::parse(out);
  semreg_string_free(out);
  return j;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Failure{SEMREG_IO_ERROR, Json{{"code", "IoError"}, {"message", "cannot read " + path},
                                        {"details", {{"path", path}}}}.dump()};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Failure usage_error(const std::string& message) {
  return Failure{SEMREG_INVALID_ARGUMENT,
                 Json{{"code", "InvalidArgument"}, {"message", message}, {"details", Json::object()}}.dump()};
}

// KEY:NAME:VALUE, where KEY may be a tModel key or one of the aliases
// unspsc, geography, uddi-types. The value runs to the end of the text.
Json parse_category(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw usage_error("category must look like KEY:NAME:VALUE, got \"" + text + "\"");
  std::string key = text.substr(0, a);
  if (key == "unspsc") key = kUnspscKey;
  if (key == "geography" || key == "geo") key = kGeographyKey;
  if (key == "uddi-types") key = kUddiTypesKey;
  return {{"tmodel_key", key}, {"key_name", text.substr(a + 1, b - a - 1)}, {"key_value", text.substr(b + 1)}};
}

Json categories(const std::vector<std::string>& texts) {
  Json out = Json::array();
  for (const auto& t : texts) out.push_back(parse_category(t));
  return out;
}

void print_text(const Json& payload);

void emit(const Json& payload) {
  if (json_mode) {
    std::cout << Json{{"status", "ok"}, {"payload", payload}}.dump() << "\n";
  } else {
    print_text(payload);
  }
}

void print_discovery(const Json& report) {
  const auto& results = report.at("results");
  std::cout << results.size() << " service(s) for " << report.at("mode").get<std::string>() << " "
            << report.at("class").get<std::string>() << "\n";
  for (const auto& r : results) {
    const auto& s = r.at("service");
    const auto& e = r.at("evidence");
    std::cout << "  " << s.at("key").get<std::string>() << "  " << s.at("name").get<std::string>() << "\n"
              << "    via " << e.at("via").get<std::string>() << " on " << e.at("generic_class").get<std::string>()
              << "\n";
    for (const auto& f : e.at("supporting")) {
      std::cout << "    " << f.at("kind").get<std::string>() << ": " << f.at("value").get<std::string>() << "\n";
    }
    for (const auto& item : e.at("matched_items")) {
      std::cout << "    item " << item.at("id").get<std::string>();
      for (const auto& [name, v] : item.at("attributes").items()) {
        std::cout << " " << name << "=" << v.at("value").get<std::string>();
      }
      std::cout << "\n";
    }
  }
  for (const auto& w : report.at("warnings")) {
    std::cout << "  warning " << w.at("code").get<std::string>() << ": " << w.at("message").get<std::string>()
              << "\n";
  }
}

void print_text(const Json& payload) {
  if (payload.is_object() && payload.contains("results") && payload.contains("mode")) {
    print_discovery(payload);
  } else if (payload.is_string()) {
    std::cout << payload.get<std::string>() << "\n";
  } else {
    std::cout << payload.dump(2) << "\n";
  }
}

struct Store {
  semreg_store* handle = nullptr;
  ~Store() { semreg_close(handle); }
};

sigset_t shutdown_signals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  return set;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic service registry"};
  app.require_subcommand(1);

  std::string data_dir = ".semreg";
  std::string catalog_root = ".";
  std::string public_base;
  app.add_option("--data-dir", data_dir, "Directory holding snapshot.json")->envname("SEMREG_DATA_DIR");
  app.add_option("--catalog-root", catalog_root, "Directory relative catalog paths resolve against");
  app.add_option("--public-base", public_base, "Base URL used for combined schema locations");
  app.add_flag("--json", json_mode, "Machine-readable output");

  std::string domain;
  std::vector<std::string> files;
  auto* load_ontology = app.add_subcommand("load-ontology", "Load RDF/XML ontology documents into a domain");
  load_ontology->add_option("--domain", domain, "Domain identifier")->required();
  load_ontology->add_option("files", files, "RDF/XML documents")->required()->check(CLI::ExistingFile);

  std::string file;
  auto* load_taxonomy = app.add_subcommand("load-taxonomy", "Load a taxonomy seed file");
  load_taxonomy->add_option("file", file)->required()->check(CLI::ExistingFile);

  std::string key, name, overview, contact, business, instance_url, base, out_path, from_file;
  std::vector<std::string> cats, bindings;
  auto* publish_tmodel = app.add_subcommand("publish-tmodel", "Save a tModel");
  publish_tmodel->add_option("--key", key, "Update the tModel with this key");
  publish_tmodel->add_option("--name", name);
  publish_tmodel->add_option("--overview", overview, "Overview document URL");
  publish_tmodel->add_option("--category", cats, "KEY:NAME:VALUE keyed reference");
  publish_tmodel->add_option("--from", from_file, "Read the draft from a JSON file");

  auto* publish_business = app.add_subcommand("publish-business", "Save a business entity");
  publish_business->add_option("--key", key);
  publish_business->add_option("--name", name);
  publish_business->add_option("--contact", contact);
  publish_business->add_option("--category", cats);
  publish_business->add_option("--from", from_file);

  auto* publish_service = app.add_subcommand("publish-service", "Save a business service");
  publish_service->add_option("--key", key);
  publish_service->add_option("--business", business, "Business key");
  publish_service->add_option("--name", name);
  publish_service->add_option("--binding", bindings, "Access point URL");
  publish_service->add_option("--category", cats);
  publish_service->add_option("--from", from_file);

  std::string instance_file;
  auto* reg = app.add_subcommand("register", "Register a service with its DAML-S instance description");
  reg->add_option("--domain", domain);
  reg->add_option("--instance", instance_file, "Instance document (RDF/XML)")->required()->check(CLI::ExistingFile);
  reg->add_option("--business", business)->required();
  reg->add_option("--name", name)->required();
  reg->add_option("--binding", bindings);
  reg->add_option("--category", cats);
  reg->add_option("--instance-url", instance_url, "Where the instance description is hosted");
  reg->add_option("--base", base, "Base IRI of the instance document");

  std::string mode, cls;
  std::vector<std::string> wheres;
  auto* discover = app.add_subcommand("discover", "Discover services");
  discover->add_option("mode", mode)->required()->check(CLI::IsMember({"functionality", "complement", "addon", "product"}));
  discover->add_option("--domain", domain);
  discover->add_option("--class,--product", cls, "Class name or IRI")->required();
  discover->add_option("--where", wheres, "attr:op:value catalog predicate (product mode)");

  std::string kind;
  auto* get = app.add_subcommand("get", "Fetch a record by key");
  get->add_option("kind", kind)->required()->check(CLI::IsMember({"tmodel", "business", "service"}));
  get->add_option("key", key)->required();

  auto* del = app.add_subcommand("delete", "Delete a service or tModel");
  del->add_option("kind", kind)->required()->check(CLI::IsMember({"tmodel", "service"}));
  del->add_option("key", key)->required();

  std::vector<std::string> filters;
  bool any = false;
  std::string prefix;
  auto* find = app.add_subcommand("find", "Search services by keyed references or tModels by name");
  find->add_option("kind", kind)->required()->check(CLI::IsMember({"services", "tmodels"}));
  find->add_option("--filter", filters, "KEY:NAME:VALUE (empty VALUE matches any value)");
  find->add_flag("--any", any, "Match any filter instead of all");
  find->add_option("--prefix", prefix, "tModel name prefix");

  auto* schema = app.add_subcommand("schema", "Print the combined schema of a domain");
  schema->add_option("--domain", domain);

  auto* domains = app.add_subcommand("domains", "List domains");
  auto* integrity = app.add_subcommand("integrity", "Run the referential integrity and binding checks");

  auto* snapshot = app.add_subcommand("snapshot", "Write a snapshot of the store");
  snapshot->add_option("--out", out_path, "Target file (defaults to the data directory)");

  std::string config_path, listen, token;
  auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON API");
  serve->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  serve->add_option("--listen", listen, "host:port");
  serve->add_option("--token", token, "Publisher token");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    Json options = Json::object();
    options["catalog_root"] = catalog_root;
    if (!public_base.empty()) options["public_base"] = public_base;

    if (serve->parsed()) {
      if (!listen.empty()) setenv("SEMREG_LISTEN", listen.c_str(), 1);
      if (!token.empty()) setenv("SEMREG_TOKEN", token.c_str(), 1);
      char* out = nullptr;
      check(semreg_config_load(config_path.empty() ? nullptr : config_path.c_str(), &out));
      Json config = take(out);
      const std::string dir = config["data_dir"].is_string() ? config["data_dir"].get<std::string>() : data_dir;
      options["public_base"] = config["public_base"];
      if (config["catalog_root"] != ".") options["catalog_root"] = config["catalog_root"];

      // Block shutdown signals before any thread exists so sigwait sees them.
      sigset_t signals = shutdown_signals();
      pthread_sigmask(SIG_BLOCK, &signals, nullptr);

      Store store;
      check(semreg_open(dir.c_str(), options.dump().c_str(), &store.handle));
      check(semreg_seed_domains(store.handle, config.dump().c_str()));
      semreg_server* server = nullptr;
      check(semreg_server_start(store.handle, config["host"].get<std::string>().c_str(), config["port"].get<int>(),
                                config["token"].get<std::string>().c_str(), &server));
      std::cout << "listening on " << config["host"].get<std::string>() << ":" << semreg_server_port(server)
                << std::endl;
      int sig = 0;
      sigwait(&signals, &sig);
      check(semreg_server_stop(server));
      std::cout << "stopped" << std::endl;
      return 0;
    }

    Store store;
    check(semreg_open(data_dir.c_str(), options.dump().c_str(), &store.handle));
    char* out = nullptr;

    if (load_ontology->parsed()) {
      std::vector<const char*> paths;
      for (const auto& f : files) paths.push_back(f.c_str());
      check(semreg_load_ontology_files(store.handle, domain.c_str(), paths.data(), paths.size(), &out));
      emit(take(out));
    } else if (load_taxonomy->parsed()) {
      check(semreg_load_taxonomy(store.handle, read_text(file).c_str(), &out));
      emit(take(out));
    } else if (publish_tmodel->parsed() || publish_business->parsed() || publish_service->parsed()) {
      Json draft;
      std::string k;
      if (!from_file.empty()) {
        draft = Json::parse(read_text(from_file));
      } else {
        draft = {{"name", name}, {"category_bag", categories(cats)}};
        if (!key.empty()) draft["key"] = key;
      }
      if (publish_tmodel->parsed()) {
        k = "tmodel";
        if (from_file.empty() && !overview.empty()) draft["overview_doc"] = overview;
      } else if (publish_business->parsed()) {
        k = "business";
        if (from_file.empty()) draft["contact"] = contact;
      } else {
        k = "service";
        if (from_file.empty()) {
          draft["business_key"] = business;
          draft["binding_urls"] = bindings;
        }
      }
      check(semreg_publish(store.handle, k.c_str(), draft.dump().c_str(), &out));
      emit(take(out));
    } else if (reg->parsed()) {
      Json request = {{"instance_document", read_text(instance_file)},
                      {"service",
                       {{"business_key", business},
                        {"name", name},
                        {"binding_urls", bindings},
                        {"category_bag", categories(cats)}}}};
      if (!instance_url.empty()) request["instance_url"] = instance_url;
      if (!base.empty()) request["base"] = base;
      check(semreg_register(store.handle, domain.c_str(), request.dump().c_str(), &out));
      emit(take(out));
    } else if (discover->parsed()) {
      if (mode == "product" && wheres.empty()) throw usage_error("discover product needs at least one --where");
      const Json preds = wheres;
      check(semreg_discover(store.handle, domain.c_str(), mode.c_str(), cls.c_str(), preds.dump().c_str(), &out));
      emit(take(out));
    } else if (get->parsed()) {
      check(semreg_get(store.handle, kind.c_str(), key.c_str(), &out));
      emit(take(out));
    } else if (del->parsed()) {
      check(semreg_delete(store.handle, kind.c_str(), key.c_str()));
      emit(Json{{"deleted", key}});
    } else if (find->parsed()) {
      if (kind == "services") {
        const Json request = {{"filters", categories(filters)}, {"match", any ? "any" : "all"}};
        check(semreg_find_services(store.handle, request.dump().c_str(), &out));
      } else {
        const Json request = {{"name_prefix", prefix}, {"categories", categories(filters)}};
        check(semreg_find_tmodels(store.handle, request.dump().c_str(), &out));
      }
      emit(take(out));
    } else if (schema->parsed()) {
      check(semreg_schema(store.handle, domain.c_str(), &out));
      std::string xml(out);
      semreg_string_free(out);
      if (json_mode) {
        emit(Json(xml));
      } else {
        std::cout << xml;
      }
    } else if (domains->parsed()) {
      check(semreg_domains(store.handle, &out));
      emit(take(out));
    } else if (integrity->parsed()) {
      check(semreg_integrity(store.handle, &out));
      Json report = take(out);
      emit(report);
      if (!report.at("ok").get<bool>()) return 1;
    } else if (snapshot->parsed()) {
      check(semreg_snapshot(store.handle, out_path.empty() ? nullptr : out_path.c_str(), &out));
      emit(take(out));
    }
    return 0;
  } catch (const Failure& f) {
    Json error = Json::parse(f.error_json.empty() ? "{}" : f.error_json);
    if (json_mode) {
      std::cout << Json{{"status", "error"}, {"error", error}}.dump() << "\n";
    } else {
      std::cerr << "error: " << error.value("code", std::string(semreg_status_name(f.status))) << ": "
                << error.value("message", std::string()) << "\n";
    }
    return exit_code_for(f.status);
  } catch (const Json::exception& e) {
    std::cerr << "error: InvalidArgument: " << e.what() << "\n";
    return 1;
  }
}
