#include "support/fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "ontology/parser.hpp"
#include "registry/registry.hpp"

namespace semreg::testing {
namespace fs = std::filesystem;

std::string fixture_path(const std::string& relative) { return (fs::path(SEMREG_FIXTURES) / relative).string(); }

std::string read_fixture(const std::string& relative) {
  std::ifstream in(fixture_path(relative), std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "missing fixture " + relative);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

onto::OntologyDocument parse_fixture(const std::string& relative) {
  return onto::parse_document(read_fixture(relative), "file://" + fixture_path(relative),
                              fs::path(relative).filename().string());
}

std::vector<onto::OntologyDocument> domain_documents() {
  std::vector<onto::OntologyDocument> docs;
  docs.push_back(parse_fixture("ontology/upper.daml"));
  docs.push_back(parse_fixture("ontology/taxonomy.daml"));
  return docs;
}

std::unique_ptr<discovery::SemanticRegistry> domain_registry(std::uint64_t seed) {
  auto r = std::make_unique<discovery::SemanticRegistry>(seed);
  r->load_ontology("poec", domain_documents());
  return r;
}

std::string scenario_catalog_root() { return fixture_path("scenario"); }

ScenarioKeys seed_scenario(api::Store& store) {
  const auto spec = codec::parse(read_fixture("scenario/scenario.json"));
  ScenarioKeys keys;
  keys.domain = spec.at("domain").get<std::string>();

  std::vector<std::string> files;
  for (const auto& rel : spec.at("ontology")) files.push_back(fixture_path("scenario/" + rel.get<std::string>()));
  store.load_ontology_files(keys.domain, files);

  const std::string geo(registry::kGeographyKey);
  const std::string unspsc(registry::kUnspscKey);
  for (const auto& b : spec.at("businesses")) {
    codec::Json draft = {{"name", b.at("name")},
                         {"contact", b.value("contact", "")},
                         {"category_bag", {{{"tmodel_key", geo}, {"key_name", ""}, {"key_value", b.at("geography")}}}}};
    keys.businesses[b.at("id").get<std::string>()] = store.publish("business", draft).at("key").get<std::string>();
  }

  for (const auto& s : spec.at("services")) {
    codec::Json bag = codec::Json::array();
    bag.push_back({{"tmodel_key", unspsc}, {"key_name", ""}, {"key_value", s.at("unspsc")}});
    bag.push_back({{"tmodel_key", geo}, {"key_name", ""}, {"key_value", s.at("geography")}});
    codec::Json draft = {{"business_key", keys.businesses.at(s.at("business").get<std::string>())},
                         {"name", s.at("name")},
                         {"binding_urls", {s.at("binding")}},
                         {"category_bag", bag}};
    const std::string name = s.at("name").get<std::string>();
    if (s.contains("instance")) {
      const std::string rel = "scenario/" + s.at("instance").get<std::string>();
      codec::Json request = {{"instance_document", read_fixture(rel)}, {"service", draft}};
      keys.services[name] = store.register_service(keys.domain, request).at("service").at("key").get<std::string>();
    } else {
      keys.services[name] = store.publish("service", draft).at("key").get<std::string>();
    }
  }
  for (const auto& entry : fs::directory_iterator(fixture_path("scenario/catalogs"))) {
    keys.catalogs.push_back(entry.path().filename().string());
  }
  std::sort(keys.catalogs.begin(), keys.catalogs.end());
  return keys;
}

}  // namespace semreg::testing
