#pragma once

#include <map>
#include <string>
#include <vector>

#include "api/store.hpp"
#include "discovery/semantic_registry.hpp"
#include "ontology/model.hpp"

namespace semreg::testing {

std::string fixture_path(const std::string& relative);
std::string read_fixture(const std::string& relative);

onto::OntologyDocument parse_fixture(const std::string& relative);

// Upper ontology plus the example taxonomy.
std::vector<onto::OntologyDocument> domain_documents();

// Registry with the "poec" domain loaded and nothing published.
std::unique_ptr<discovery::SemanticRegistry> domain_registry(std::uint64_t seed = 7);

struct ScenarioKeys {
  std::string domain;
  std::map<std::string, std::string> businesses;  // scenario id -> key
  std::map<std::string, std::string> services;    // service name -> key
  std::vector<std::string> catalogs;              // catalog files referenced by instances
};

// Loads the shipped scenario (domain, businesses, services) into a store.
ScenarioKeys seed_scenario(api::Store& store);

std::string scenario_catalog_root();

}  // namespace semreg::testing
