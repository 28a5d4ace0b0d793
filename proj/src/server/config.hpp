#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semreg::server {

struct DomainSeed {
  std::string id;
  std::vector<std::string> ontology;    // RDF/XML files
  std::vector<std::string> taxonomies;  // taxonomy seed files
};

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::string> data_dir;
  std::string token;
  std::string public_base;  // derived from the listen address when empty
  std::string catalog_root = ".";
  std::vector<DomainSeed> domains;

  std::string effective_public_base() const;
};

// "host:port", ":port" or "port".
void parse_listen(std::string_view text, ServerConfig& config);

// JSON config file:
//   {"listen": "127.0.0.1:8080", "data_dir": "...", "token": "...",
//    "public_base": "...", "catalog_root": "...",
//    "domains": [{"id": "poec", "ontology": [...], "taxonomies": [...]}]}
// Relative paths are taken relative to the config file.
ServerConfig load_config(const std::string& path);
ServerConfig parse_config(std::string_view text, const std::string& relative_to = ".");

// SEMREG_LISTEN, SEMREG_DATA_DIR and SEMREG_TOKEN override the file.
void apply_environment(ServerConfig& config);

// Throws InvalidArgument (duplicate domain ids, bad port, missing token) or
// IoError (data directory not writable).
void check_config(const ServerConfig& config);

}  // namespace semreg::server
