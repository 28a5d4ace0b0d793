#include "server/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "api/json_codec.hpp"
#include "common/error.hpp"

namespace semreg::server {
namespace {

namespace fs = std::filesystem;
using codec::Json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidArgument, "config: " + what); }

std::string relative(const std::string& p, const std::string& base) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

std::vector<std::string> paths(const Json& j, const char* field, const std::string& base) {
  std::vector<std::string> out;
  auto it = j.find(field);
  if (it == j.end()) return out;
  if (!it->is_array()) bad(std::string(field) + " must be an array of paths");
  for (const auto& p : *it) {
    if (!p.is_string()) bad(std::string(field) + " must be an array of paths");
    out.push_back(relative(p.get<std::string>(), base));
  }
  return out;
}

std::string string_field(const Json& j, const char* field, std::string fallback) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_string()) bad(std::string(field) + " must be a string");
  return it->get<std::string>();
}

}  // namespace

std::string ServerConfig::effective_public_base() const {
  if (!public_base.empty()) return public_base;
  const std::string h = host.empty() || host == "0.0.0.0" ? "localhost" : host;
  return "http://" + h + ":" + std::to_string(port);
}

void parse_listen(std::string_view text, ServerConfig& config) {
  std::string host = config.host;
  std::string_view port_text = text;
  if (auto colon = text.rfind(':'); colon != std::string_view::npos) {
    if (colon > 0) host = std::string(text.substr(0, colon));
    port_text = text.substr(colon + 1);
  }
  int port = 0;
  try {
    std::size_t used = 0;
    port = std::stoi(std::string(port_text), &used);
    if (used != port_text.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    bad("listen address \"" + std::string(text) + "\" has no valid port");
  }
  if (port < 0 || port > 65535) bad("port out of range in \"" + std::string(text) + "\"");
  config.host = host;
  config.port = port;
}

ServerConfig parse_config(std::string_view text, const std::string& relative_to) {
  const Json j = codec::parse(text);
  if (!j.is_object()) bad("top level must be an object");
  ServerConfig c;
  if (auto l = string_field(j, "listen", ""); !l.empty()) parse_listen(l, c);
  if (auto d = string_field(j, "data_dir", ""); !d.empty()) c.data_dir = relative(d, relative_to);
  c.token = string_field(j, "token", "");
  c.public_base = string_field(j, "public_base", "");
  c.catalog_root = relative(string_field(j, "catalog_root", "."), relative_to);
  if (auto it = j.find("domains"); it != j.end()) {
    if (!it->is_array()) bad("domains must be an array");
    for (const auto& d : *it) {
      if (!d.is_object()) bad("each domain must be an object");
      DomainSeed seed;
      seed.id = string_field(d, "id", "");
      seed.ontology = paths(d, "ontology", relative_to);
      seed.taxonomies = paths(d, "taxonomies", relative_to);
      c.domains.push_back(std::move(seed));
    }
  }
  return c;
}

ServerConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read config " + path, {{"path", path}});
  std::ostringstream buf;
  buf << in.rdbuf();
  auto dir = fs::path(path).parent_path().string();
  return parse_config(buf.str(), dir.empty() ? "." : dir);
}

void apply_environment(ServerConfig& config) {
  if (const char* v = std::getenv("SEMREG_LISTEN"); v != nullptr && *v) parse_listen(v, config);
  if (const char* v = std::getenv("SEMREG_DATA_DIR"); v != nullptr && *v) config.data_dir = v;
  if (const char* v = std::getenv("SEMREG_TOKEN"); v != nullptr && *v) config.token = v;
}

void check_config(const ServerConfig& config) {
  if (config.token.empty()) bad("a publisher token is required (token or SEMREG_TOKEN)");
  std::set<std::string> ids;
  for (const auto& d : config.domains) {
    if (d.id.empty()) bad("domain without id");
    if (!ids.insert(d.id).second) bad("domain " + d.id + " listed twice");
  }
  if (config.data_dir) {
    std::error_code ec;
    fs::create_directories(*config.data_dir, ec);
    const auto probe = fs::path(*config.data_dir) / ".write-probe";
    std::ofstream out(probe);
    if (ec || !out) {
      throw Error(ErrorCode::kIoError, "data directory " + *config.data_dir + " is not writable",
                  {{"path", *config.data_dir}});
    }
    out.close();
    fs::remove(probe, ec);
  }
}

}  // namespace semreg::server
