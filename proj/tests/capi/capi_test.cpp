// Links the shared library only; everything goes through semreg.h.
#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "semreg/semreg.h"

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

std::string fixture(const std::string& rel) { return std::string(SEMREG_FIXTURES) + "/" + rel; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json take(char* s) {
  Json j = Json::parse(s);
  semreg_string_free(s);
  return j;
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    const Json opts = {{"catalog_root", fixture("scenario")}, {"seed", 9}};
    ASSERT_EQ(semreg_open(nullptr, opts.dump().c_str(), &store), SEMREG_OK) << semreg_last_error();
    const std::string upper = fixture("ontology/upper.daml");
    const std::string taxonomy = fixture("ontology/taxonomy.daml");
    const char* paths[] = {upper.c_str(), taxonomy.c_str()};
    char* out = nullptr;
    ASSERT_EQ(semreg_load_ontology_files(store, "poec", paths, 2, &out), SEMREG_OK) << semreg_last_error();
    EXPECT_EQ(take(out).at("domain"), "poec");
    ASSERT_EQ(semreg_publish(store, "business", R"({"name":"Rent-A-Car"})", &out), SEMREG_OK);
    business = take(out).at("key");
  }
  void TearDown() override { semreg_close(store); }

  Json register_file(const std::string& file, const std::string& name) {
    const Json req = {{"instance_document", slurp(fixture("scenario/instances/" + file))},
                      {"service", {{"business_key", business}, {"name", name}}}};
    char* out = nullptr;
    EXPECT_EQ(semreg_register(store, "poec", req.dump().c_str(), &out), SEMREG_OK) << semreg_last_error();
    return out ? take(out) : Json();
  }

  semreg_store* store = nullptr;
  std::string business;
};

TEST_F(CApi, RegisterAndDiscover) {
  const auto reg = register_file("my-car-rental.daml", "rental");
  EXPECT_EQ(reg.at("bindings").size(), 3u);
  char* out = nullptr;
  ASSERT_EQ(semreg_discover(store, "poec", "functionality", "Rent_Vehicle_Service", nullptr, &out), SEMREG_OK);
  const auto r = take(out);
  ASSERT_EQ(r.at("results").size(), 1u);
  EXPECT_EQ(r.at("results")[0].at("service").at("key"), reg.at("service").at("key"));

  const char* preds = R"([{"attribute":"model","op":"=","value":"Chevrolet Model 1956"}])";
  ASSERT_EQ(semreg_discover(store, nullptr, "product", "Car_Rental_Service", preds, &out), SEMREG_OK);
  EXPECT_EQ(take(out).at("results").size(), 1u);

  ASSERT_EQ(semreg_schema(store, "poec", &out), SEMREG_OK);
  const std::string xml(out);
  semreg_string_free(out);
  EXPECT_NE(xml.find("My_Car_Rental_Service"), std::string::npos);

  ASSERT_EQ(semreg_integrity(store, &out), SEMREG_OK);
  EXPECT_EQ(take(out).at("ok"), true);
}

TEST_F(CApi, ErrorsAreCodesWithJsonDetails) {
  char* out = nullptr;
  EXPECT_EQ(semreg_discover(store, "poec", "functionality", "NoSuchClass", nullptr, &out),
            SEMREG_UNKNOWN_GENERIC_CLASS);
  EXPECT_EQ(out, nullptr);
  const Json err = Json::parse(semreg_last_error());
  EXPECT_EQ(err.at("code"), "UnknownGenericClass");
  EXPECT_STREQ(semreg_status_name(SEMREG_UNKNOWN_GENERIC_CLASS), "UnknownGenericClass");

  EXPECT_EQ(semreg_publish(store, "service", "{", &out), SEMREG_INVALID_ARGUMENT);
  EXPECT_EQ(semreg_get(store, "service", "00000000-0000-4000-8000-000000000000", &out), SEMREG_NOT_FOUND);
  EXPECT_EQ(semreg_discover(nullptr, "poec", "functionality", "X", nullptr, &out), SEMREG_INVALID_ARGUMENT);
  EXPECT_EQ(semreg_open(nullptr, nullptr, nullptr), SEMREG_INVALID_ARGUMENT);
  semreg_store* unopened = nullptr;
  EXPECT_EQ(semreg_open(nullptr, R"({"seed":"abc"})", &unopened), SEMREG_INVALID_ARGUMENT);
  EXPECT_EQ(unopened, nullptr);

  // Success clears the previous error.
  ASSERT_EQ(semreg_domains(store, &out), SEMREG_OK);
  EXPECT_EQ(take(out).size(), 1u);
  EXPECT_STREQ(semreg_last_error(), "");
}

TEST_F(CApi, DeleteBoundTModelIsRefused) {
  const auto reg = register_file("anatolia-chauffeur.daml", "driver");
  for (const auto& b : reg.at("bindings")) {
    EXPECT_EQ(semreg_delete(store, "tmodel", b.at("tmodel_key").get<std::string>().c_str()), SEMREG_TMODEL_IN_USE);
  }
  EXPECT_EQ(semreg_delete(store, "service", reg.at("service").at("key").get<std::string>().c_str()), SEMREG_OK);
}

TEST(CApiStore, SnapshotReopen) {
  const fs::path dir = fs::temp_directory_path() / ("semreg-capi-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  std::string first;
  {
    semreg_store* s = nullptr;
    ASSERT_EQ(semreg_open(dir.c_str(), R"({"seed":1})", &s), SEMREG_OK);
    char* out = nullptr;
    ASSERT_EQ(semreg_publish(s, "business", R"({"name":"Kept"})", &out), SEMREG_OK);
    first = take(out).at("key");
    semreg_close(s);
  }
  semreg_store* s = nullptr;
  ASSERT_EQ(semreg_open(dir.c_str(), nullptr, &s), SEMREG_OK);
  char* out = nullptr;
  ASSERT_EQ(semreg_get(s, "business", first.c_str(), &out), SEMREG_OK);
  EXPECT_EQ(take(out).at("name"), "Kept");
  const std::string copy = (dir / "copy.json").string();
  ASSERT_EQ(semreg_snapshot(s, copy.c_str(), &out), SEMREG_OK);
  semreg_string_free(out);
  EXPECT_EQ(slurp(copy), slurp((dir / "snapshot.json").string()));
  semreg_close(s);
  fs::remove_all(dir);
}

TEST(CApiConfig, LoadsAndValidates) {
  char* out = nullptr;
  EXPECT_EQ(semreg_config_load(nullptr, &out), SEMREG_INVALID_ARGUMENT);
  const fs::path file = fs::temp_directory_path() / ("semreg-config-" + std::to_string(::getpid()) + ".json");
  std::ofstream(file) << R"({"listen":"127.0.0.1:0","token":"t"})";
  ASSERT_EQ(semreg_config_load(file.c_str(), &out), SEMREG_OK) << semreg_last_error();
  const auto c = take(out);
  EXPECT_EQ(c.at("port"), 0);
  EXPECT_EQ(c.at("token"), "t");
  fs::remove(file);
}

TEST(CApiServer, StartsAndStops) {
  semreg_store* s = nullptr;
  ASSERT_EQ(semreg_open(nullptr, nullptr, &s), SEMREG_OK);
  semreg_server* server = nullptr;
  ASSERT_EQ(semreg_server_start(s, "127.0.0.1", 0, "tok", &server), SEMREG_OK) << semreg_last_error();
  EXPECT_GT(semreg_server_port(server), 0);
  EXPECT_EQ(semreg_server_stop(server), SEMREG_OK);
  semreg_close(s);
  EXPECT_EQ(semreg_server_port(nullptr), -1);
}

}  // namespace

namespace {

TEST(CApiStatus, NamesAreUniqueAndComplete) {
  std::set<std::string> names;
  for (int i = SEMREG_OK; i <= SEMREG_INTERNAL; ++i) {
    const std::string n = semreg_status_name(static_cast<semreg_status>(i));
    EXPECT_FALSE(n.empty()) << i;
    EXPECT_TRUE(names.insert(n).second) << n;
  }
  EXPECT_STREQ(semreg_status_name(SEMREG_TMODEL_IN_USE), "TModelInUse");
  EXPECT_STREQ(semreg_status_name(SEMREG_SNAPSHOT_CORRUPT), "SnapshotCorrupt");
}

}  // namespace
