// Drives the semreg executable as a subprocess.
#include <gtest/gtest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

struct Outcome {
  int exit_code = -1;
  std::string out;
};

std::string fixture(const std::string& rel) { return std::string(SEMREG_FIXTURES) + "/" + rel; }

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("semreg-cli-" + std::to_string(::getpid()) + "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  Outcome run(const std::vector<std::string>& args) const {
    std::string cmd = quote(SEMREG_CLI_PATH) + " --data-dir " + quote(dir.string()) + " --catalog-root " +
                      quote(fixture("scenario"));
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " 2>/dev/null";
    Outcome r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (p == nullptr) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = ::pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  Json ok(const std::vector<std::string>& args) const {
    auto v = args;
    v.insert(v.begin(), "--json");
    const auto r = run(v);
    EXPECT_EQ(r.exit_code, 0) << r.out;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("status"), "ok");
    return j.at("payload");
  }

  void load_domain() const {
    ok({"load-ontology", "--domain", "poec", fixture("ontology/upper.daml"), fixture("ontology/taxonomy.daml")});
  }

  std::string business(const std::string& name) const { return ok({"publish-business", "--name", name}).at("key"); }

  std::string register_file(const std::string& file, const std::string& business_key, const std::string& name) const {
    return ok({"register", "--instance", fixture("scenario/instances/" + file), "--business", business_key, "--name",
               name})
        .at("service")
        .at("key");
  }

  fs::path dir;
};

TEST_F(Cli, ProductDiscoveryForIbmSecondHand) {
  load_domain();
  const auto b = business("sellers");
  const auto anatolia = register_file("anatolia-computer-sales.daml", b, "Anatolia Computer Sales");
  const auto capital = register_file("capital-computer-sales.daml", b, "Capital Computer Sales");
  register_file("newtech-computer-sales.daml", b, "NewTech Computer Sales");
  const auto r = ok({"discover", "product", "--class", "Sell_Computer_Service", "--where", "brand:=:IBM", "--where",
                     "condition:=:second hand"});
  std::set<std::string> keys;
  for (const auto& x : r.at("results")) {
    keys.insert(x.at("service").at("key").get<std::string>());
    ASSERT_FALSE(x.at("evidence").at("matched_items").empty());
    EXPECT_TRUE(x.at("evidence").at("matched_items")[0].at("attributes").contains("price"));
  }
  EXPECT_EQ(keys, (std::set<std::string>{anatolia, capital}));
}

TEST_F(Cli, UnknownClassExitsWithOne) {
  load_domain();
  const auto r = run({"--json", "discover", "functionality", "--class", "NoSuchClass"});
  EXPECT_EQ(r.exit_code, 1);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("status"), "error");
  EXPECT_EQ(j.at("error").at("code"), "UnknownGenericClass");
  EXPECT_EQ(run({"discover", "functionality", "--class", "NoSuchClass"}).exit_code, 1);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).exit_code, 1);
  EXPECT_EQ(run({"discover", "sideways", "--class", "X"}).exit_code, 1);
  EXPECT_EQ(run({"--help"}).exit_code, 0);
  // Occupy the data directory path with a file.
  std::ofstream(dir.string()) << "x";
  EXPECT_EQ(run({"domains"}).exit_code, 2);
  fs::remove(dir);
}

TEST_F(Cli, SnapshotRestartAnswersByteEqual) {
  load_domain();
  const auto b = business("rentals");
  register_file("my-car-rental.daml", b, "rental");
  register_file("anatolia-chauffeur.daml", b, "driver");
  const std::vector<std::string> query{"--json", "discover", "complement", "--class", "Car_Rental_Service"};
  const auto before = run(query);
  const auto schema_before = run({"schema"});
  const auto copy = (dir / "copy.json").string();
  ok({"snapshot", "--out", copy});
  EXPECT_EQ(slurp(copy), slurp((dir / "snapshot.json").string()));
  const auto after = run(query);
  EXPECT_EQ(before.exit_code, 0);
  EXPECT_EQ(after.out, before.out);
  EXPECT_EQ(run({"schema"}).out, schema_before.out);
  EXPECT_EQ(Json::parse(before.out).at("payload").at("results").size(), 1u);
}

TEST_F(Cli, FindAndIntegrity) {
  load_domain();
  const auto b = business("shops");
  ok({"publish-service", "--business", b, "--name", "Scanners", "--category", "unspsc::43211711"});
  const auto found = ok({"find", "services", "--filter", "unspsc::43211711"});
  EXPECT_EQ(found.size(), 1u);
  const auto addon = ok({"discover", "addon", "--product", "desktop"});
  EXPECT_EQ(addon.at("results").size(), 1u);
  EXPECT_EQ(ok({"integrity"}).at("ok"), true);
  EXPECT_EQ(run({"publish-service", "--business", b, "--name", "Bad", "--category", "unspsc::99999999"}).exit_code,
            1);
}

}  // namespace
