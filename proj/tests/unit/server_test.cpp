#include <gtest/gtest.h>

#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "api/json_codec.hpp"
#include "api/store.hpp"
#include "common/error.hpp"
#include "registry/registry.hpp"
#include "ontology/parser.hpp"
#include "ontology/vocabulary.hpp"
#include "reasoner/reasoner.hpp"
#include "server/http_server.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace semreg {
namespace {

using codec::Json;

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    api::StoreOptions o;
    o.catalog_root = testing::scenario_catalog_root();
    o.seed = 5;
    store = std::make_unique<api::Store>(o);
    store->load_ontology_files("poec", {testing::fixture_path("ontology/upper.daml"),
                                        testing::fixture_path("ontology/taxonomy.daml")});
    server = std::make_unique<server::HttpServer>(*store, "secret");
    const int port = server->bind("127.0.0.1", 0);
    server->start();
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
    client->set_read_timeout(10);
  }

  void TearDown() override { server->stop(); }

  Json post(const std::string& path, const Json& body, bool authorized = true) {
    httplib::Headers h;
    if (authorized) h.emplace("Authorization", "Bearer secret");
    auto res = client->Post(path, h, body.dump(), "application/json");
    last_status = res ? res->status : -1;
    return res ? Json::parse(res->body) : Json();
  }

  Json get(const std::string& path) {
    auto res = client->Get(path);
    last_status = res ? res->status : -1;
    return res ? Json::parse(res->body) : Json();
  }

  std::string business() { return post("/businesses", {{"name", "Rent-A-Car"}}).at("payload").at("key"); }

  Json register_class(const std::string& cls, const std::string& id, const std::string& business_key) {
    return post("/domains/poec/register",
                {{"instance_document", testing::instance_document("http://" + id + ".example.com/s.daml", cls, id)},
                 {"service", {{"business_key", business_key}, {"name", id}}}});
  }

  std::unique_ptr<api::Store> store;
  std::unique_ptr<server::HttpServer> server;
  std::unique_ptr<httplib::Client> client;
  int last_status = 0;
};

TEST_F(ServerTest, FunctionalityQueryOverHttp) {
  const auto b = business();
  const auto reg = post("/domains/poec/register",
                        {{"instance_document", testing::read_fixture("scenario/instances/my-car-rental.daml")},
                         {"service", {{"business_key", b}, {"name", "rental"}}}});
  ASSERT_EQ(last_status, 200) << reg.dump();
  const auto r = get("/domains/poec/discover/functionality?class=Rent_Vehicle_Service");
  ASSERT_EQ(last_status, 200);
  ASSERT_EQ(r.at("status"), "ok");
  const auto& results = r.at("payload").at("results");
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].at("service").at("key"), reg.at("payload").at("service").at("key"));
  EXPECT_EQ(results[0].at("evidence").at("via"), "functionality");
}

TEST_F(ServerTest, PublishWithoutTokenIsUnauthorized) {
  const auto r = post("/services", {{"name", "x"}}, false);
  EXPECT_EQ(last_status, 401);
  EXPECT_EQ(r.at("status"), "error");
  EXPECT_EQ(r.at("error").at("code"), "Unauthorized");
  httplib::Headers wrong{{"X-Semreg-Token", "nope"}};
  auto res = client->Post("/businesses", wrong, R"({"name":"x"})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 401);
  // Reads stay open.
  get("/domains");
  EXPECT_EQ(last_status, 200);
}

TEST_F(ServerTest, SchemaListsBothRegistrations) {
  const auto b = business();
  register_class("Car_Rental_Service", "First", b);
  register_class("Chauffeur", "Second", b);
  auto res = client->Get("/domains/poec/schema");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/rdf+xml");
  const std::vector<onto::OntologyDocument> docs{onto::parse_document(res->body, "")};
  const auto g = onto::merge(docs);
  EXPECT_EQ(reason::implementations_of(g, vocab::kPoecService).size(), 2u);
}

TEST_F(ServerTest, ErrorStatuses) {
  get("/domains/poec/discover/functionality?class=NoSuchClass");
  EXPECT_EQ(last_status, 404);
  const auto missing_param = get("/domains/poec/discover/functionality");
  EXPECT_EQ(last_status, 400);
  EXPECT_EQ(missing_param.at("error").at("code"), "InvalidArgument");
  get("/services/00000000-0000-4000-8000-000000000000");
  EXPECT_EQ(last_status, 404);
  get("/no/such/route");
  EXPECT_EQ(last_status, 404);
  auto bad = client->Post("/find/services", "{", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  const auto b = business();
  register_class("Teleport", "T", b);
  EXPECT_EQ(last_status, 404);
}

TEST_F(ServerTest, ProductInstanceAndDelete) {
  const auto b = business();
  const auto reg = post("/domains/poec/register",
                        {{"instance_document", testing::read_fixture("scenario/instances/my-car-rental.daml")},
                         {"service", {{"business_key", b}, {"name", "rental"}}}});
  const auto r = post("/domains/poec/discover/product-instance",
                      {{"class", "Car_Rental_Service"},
                       {"predicates", Json::array({{{"attribute", "model"}, {"op", "="}, {"value", "Chevrolet Model 1956"}}})}},
                      false);
  ASSERT_EQ(last_status, 200) << r.dump();
  EXPECT_EQ(r.at("payload").at("results").size(), 1u);
  const std::string key = reg.at("payload").at("service").at("key");
  auto del = client->Delete("/services/" + key, httplib::Headers{{"Authorization", "Bearer secret"}});
  ASSERT_TRUE(del);
  EXPECT_EQ(del->status, 200);
  EXPECT_TRUE(get("/domains/poec/discover/functionality?class=Rent_Vehicle_Service").at("payload").at("results").empty());
  EXPECT_EQ(get("/integrity").at("payload").at("ok"), true);
}

std::string rdf(const std::string& body) {
  return "<rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\" "
         "xmlns:rdfs=\"http://www.w3.org/2000/01/rdf-schema#\" xmlns:daml=\"http://www.daml.org/2001/03/daml+oil#\" "
         "xml:base=\"http://poec.example.org/2002/poec.daml\">" +
         body + "</rdf:RDF>";
}

Json documents(const std::vector<std::string>& bodies) {
  Json docs = Json::array();
  for (const auto& b : bodies) docs.push_back({{"content", rdf(b)}});
  return {{"documents", docs}};
}

class InjectingFetcher : public catalog::ResourceFetcher {
 public:
  std::optional<ErrorCode> code;
  bool foreign = false;
  std::string body;
  std::string fetch(std::string_view uri) const override {
    if (foreign) throw std::runtime_error("injected");
    if (code) throw Error(*code, "injected " + std::string(error_code_name(*code)), {{"uri", std::string(uri)}});
    return body;
  }
};

// Each library error reaches the client with its own code and status.
TEST_F(ServerTest, ErrorCodesSurfaceUnchanged) {
  std::set<ErrorCode> seen;
  auto expect_code = [&](const Json& r, ErrorCode want, const std::string& what) {
    SCOPED_TRACE(what);
    ASSERT_TRUE(r.is_object()) << r.dump();
    ASSERT_EQ(r.value("status", ""), "error") << r.dump();
    EXPECT_EQ(r.at("error").at("code"), std::string(error_code_name(want)));
    EXPECT_EQ(last_status, server::http_status(want));
    seen.insert(want);
  };
  const std::string unspsc(registry::kUnspscKey);
  const std::string types(registry::kUddiTypesKey);
  const std::string nobody = "00000000-0000-4000-8000-0000000000ff";

  expect_code(post("/domains/a/ontology", documents({"<daml:Class rdf:ID=\"A\">"})), ErrorCode::kXmlMalformed, "xml");
  expect_code(post("/domains/a/ontology",
                   documents({"<daml:Class rdf:ID=\"A\"><rdfs:subClassOf rdf:parseType=\"Literal\"/></daml:Class>"})),
              ErrorCode::kUnsupportedConstructFatal, "construct");
  expect_code(post("/domains/a/ontology",
                   documents({"<daml:Class rdf:ID=\"A\"><rdfs:subClassOf rdf:resource=\"&nosuch;#B\"/></daml:Class>"})),
              ErrorCode::kUnresolvedEntity, "entity");
  expect_code(post("/domains/a/ontology",
                   documents({"<daml:Class rdf:ID=\"X\"><rdfs:subClassOf rdf:resource=\"#A\"/></daml:Class>",
                              "<daml:Class rdf:ID=\"X\"><rdfs:subClassOf rdf:resource=\"#B\"/></daml:Class>"})),
              ErrorCode::kConflictingDefinition, "conflict");
  expect_code(post("/domains/a/ontology",
                   documents({"<daml:Class rdf:ID=\"A\"><rdfs:subClassOf rdf:resource=\"#B\"/></daml:Class>"
                              "<daml:Class rdf:ID=\"B\"><rdfs:subClassOf rdf:resource=\"#A\"/></daml:Class>"})),
              ErrorCode::kCyclicHierarchy, "cycle");
  expect_code(post("/domains/a/ontology",
                   documents({"<daml:Class rdf:ID=\"A\"><rdfs:subClassOf rdf:resource=\"#Missing\"/></daml:Class>"})),
              ErrorCode::kInvalidOntology, "invalid");

  expect_code(get("/domains/poec/discover/addon-products?product=Nope"), ErrorCode::kUnknownClass, "class");
  const auto b = business();
  expect_code(post("/services", {{"business_key", b}, {"name", "s"},
                                 {"category_bag", Json::array({{{"tmodel_key", unspsc}, {"key_value", "00000000"}}})}}),
              ErrorCode::kCheckedTaxonomyViolation, "checked");
  expect_code(post("/tmodels", {{"name", "spec"},
                                {"category_bag", Json::array({{{"tmodel_key", types}, {"key_value", "damlSpec"}}})}}),
              ErrorCode::kMissingOverviewDoc, "overview");
  expect_code(post("/services", {{"business_key", nobody}, {"name", "s"}}), ErrorCode::kUnknownBusinessKey, "business");
  expect_code(post("/find/services", {{"filters", Json::array({{{"tmodel_key", nobody}}})}}, false),
              ErrorCode::kUnknownTModelKey, "tmodel key");
  expect_code(get("/tmodels/" + nobody), ErrorCode::kNotFound, "not found");
  post("/services", {{"business_key", b}, {"name", "scanner shop"},
                     {"category_bag", Json::array({{{"tmodel_key", unspsc}, {"key_value", "43211711"}}})}});
  auto del = client->Delete("/tmodels/" + unspsc, httplib::Headers{{"Authorization", "Bearer secret"}});
  ASSERT_TRUE(del);
  last_status = del->status;
  expect_code(Json::parse(del->body), ErrorCode::kTModelInUse, "in use");
  expect_code(get("/domains/zzz/discover/functionality?class=X"), ErrorCode::kUnknownDomain, "domain");
  expect_code(get("/domains/poec/discover/complementary?class=Nope"), ErrorCode::kUnknownGenericClass, "generic");

  const std::string original = testing::read_fixture("scenario/instances/my-car-rental.daml");
  post("/domains/poec/register", {{"instance_document", original}, {"service", {{"business_key", b}, {"name", "r"}}}});
  std::string changed = original;
  changed.replace(changed.find("car-rental.xml"), 14, "other.xml");
  expect_code(post("/domains/poec/register", {{"instance_document", changed}, {"service", {{"business_key", b}, {"name", "r"}}}}),
              ErrorCode::kOntologyMergeConflict, "merge");
  expect_code(register_class("desktop", "D", b), ErrorCode::kInvalidInstanceDocument, "instance");
  auto bad = client->Post("/find/services", "{", "application/json");
  ASSERT_TRUE(bad);
  last_status = bad->status;
  expect_code(Json::parse(bad->body), ErrorCode::kInvalidArgument, "argument");
  expect_code(post("/businesses", {{"name", "x"}}, false), ErrorCode::kUnauthorized, "token");

  // Catalog failures are attached to the product result set under their code.
  auto fetcher = std::make_shared<InjectingFetcher>();
  store->registry().set_fetcher(fetcher);
  const Json query = {{"class", "Car_Rental_Service"},
                      {"predicates", Json::array({{{"attribute", "model"}, {"op", "="}, {"value", "x"}}})}};
  for (ErrorCode c : {ErrorCode::kFetchFailed, ErrorCode::kParseFailed, ErrorCode::kDuplicateItemId,
                      ErrorCode::kTypeMismatch, ErrorCode::kMalformedDescriptor, ErrorCode::kUnsupportedSchemaType}) {
    fetcher->code = c;
    const auto r = post("/domains/poec/discover/product-instance", query, false);
    ASSERT_EQ(last_status, 200) << r.dump();
    ASSERT_EQ(r.at("payload").at("warnings").size(), 1u);
    EXPECT_EQ(r.at("payload").at("warnings")[0].at("code"), std::string(error_code_name(c)));
    seen.insert(c);
  }
  fetcher->code.reset();
  fetcher->body = "<catalog><item id=\"a\"/><item id=\"a\"/></catalog>";
  EXPECT_EQ(post("/domains/poec/discover/product-instance", query, false).at("payload").at("warnings")[0].at("code"),
            "DuplicateItemId");
  fetcher->foreign = true;
  expect_code(post("/domains/poec/discover/product-instance", query, false), ErrorCode::kInternal, "internal");

  // SnapshotCorrupt and IoError only arise at startup (store tests), and no
  // route takes a property name (reasoner tests).
  for (int i = 1; i <= static_cast<int>(ErrorCode::kInternal); ++i) {
    const auto c = static_cast<ErrorCode>(i);
    if (c == ErrorCode::kSnapshotCorrupt || c == ErrorCode::kIoError || c == ErrorCode::kUnknownProperty) continue;
    EXPECT_TRUE(seen.contains(c)) << error_code_name(c);
  }
}

// Replaces values by their JSON type. Objects keyed by data (attributes,
// details) collapse to a single "*" entry; arrays keep one merged element.
Json shape(const Json& j, bool keyed_by_data = false) {
  if (j.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : j.items()) {
      const bool dynamic = k == "attributes" || k == "details";
      if (keyed_by_data) {
        out["*"] = shape(v);
      } else {
        out[k] = shape(v, dynamic);
      }
    }
    return out;
  }
  if (j.is_array()) {
    Json merged;
    for (const auto& e : j) {
      const Json s = shape(e);
      if (merged.is_null()) {
        merged = s;
      } else if (merged.is_object() && s.is_object()) {
        merged.update(s);
      }
    }
    return merged.is_null() ? Json::array() : Json::array({merged});
  }
  if (j.is_string()) return "string";
  if (j.is_boolean()) return "boolean";
  if (j.is_number()) return "number";
  return "null";
}

TEST_F(ServerTest, ResponseShapesMatchGolden) {
  Json shapes = Json::object();
  const auto b = post("/businesses", {{"name", "Rent-A-Car"}, {"contact", "desk"}});
  shapes["POST /businesses"] = shape(b);
  const std::string key = b.at("payload").at("key");
  shapes["POST /tmodels"] = shape(post("/tmodels", {{"name", "spec"}, {"overview_doc", "http://x/spec"}}));
  shapes["POST /services"] =
      shape(post("/services", {{"business_key", key}, {"name", "scanners"}, {"binding_urls", {"http://scan"}},
                               {"category_bag", Json::array({{{"tmodel_key", std::string(registry::kUnspscKey)},
                                                              {"key_name", "scanner"},
                                                              {"key_value", "43211711"}}})}}));
  const auto reg = post("/domains/poec/register",
                        {{"instance_document", testing::read_fixture("scenario/instances/my-car-rental.daml")},
                         {"service", {{"business_key", key}, {"name", "rental"}}}});
  shapes["POST /domains/{d}/register"] = shape(reg);
  register_class("Chauffeur", "Driver", key);
  shapes["GET /domains/{d}/discover/functionality"] = shape(get("/domains/poec/discover/functionality?class=PoecService"));
  shapes["GET /domains/{d}/discover/complementary"] =
      shape(get("/domains/poec/discover/complementary?class=Car_Rental_Service"));
  shapes["GET /domains/{d}/discover/addon-products"] = shape(get("/domains/poec/discover/addon-products?product=desktop"));
  shapes["POST /domains/{d}/discover/product-instance"] =
      shape(post("/domains/poec/discover/product-instance",
                 {{"class", "Rent_Vehicle_Service"},
                  {"predicates", Json::array({{{"attribute", "price"}, {"op", "<"}, {"value", "1000"}}})}}));
  const std::string svc = reg.at("payload").at("service").at("key");
  shapes["GET /services/{key}"] = shape(get("/services/" + svc));
  shapes["GET /tmodels/{key}"] = shape(get("/tmodels/" + std::string(registry::kUnspscKey)));
  shapes["GET /businesses/{key}"] = shape(get("/businesses/" + key));
  shapes["GET /domains"] = shape(get("/domains"));
  shapes["GET /integrity"] = shape(get("/integrity"));
  shapes["POST /find/services"] = shape(post(
      "/find/services", {{"filters", Json::array({{{"tmodel_key", std::string(registry::kUnspscKey)}}})}}, false));
  shapes["POST /find/tmodels"] = shape(post("/find/tmodels", {{"name_prefix", "Car"}}, false));
  shapes["error"] = shape(get("/domains/poec/discover/functionality?class=NoSuchClass"));

  const std::string golden = testing::fixture_path("golden/http-shapes.json");
  if (const char* u = std::getenv("SEMREG_UPDATE_GOLDEN"); u != nullptr && *u) {
    std::ofstream(golden) << shapes.dump(2) << "\n";
  }
  const Json want = Json::parse(testing::read_fixture("golden/http-shapes.json"));
  for (const auto& [endpoint, s] : want.items()) {
    ASSERT_TRUE(shapes.contains(endpoint)) << endpoint;
    EXPECT_EQ(shapes.at(endpoint), s) << endpoint << "\n" << shapes.at(endpoint).dump(2);
  }
  EXPECT_EQ(shapes.size(), want.size());
}

TEST(HttpStatus, Mapping) {
  EXPECT_EQ(server::http_status(ErrorCode::kUnauthorized), 401);
  EXPECT_EQ(server::http_status(ErrorCode::kNotFound), 404);
  EXPECT_EQ(server::http_status(ErrorCode::kTModelInUse), 409);
  EXPECT_EQ(server::http_status(ErrorCode::kInternal), 500);
}

}  // namespace
}  // namespace semreg
