#include <gtest/gtest.h>

#include <algorithm>

#include "catalog/catalog.hpp"
#include "common/decimal.hpp"
#include "common/error.hpp"
#include "ontology/parser.hpp"
#include "ontology/vocabulary.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace semreg {
namespace {

using catalog::CatalogQuery;
using catalog::Operator;
using catalog::Predicate;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

catalog::Catalog fixture_catalog(const std::string& name) {
  const catalog::FileFetcher fetcher(testing::scenario_catalog_root());
  return catalog::load_catalog({"catalogs/" + name, "xml-generic", {}}, fetcher);
}

std::vector<std::string> ids(const catalog::CatalogQueryResult& r) {
  std::vector<std::string> out;
  for (const auto& i : r.items) out.push_back(i.id);
  return out;
}

TEST(Decimal, ExactComparison) {
  auto d = [](const char* s) { return *Decimal::parse(s); };
  EXPECT_EQ(d("19.990"), d("19.99"));
  EXPECT_EQ(d("-0"), d("0.000"));
  EXPECT_LT(d("0.1"), d("0.10000000000000000001"));
  EXPECT_GT(d("12345678901234567890.01"), d("12345678901234567890.001"));
  EXPECT_LT(d("-5"), d("-4.99"));
  EXPECT_EQ(d("007.50").canonical(), "7.5");
  EXPECT_EQ(d(".5"), d("0.5"));
  for (const char* bad : {"", "1e3", "1.2.3", " 1", "abc", "-", "."}) EXPECT_FALSE(Decimal::parse(bad)) << bad;
}

TEST(Catalog, CarFixture) {
  const auto c = fixture_catalog("car-rental.xml");
  ASSERT_EQ(c.items.size(), 3u);
  for (const auto& item : c.items) {
    EXPECT_TRUE(item.attributes.contains("model"));
    ASSERT_TRUE(item.attributes.contains("price"));
    EXPECT_EQ(item.attributes.at("price").type, catalog::AttributeType::kDecimal);
  }
  const auto r = catalog::execute_query(c, CatalogQuery({{"model", Operator::kEq, "Chevrolet Model 1956"}}));
  EXPECT_EQ(ids(r), std::vector<std::string>{"car-1"});
  EXPECT_EQ(r.catalog_uri, "catalogs/car-rental.xml");
}

TEST(Catalog, SixItemComputerFixtureMatchesOracle) {
  const auto c = fixture_catalog("anatolia-computers.xml");
  ASSERT_EQ(c.items.size(), 6u);
  const std::vector<Predicate> preds{
      {"brand", Operator::kEq, "IBM"}, {"condition", Operator::kEq, "second hand"}, {"price", Operator::kLe, "500"}};
  const auto got = ids(catalog::execute_query(c, CatalogQuery(preds)));
  EXPECT_EQ(got, oracle::query(c, preds));
  EXPECT_EQ(got, std::vector<std::string>{"ac-101"});
}

TEST(Catalog, EmptyResultAndEmptyCatalog) {
  const auto c = fixture_catalog("car-rental.xml");
  EXPECT_TRUE(catalog::execute_query(c, CatalogQuery({{"model", Operator::kEq, "DeLorean"}})).items.empty());
  const auto empty = catalog::parse_catalog("<catalog/>", "mem://empty");
  EXPECT_TRUE(empty.items.empty());
  EXPECT_TRUE(catalog::execute_query(empty, CatalogQuery({{"x", Operator::kEq, "y"}})).items.empty());
}

TEST(Catalog, FetchFailedCarriesUri) {
  const catalog::FileFetcher fetcher(testing::scenario_catalog_root());
  try {
    catalog::load_catalog({"catalogs/missing.xml", "xml-generic", {}}, fetcher);
    FAIL() << "expected FetchFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFetchFailed);
    const bool has_uri = std::any_of(e.details().begin(), e.details().end(),
                                     [](const auto& d) { return d.value == "catalogs/missing.xml"; });
    EXPECT_TRUE(has_uri);
  }
  catalog::MapFetcher map;
  EXPECT_EQ(code_of([&] { map.fetch("mem://nothing"); }), ErrorCode::kFetchFailed);
}

TEST(Catalog, LoadErrors) {
  catalog::MapFetcher f;
  f.put("mem://dup", "<catalog><item id=\"a\"/><item id=\"a\"/></catalog>");
  f.put("mem://bad", "<catalog><item id=\"a\">");
  f.put("mem://noid", "<catalog><item/></catalog>");
  f.put("mem://badnum", "<catalog><item id=\"a\"><attribute name=\"p\" type=\"decimal\" value=\"cheap\"/></item></catalog>");
  f.put("mem://root", "<items/>");
  EXPECT_EQ(code_of([&] { catalog::load_catalog({"mem://dup", "xml-generic", {}}, f); }), ErrorCode::kDuplicateItemId);
  EXPECT_EQ(code_of([&] { catalog::load_catalog({"mem://bad", "xml-generic", {}}, f); }), ErrorCode::kParseFailed);
  EXPECT_EQ(code_of([&] { catalog::load_catalog({"mem://noid", "xml-generic", {}}, f); }), ErrorCode::kParseFailed);
  EXPECT_EQ(code_of([&] { catalog::load_catalog({"mem://badnum", "xml-generic", {}}, f); }), ErrorCode::kParseFailed);
  EXPECT_EQ(code_of([&] { catalog::load_catalog({"mem://root", "xml-generic", {}}, f); }), ErrorCode::kParseFailed);
  EXPECT_EQ(code_of([&] { catalog::load_catalog({"", "xml-generic", {}}, f); }), ErrorCode::kMalformedDescriptor);
  EXPECT_EQ(code_of([&] { catalog::load_catalog({"mem://dup", "cbl", {}}, f); }), ErrorCode::kMalformedDescriptor);
  EXPECT_EQ(code_of([&] { catalog::load_catalog({"mem://dup", "cbl", "http://example.com/cbl.xsd"}, f); }),
            ErrorCode::kUnsupportedSchemaType);
}

TEST(Catalog, TypeMismatchOnStringAttribute) {
  const auto c = catalog::parse_catalog(
      "<catalog><item id=\"a\"><attribute name=\"price\" value=\"cheap\"/></item></catalog>", "mem://x");
  EXPECT_EQ(code_of([&] { catalog::execute_query(c, CatalogQuery({{"price", Operator::kLt, "10"}})); }),
            ErrorCode::kTypeMismatch);
  EXPECT_EQ(ids(catalog::execute_query(c, CatalogQuery({{"price", Operator::kEq, "cheap"}}))),
            std::vector<std::string>{"a"});
}

TEST(Catalog, QueryValidation) {
  EXPECT_EQ(code_of([] { CatalogQuery({}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { CatalogQuery({{"price", Operator::kLt, "ten"}}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { CatalogQuery({{"", Operator::kEq, "x"}}); }), ErrorCode::kInvalidArgument);
}

TEST(Catalog, ParseWhere) {
  EXPECT_EQ(catalog::parse_where("condition:=:second hand"), (Predicate{"condition", Operator::kEq, "second hand"}));
  EXPECT_EQ(catalog::parse_where("url:contains:http://x"), (Predicate{"url", Operator::kContains, "http://x"}));
  EXPECT_EQ(catalog::parse_where("price:<=:500").op, Operator::kLe);
  EXPECT_EQ(catalog::parse_where("price:≤:500").op, Operator::kLe);
  EXPECT_EQ(catalog::parse_where("brand:≠:IBM").op, Operator::kNe);
  EXPECT_EQ(catalog::parse_where("brand:!=:IBM").op, Operator::kNe);
  EXPECT_EQ(code_of([] { catalog::parse_where("brand=IBM"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { catalog::parse_where("brand:~:IBM"); }), ErrorCode::kInvalidArgument);
  for (auto op : {Operator::kEq, Operator::kNe, Operator::kLt, Operator::kLe, Operator::kGt, Operator::kGe,
                  Operator::kContains}) {
    EXPECT_EQ(catalog::parse_operator(catalog::operator_symbol(op)), op);
  }
}

TEST(Catalog, XmlRoundTrip) {
  testing::Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto c = testing::random_catalog(rng, 30);
    const auto again = catalog::parse_catalog(testing::catalog_xml(c), c.uri);
    EXPECT_EQ(again.items, c.items);
  }
}

TEST(CatalogDescriptor, ExtractedFromInstance) {
  auto docs = testing::domain_documents();
  docs.push_back(testing::parse_fixture("scenario/instances/my-car-rental.daml"));
  docs.push_back(testing::parse_fixture("scenario/instances/capital-car-hire.daml"));
  const auto g = onto::merge(docs);
  const auto* rental = g.find_instance(Iri("http://rentacar.example.com/services.daml#My_Car_Rental_Service"));
  ASSERT_NE(rental, nullptr);
  const auto desc = catalog::extract_query_catalog(g, *rental);
  ASSERT_TRUE(desc.has_value());
  EXPECT_EQ(desc->catalog_uri, "catalogs/car-rental.xml");
  EXPECT_EQ(desc->schema_type, "xml-generic");
  EXPECT_FALSE(desc->schema_ref.has_value());

  const auto* plain = g.find_instance(Iri("http://capitalcars.example.com/services.daml#Capital_Car_Hire"));
  ASSERT_NE(plain, nullptr);
  EXPECT_FALSE(catalog::extract_query_catalog(g, *plain).has_value());
}

TEST(CatalogDescriptor, MissingUriIsMalformed) {
  auto docs = testing::domain_documents();
  docs.push_back(onto::parse_document(
      "<rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\" "
      "xmlns=\"http://poec.example.org/2002/poec.daml#\" xml:base=\"http://x.example.com/s.daml\">"
      "<Car_Rental_Service rdf:ID=\"S\"><has_Query_Catalog><QueryCatalog rdf:ID=\"Q\">"
      "<inputCatalog><ElectronicCatalog rdf:ID=\"E\"><CatalogSchemaType>xml-generic</CatalogSchemaType>"
      "</ElectronicCatalog></inputCatalog></QueryCatalog></has_Query_Catalog></Car_Rental_Service></rdf:RDF>",
      ""));
  const auto g = onto::merge(docs);
  const auto* inst = g.find_instance(Iri("http://x.example.com/s.daml#S"));
  ASSERT_NE(inst, nullptr);
  EXPECT_EQ(code_of([&] { catalog::extract_query_catalog(g, *inst); }), ErrorCode::kMalformedDescriptor);
}

TEST(CatalogProperties, RandomCatalogsMatchOracle) {
  for (int round = 0; round < 200; ++round) {
    testing::Rng rng(round);
    const auto c = testing::random_catalog(rng);
    const auto preds = testing::random_predicates(rng);
    SCOPED_TRACE(round);
    EXPECT_EQ(ids(catalog::execute_query(c, CatalogQuery(preds))), oracle::query(c, preds));
  }
}

TEST(CatalogProperties, ConjunctionAndMonotonicity) {
  for (int round = 0; round < 200; ++round) {
    testing::Rng rng(10000 + round);
    const auto c = testing::random_catalog(rng);
    const auto p1 = testing::random_predicates(rng, 2);
    const auto p2 = testing::random_predicates(rng, 2);
    auto both = p1;
    both.insert(both.end(), p2.begin(), p2.end());
    const auto r1 = ids(catalog::execute_query(c, CatalogQuery(p1)));
    const auto r2 = ids(catalog::execute_query(c, CatalogQuery(p2)));
    const auto r12 = ids(catalog::execute_query(c, CatalogQuery(both)));
    // Item ids are unique and results keep catalog order, so filtering r1 by
    // membership in r2 is the ordered intersection.
    std::vector<std::string> inter;
    for (const auto& id : r1) {
      if (std::find(r2.begin(), r2.end(), id) != r2.end()) inter.push_back(id);
    }
    EXPECT_EQ(r12, inter);
    EXPECT_LE(r12.size(), r1.size());
    EXPECT_LE(r12.size(), r2.size());
  }
}

}  // namespace
}  // namespace semreg
