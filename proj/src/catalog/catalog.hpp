#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common/decimal.hpp"
#include "ontology/model.hpp"

namespace semreg::catalog {

// The flat XML item-list format understood by load_catalog.
inline constexpr std::string_view kXmlGeneric = "xml-generic";

struct ElectronicCatalogDescriptor {
  std::string catalog_uri;
  std::string schema_type{kXmlGeneric};
  std::optional<std::string> schema_ref;

  friend bool operator==(const ElectronicCatalogDescriptor&, const ElectronicCatalogDescriptor&) = default;
};

bool is_well_known_schema_type(std::string_view schema_type);

// Throws MalformedDescriptor (empty URI, missing schema_ref for a schema type
// that is not well known).
void check_descriptor(const ElectronicCatalogDescriptor& desc);

enum class AttributeType { kString, kDecimal };

struct AttributeValue {
  AttributeType type = AttributeType::kString;
  std::string lexical;
  std::optional<Decimal> decimal;  // set when type is kDecimal

  static AttributeValue string(std::string text);
  // Throws ParseFailed when `text` is not a decimal.
  static AttributeValue number(std::string text);

  friend bool operator==(const AttributeValue& a, const AttributeValue& b) {
    return a.type == b.type && a.lexical == b.lexical;
  }
};

struct CatalogItem {
  std::string id;
  std::map<std::string, AttributeValue> attributes;

  friend bool operator==(const CatalogItem&, const CatalogItem&) = default;
};

struct Catalog {
  std::string uri;
  std::vector<CatalogItem> items;
};

enum class Operator { kEq, kNe, kLt, kLe, kGt, kGe, kContains };

// Accepts "=", "!=", "≠", "<", "<=", "≤", ">", ">=", "≥", "contains".
std::optional<Operator> parse_operator(std::string_view symbol);
std::string_view operator_symbol(Operator op);
bool is_numeric(Operator op);

struct Predicate {
  std::string attribute;
  Operator op = Operator::kEq;
  std::string value;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// Parses "attribute:op:value"; the value may itself contain ':'.
Predicate parse_where(std::string_view text);

// Non-empty conjunction of predicates. Numeric operators require a decimal
// comparison value.
class CatalogQuery {
 public:
  // Throws InvalidArgument if the conjunction is empty, an attribute name is
  // empty, or a numeric operator is given a non-decimal value.
  explicit CatalogQuery(std::vector<Predicate> predicates);

  const std::vector<Predicate>& predicates() const noexcept { return predicates_; }

 private:
  std::vector<Predicate> predicates_;
};

struct CatalogQueryResult {
  std::vector<CatalogItem> items;
  std::string catalog_uri;
};

// Evaluates one predicate. An attribute the item lacks makes the predicate
// false. Throws TypeMismatch for a numeric operator on a string attribute.
bool evaluate(const CatalogItem& item, const Predicate& predicate);

// Items satisfying every predicate, in catalog order.
CatalogQueryResult execute_query(const Catalog& catalog, const CatalogQuery& query);

// Capability used to read catalog documents. Implementations throw
// Error{kFetchFailed} carrying the URI.
class ResourceFetcher {
 public:
  virtual ~ResourceFetcher() = default;
  virtual std::string fetch(std::string_view uri) const = 0;
};

// Reads file:// URIs and plain paths; relative paths resolve against `root`.
class FileFetcher : public ResourceFetcher {
 public:
  explicit FileFetcher(std::string root = ".") : root_(std::move(root)) {}
  std::string fetch(std::string_view uri) const override;

 private:
  std::string root_;
};

// In-memory documents keyed by exact URI.
class MapFetcher : public ResourceFetcher {
 public:
  void put(std::string uri, std::string content) { docs_[std::move(uri)] = std::move(content); }
  std::string fetch(std::string_view uri) const override;

 private:
  std::map<std::string, std::string, std::less<>> docs_;
};

// Parses the xml-generic format:
//   <catalog>
//     <item id="...">
//       <attribute name="..." type="string|decimal" value="..."/>
//     </item>
//   </catalog>
// Throws ParseFailed or DuplicateItemId.
Catalog parse_catalog(std::string_view xml, std::string uri);

// Throws MalformedDescriptor, UnsupportedSchemaType, FetchFailed,
// ParseFailed, DuplicateItemId.
Catalog load_catalog(const ElectronicCatalogDescriptor& desc, const ResourceFetcher& fetcher);

// Builds a descriptor from an instance's has_Query_Catalog target. The target
// carries CatalogURI / CatalogSchema / CatalogSchemaType itself, or reaches an
// ElectronicCatalog through inputCatalog. Returns nullopt when the instance
// has no has_Query_Catalog; throws MalformedDescriptor when the target has no
// CatalogURI.
std::optional<ElectronicCatalogDescriptor> extract_query_catalog(const onto::OntologyGraph& graph,
                                                                 const onto::InstanceDef& instance);

}  // namespace semreg::catalog
