#include "catalog/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "common/error.hpp"
#include "ontology/vocabulary.hpp"
#include "ontology/xml_dom.hpp"
#include "reasoner/reasoner.hpp"

namespace semreg::catalog {

bool is_well_known_schema_type(std::string_view schema_type) { return schema_type == kXmlGeneric; }

void check_descriptor(const ElectronicCatalogDescriptor& desc) {
  if (desc.catalog_uri.empty()) throw Error(ErrorCode::kMalformedDescriptor, "catalog descriptor has no CatalogURI");
  if (!is_well_known_schema_type(desc.schema_type) && (!desc.schema_ref || desc.schema_ref->empty())) {
    throw Error(ErrorCode::kMalformedDescriptor,
                "schema type \"" + desc.schema_type + "\" is not well known, CatalogSchema is required",
                {{"catalog_uri", desc.catalog_uri}, {"schema_type", desc.schema_type}});
  }
}

AttributeValue AttributeValue::string(std::string text) {
  return AttributeValue{AttributeType::kString, std::move(text), std::nullopt};
}

AttributeValue AttributeValue::number(std::string text) {
  auto d = Decimal::parse(text);
  if (!d) throw Error(ErrorCode::kParseFailed, "\"" + text + "\" is not a decimal value");
  return AttributeValue{AttributeType::kDecimal, std::move(text), std::move(d)};
}

std::optional<Operator> parse_operator(std::string_view s) {
  if (s == "=" || s == "==") return Operator::kEq;
  if (s == "!=" || s == "≠" || s == "<>") return Operator::kNe;
  if (s == "<") return Operator::kLt;
  if (s == "<=" || s == "≤") return Operator::kLe;
  if (s == ">") return Operator::kGt;
  if (s == ">=" || s == "≥") return Operator::kGe;
  if (s == "contains") return Operator::kContains;
  return std::nullopt;
}

std::string_view operator_symbol(Operator op) {
  switch (op) {
    case Operator::kEq: return "=";
    case Operator::kNe: return "!=";
    case Operator::kLt: return "<";
    case Operator::kLe: return "<=";
    case Operator::kGt: return ">";
    case Operator::kGe: return ">=";
    case Operator::kContains: return "contains";
  }
  return "=";
}

bool is_numeric(Operator op) {
  return op == Operator::kLt || op == Operator::kLe || op == Operator::kGt || op == Operator::kGe;
}

Predicate parse_where(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, "predicate must look like attribute:op:value, got \"" +
                                                 std::string(text) + "\"");
  }
  const auto op = parse_operator(text.substr(first + 1, second - first - 1));
  if (!op) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown operator \"" + std::string(text.substr(first + 1, second - first - 1)) + "\"");
  }
  return Predicate{std::string(text.substr(0, first)), *op, std::string(text.substr(second + 1))};
}

CatalogQuery::CatalogQuery(std::vector<Predicate> predicates) : predicates_(std::move(predicates)) {
  if (predicates_.empty()) throw Error(ErrorCode::kInvalidArgument, "catalog query needs at least one predicate");
  for (const auto& p : predicates_) {
    if (p.attribute.empty()) throw Error(ErrorCode::kInvalidArgument, "predicate attribute must not be empty");
    if (is_numeric(p.op) && !Decimal::parse(p.value)) {
      throw Error(ErrorCode::kInvalidArgument, "operator " + std::string(operator_symbol(p.op)) +
                                                   " needs a decimal value, got \"" + p.value + "\"");
    }
  }
}

bool evaluate(const CatalogItem& item, const Predicate& p) {
  auto it = item.attributes.find(p.attribute);
  if (it == item.attributes.end()) return false;
  const AttributeValue& v = it->second;

  if (is_numeric(p.op)) {
    if (v.type != AttributeType::kDecimal) {
      throw Error(ErrorCode::kTypeMismatch,
                  "attribute " + p.attribute + " of item " + item.id + " is not numeric",
                  {{"item", item.id}, {"attribute", p.attribute}});
    }
    const auto rhs = Decimal::parse(p.value);
    if (!rhs) throw Error(ErrorCode::kInvalidArgument, "\"" + p.value + "\" is not a decimal value");
    const auto cmp = *v.decimal <=> *rhs;
    switch (p.op) {
      case Operator::kLt: return cmp < 0;
      case Operator::kLe: return cmp <= 0;
      case Operator::kGt: return cmp > 0;
      default: return cmp >= 0;
    }
  }

  if (p.op == Operator::kContains) return v.lexical.find(p.value) != std::string::npos;

  bool equal = v.lexical == p.value;
  if (v.type == AttributeType::kDecimal) {
    if (auto rhs = Decimal::parse(p.value)) equal = *v.decimal == *rhs;
  }
  return p.op == Operator::kEq ? equal : !equal;
}

CatalogQueryResult execute_query(const Catalog& catalog, const CatalogQuery& query) {
  CatalogQueryResult result{{}, catalog.uri};
  for (const auto& item : catalog.items) {
    bool all = true;
    for (const auto& p : query.predicates()) {
      if (!evaluate(item, p)) {
        all = false;
        break;
      }
    }
    if (all) result.items.push_back(item);
  }
  return result;
}

std::string FileFetcher::fetch(std::string_view uri) const {
  std::string path(uri);
  if (path.starts_with("file://")) {
    path = path.substr(7);
  } else if (has_scheme(path)) {
    throw Error(ErrorCode::kFetchFailed, "unsupported URI scheme: " + std::string(uri), {{"uri", std::string(uri)}});
  } else if (!path.starts_with('/')) {
    path = root_ + "/" + path;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFetchFailed, "cannot read " + std::string(uri), {{"uri", std::string(uri)}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string MapFetcher::fetch(std::string_view uri) const {
  auto it = docs_.find(uri);
  if (it == docs_.end()) {
    throw Error(ErrorCode::kFetchFailed, "no document at " + std::string(uri), {{"uri", std::string(uri)}});
  }
  return it->second;
}

Catalog parse_catalog(std::string_view text, std::string uri) {
  xml::Element root;
  try {
    root = xml::parse(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseFailed, "catalog " + uri + ": " + e.what(), {{"uri", uri}});
  }
  auto fail = [&](const xml::Element& at, const std::string& what) -> Error {
    return Error(ErrorCode::kParseFailed, "catalog " + uri + " line " + std::to_string(at.line) + ": " + what,
                 {{"uri", uri}, {"line", std::to_string(at.line)}});
  };
  if (!root.name.ns.empty() || root.name.local != "catalog") throw fail(root, "root element must be <catalog>");

  Catalog catalog;
  catalog.uri = uri;
  std::set<std::string> ids;
  for (const auto& item_el : root.children) {
    if (item_el.name.local != "item") throw fail(item_el, "unexpected element <" + item_el.name.local + ">");
    const auto* id = item_el.attribute("", "id");
    if (id == nullptr || id->value.empty()) throw fail(item_el, "<item> needs a non-empty id");
    if (!ids.insert(id->value).second) {
      throw Error(ErrorCode::kDuplicateItemId, "catalog " + uri + " repeats item id " + id->value,
                  {{"uri", uri}, {"item", id->value}});
    }
    CatalogItem item;
    item.id = id->value;
    for (const auto& attr_el : item_el.children) {
      if (attr_el.name.local != "attribute") throw fail(attr_el, "unexpected element <" + attr_el.name.local + ">");
      const auto* name = attr_el.attribute("", "name");
      const auto* value = attr_el.attribute("", "value");
      const auto* type = attr_el.attribute("", "type");
      if (name == nullptr || name->value.empty()) throw fail(attr_el, "<attribute> needs a non-empty name");
      if (value == nullptr) throw fail(attr_el, "<attribute> needs a value");
      AttributeValue v;
      const std::string type_name = type == nullptr ? "string" : type->value;
      if (type_name == "string") {
        v = AttributeValue::string(value->value);
      } else if (type_name == "decimal") {
        if (!Decimal::parse(value->value)) throw fail(attr_el, "\"" + value->value + "\" is not a decimal");
        v = AttributeValue::number(value->value);
      } else {
        throw fail(attr_el, "unknown attribute type \"" + type_name + "\"");
      }
      if (!item.attributes.emplace(name->value, std::move(v)).second) {
        throw fail(attr_el, "attribute " + name->value + " repeated in item " + item.id);
      }
    }
    catalog.items.push_back(std::move(item));
  }
  return catalog;
}

Catalog load_catalog(const ElectronicCatalogDescriptor& desc, const ResourceFetcher& fetcher) {
  check_descriptor(desc);
  if (desc.schema_type != kXmlGeneric) {
    throw Error(ErrorCode::kUnsupportedSchemaType, "catalog schema type \"" + desc.schema_type + "\" is not supported",
                {{"catalog_uri", desc.catalog_uri}, {"schema_type", desc.schema_type}});
  }
  return parse_catalog(fetcher.fetch(desc.catalog_uri), desc.catalog_uri);
}

namespace {

std::optional<std::string> first_value(const onto::OntologyGraph& graph, const onto::InstanceDef& inst,
                                       const Iri& property) {
  const auto props = reason::property_and_subproperties(graph, property);
  for (const auto& a : inst.assertions) {
    if (std::find(props.begin(), props.end(), a.property) != props.end()) return onto::value_text(a.value);
  }
  return std::nullopt;
}

}  // namespace

std::optional<ElectronicCatalogDescriptor> extract_query_catalog(const onto::OntologyGraph& graph,
                                                                 const onto::InstanceDef& instance) {
  const auto target_id = first_value(graph, instance, vocab::kHasQueryCatalog);
  if (!target_id) return std::nullopt;

  const onto::InstanceDef* target = graph.find_instance(Iri(*target_id));
  if (target == nullptr) {
    throw Error(ErrorCode::kMalformedDescriptor, "has_Query_Catalog target " + *target_id + " is not an instance",
                {{"instance", instance.id.str()}, {"target", *target_id}});
  }
  const onto::InstanceDef* holder = target;
  if (!first_value(graph, *holder, vocab::kCatalogUri)) {
    if (auto via = first_value(graph, *target, vocab::kInputCatalog)) {
      if (const auto* cat = graph.find_instance(Iri(*via))) holder = cat;
    }
  }
  auto uri = first_value(graph, *holder, vocab::kCatalogUri);
  if (!uri || uri->empty()) {
    throw Error(ErrorCode::kMalformedDescriptor, "catalog descriptor " + holder->id.str() + " has no CatalogURI",
                {{"instance", instance.id.str()}, {"descriptor", holder->id.str()}});
  }
  ElectronicCatalogDescriptor desc;
  desc.catalog_uri = *uri;
  if (auto type = first_value(graph, *holder, vocab::kCatalogSchemaType)) {
    // Allow the type to be given as an IRI whose local name is the identifier.
    desc.schema_type = has_scheme(*type) ? std::string(Iri(*type).local_name()) : *type;
  }
  desc.schema_ref = first_value(graph, *holder, vocab::kCatalogSchema);
  return desc;
}

}  // namespace semreg::catalog
