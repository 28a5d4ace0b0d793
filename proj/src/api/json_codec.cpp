#include "api/json_codec.hpp"

namespace semreg::codec {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); }

const Json& require_object(const Json& j, std::string_view what) {
  if (!j.is_object()) bad(std::string(what) + " must be a JSON object");
  return j;
}

std::string get_string(const Json& j, const char* field, bool required, std::string fallback = {}) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) {
    if (required) bad(std::string("missing field \"") + field + "\"");
    return fallback;
  }
  if (!it->is_string()) bad(std::string("field \"") + field + "\" must be a string");
  return it->get<std::string>();
}

std::vector<std::string> get_strings(const Json& j, const char* field) {
  std::vector<std::string> out;
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return out;
  if (!it->is_array()) bad(std::string("field \"") + field + "\" must be an array of strings");
  for (const auto& e : *it) {
    if (!e.is_string()) bad(std::string("field \"") + field + "\" must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

registry::CategoryBag bag_field(const Json& j) {
  auto it = j.find("category_bag");
  if (it == j.end() || it->is_null()) return {};
  return category_bag_from_json(*it);
}

}  // namespace

Json to_json(const registry::KeyedReference& ref) {
  return {{"tmodel_key", ref.tmodel_key}, {"key_name", ref.key_name}, {"key_value", ref.key_value}};
}

Json to_json(const registry::CategoryBag& bag) {
  Json out = Json::array();
  for (const auto& r : bag.entries()) out.push_back(to_json(r));
  return out;
}

Json to_json(const registry::TModel& t) {
  return {{"key", t.key},
          {"name", t.name},
          {"overview_doc", t.overview_doc ? Json(*t.overview_doc) : Json(nullptr)},
          {"category_bag", to_json(t.category_bag)}};
}

Json to_json(const registry::BusinessEntity& b) {
  return {{"key", b.key}, {"name", b.name}, {"contact", b.contact}, {"category_bag", to_json(b.category_bag)}};
}

Json to_json(const registry::BusinessService& s) {
  return {{"key", s.key},
          {"business_key", s.business_key},
          {"name", s.name},
          {"binding_urls", s.binding_urls},
          {"category_bag", to_json(s.category_bag)}};
}

Json to_json(const registry::Taxonomy& t) {
  Json values = Json::array();
  for (const auto& [code, label] : t.values) values.push_back({code, label});
  return {{"tmodel_key", t.tmodel_key}, {"name", t.name}, {"checked", t.checked}, {"values", values}};
}

Json to_json(const catalog::CatalogItem& item) {
  Json attrs = Json::object();
  for (const auto& [name, v] : item.attributes) {
    attrs[name] = {{"type", v.type == catalog::AttributeType::kDecimal ? "decimal" : "string"}, {"value", v.lexical}};
  }
  return {{"id", item.id}, {"attributes", attrs}};
}

Json to_json(const discovery::DiscoveryReport& report) {
  Json results = Json::array();
  for (const auto& r : report.results) {
    Json supporting = Json::array();
    for (const auto& f : r.evidence.supporting) supporting.push_back({{"kind", f.kind}, {"value", f.value}});
    Json items = Json::array();
    for (const auto& i : r.evidence.matched_items) items.push_back(to_json(i));
    results.push_back({{"service", to_json(r.service)},
                       {"evidence",
                        {{"generic_class", r.evidence.generic_class.str()},
                         {"via", std::string(discovery::via_name(r.evidence.via))},
                         {"supporting", supporting},
                         {"matched_items", items}}}});
  }
  Json warnings = Json::array();
  for (const auto& w : report.warnings) {
    warnings.push_back({{"code", w.code}, {"subject", w.subject}, {"message", w.message}});
  }
  return {{"results", results}, {"warnings", warnings}};
}

Json to_json(const discovery::SemanticBinding& b) {
  return {{"entity", b.entity.str()},
          {"tmodel_key", b.tmodel_key},
          {"kind", std::string(discovery::binding_kind_name(b.kind))}};
}

Json to_json(const discovery::RegistrationOutcome& outcome) {
  Json bindings = Json::array();
  for (const auto& b : outcome.bindings) bindings.push_back(to_json(b));
  return {{"service", to_json(outcome.service)}, {"bindings", bindings}};
}

Json to_json(const onto::ValidationReport& report) {
  auto list = [](const std::vector<onto::Finding>& findings) {
    Json out = Json::array();
    for (const auto& f : findings) {
      Json related = Json::array();
      for (const auto& r : f.related) related.push_back(r.str());
      out.push_back({{"code", f.code}, {"entity", f.entity.str()}, {"message", f.message}, {"related", related}});
    }
    return out;
  };
  return {{"ok", report.ok()}, {"errors", list(report.errors)}, {"warnings", list(report.warnings)}};
}

Json to_json(const Error& error) {
  Json details = Json::object();
  for (const auto& d : error.details()) {
    auto it = details.find(d.key);
    if (it == details.end()) {
      details[d.key] = d.value;
    } else {
      if (!it->is_array()) *it = Json::array({*it});
      it->push_back(d.value);
    }
  }
  return {{"code", std::string(error_code_name(error.code()))}, {"message", error.what()}, {"details", details}};
}

registry::KeyedReference keyed_reference_from_json(const Json& j) {
  require_object(j, "keyed reference");
  return {get_string(j, "tmodel_key", true), get_string(j, "key_name", false), get_string(j, "key_value", false)};
}

registry::CategoryBag category_bag_from_json(const Json& j) {
  if (!j.is_array()) bad("category_bag must be an array");
  registry::CategoryBag bag;
  for (const auto& e : j) bag.add(keyed_reference_from_json(e));
  return bag;
}

registry::TModel tmodel_from_json(const Json& j) {
  require_object(j, "tModel");
  registry::TModel t;
  t.key = get_string(j, "key", false);
  t.name = get_string(j, "name", true);
  if (auto doc = get_string(j, "overview_doc", false); !doc.empty()) t.overview_doc = doc;
  t.category_bag = bag_field(j);
  return t;
}

registry::BusinessEntity business_from_json(const Json& j) {
  require_object(j, "business");
  registry::BusinessEntity b;
  b.key = get_string(j, "key", false);
  b.name = get_string(j, "name", true);
  b.contact = get_string(j, "contact", false);
  b.category_bag = bag_field(j);
  return b;
}

registry::BusinessService service_from_json(const Json& j) {
  require_object(j, "service");
  registry::BusinessService s;
  s.key = get_string(j, "key", false);
  s.business_key = get_string(j, "business_key", true);
  s.name = get_string(j, "name", true);
  s.binding_urls = get_strings(j, "binding_urls");
  s.category_bag = bag_field(j);
  return s;
}

registry::Taxonomy taxonomy_from_json(const Json& j) {
  require_object(j, "taxonomy");
  registry::Taxonomy t;
  t.tmodel_key = get_string(j, "tmodel_key", true);
  t.name = get_string(j, "name", true);
  if (auto it = j.find("checked"); it != j.end()) {
    if (!it->is_boolean()) bad("field \"checked\" must be a boolean");
    t.checked = it->get<bool>();
  }
  auto it = j.find("values");
  if (it != j.end()) {
    if (!it->is_array()) bad("field \"values\" must be an array");
    for (const auto& v : *it) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string()) {
        bad("taxonomy values must be [code, label] pairs");
      }
      t.values.emplace_back(v[0].get<std::string>(), v[1].get<std::string>());
    }
  }
  std::sort(t.values.begin(), t.values.end());
  return t;
}

catalog::Predicate predicate_from_json(const Json& j) {
  if (j.is_string()) return catalog::parse_where(j.get<std::string>());
  require_object(j, "predicate");
  const std::string op = get_string(j, "op", true);
  auto parsed = catalog::parse_operator(op);
  if (!parsed) bad("unknown operator \"" + op + "\"");
  std::string value;
  auto it = j.find("value");
  if (it == j.end()) bad("missing field \"value\"");
  if (it->is_string()) {
    value = it->get<std::string>();
  } else if (it->is_number()) {
    value = it->dump();
  } else {
    bad("predicate value must be a string or a number");
  }
  return {get_string(j, "attribute", true), *parsed, value};
}

std::vector<catalog::Predicate> predicates_from_json(const Json& j) {
  if (!j.is_array()) bad("predicates must be an array");
  std::vector<catalog::Predicate> out;
  for (const auto& p : j) out.push_back(predicate_from_json(p));
  return out;
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const Json& j, bool pretty) {
  return j.dump(pretty ? 2 : -1, ' ', false, Json::error_handler_t::replace);
}

Json ok_envelope(Json payload) { return {{"status", "ok"}, {"payload", std::move(payload)}}; }

Json error_envelope(const Error& error) { return {{"status", "error"}, {"error", to_json(error)}}; }

}  // namespace semreg::codec
