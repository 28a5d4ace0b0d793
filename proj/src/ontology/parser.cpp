#include "ontology/parser.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "ontology/vocabulary.hpp"
#include "ontology/xml_dom.hpp"

namespace semreg::onto {
namespace {

using xml::Element;

bool in_vocabulary_ns(const xml::Name& n) {
  return n.ns == vocab::kRdfNs || n.ns == vocab::kRdfsNs || n.ns == vocab::kDamlNs;
}

bool is_rdf(const xml::Name& n, std::string_view local) { return n.is(vocab::kRdfNs, local); }
bool is_rdfs(const xml::Name& n, std::string_view local) { return n.is(vocab::kRdfsNs, local); }
bool is_daml(const xml::Name& n, std::string_view local) { return n.is(vocab::kDamlNs, local); }

// Accept both rdf:ID and bare ID (likewise resource/about).
const xml::Attribute* rdf_attribute(const Element& el, std::string_view local) {
  if (const auto* a = el.attribute(vocab::kRdfNs, local)) return a;
  return el.attribute("", local);
}

void check_parse_types(const Element& el) {
  if (const auto* pt = rdf_attribute(el, "parseType"); pt != nullptr && pt->value != "daml:collection") {
    throw Error(ErrorCode::kUnsupportedConstructFatal,
                "rdf:parseType=\"" + pt->value + "\" is not supported (line " + std::to_string(el.line) + ")",
                {{"line", std::to_string(el.line)}, {"column", std::to_string(el.column)}, {"parseType", pt->value}});
  }
  for (const auto& child : el.children) check_parse_types(child);
}

class DocumentParser {
 public:
  DocumentParser(std::string base, OntologyDocument& doc) : base_(std::move(base)), doc_(doc) {}

  void parse_root(const Element& root) {
    if (is_rdf(root.name, "RDF")) {
      check_attributes(root, {});
      for (const auto& child : root.children) parse_node(child);
    } else {
      parse_node(root);
    }
  }

 private:
  void warn(const Element& el, std::string code, std::string message) {
    doc_.warnings.push_back(ParseWarning{std::move(code), std::move(message), el.line, el.column});
  }

  // Reports attributes outside `known` (xml:* and xmlns are always allowed).
  void check_attributes(const Element& el, std::initializer_list<std::string_view> known) {
    for (const auto& a : el.attributes) {
      if (a.name.ns == vocab::kXmlNs) continue;
      const bool rdf_or_bare = a.name.ns.empty() || a.name.ns == vocab::kRdfNs;
      if (rdf_or_bare && std::find(known.begin(), known.end(), a.name.local) != known.end()) continue;
      warn(el, "UnknownAttribute",
           "attribute " + a.name.expanded() + " on " + el.name.expanded() + " ignored");
    }
  }

  std::optional<Iri> node_id(const Element& el) {
    if (const auto* id = rdf_attribute(el, "ID")) return resolve_reference("#" + id->value, base_);
    if (const auto* about = rdf_attribute(el, "about")) return resolve_reference(about->value, base_);
    return std::nullopt;
  }

  std::optional<Iri> resource(const Element& el) {
    if (const auto* r = rdf_attribute(el, "resource")) return resolve_reference(r->value, base_);
    return std::nullopt;
  }

  void parse_node(const Element& el) {
    const auto& n = el.name;
    if (is_daml(n, "Class")) {
      parse_class(el);
    } else if (is_rdf(n, "Property")) {
      parse_property(el, false);
    } else if (is_daml(n, "UniqueProperty")) {
      parse_property(el, true);
    } else if (is_rdf(n, "Description")) {
      parse_instance(el, std::nullopt);
    } else if (in_vocabulary_ns(n)) {
      warn(el, "UnsupportedElement", "element " + n.expanded() + " is outside the supported subset; skipped");
    } else {
      parse_instance(el, Iri(n.expanded()));
    }
  }

  void parse_class(const Element& el) {
    check_attributes(el, {"ID", "about"});
    auto id = node_id(el);
    if (!id) {
      warn(el, "MissingIdentifier", "daml:Class without rdf:ID or rdf:about; skipped");
      return;
    }
    ClassDef c;
    c.id = *id;
    for (const auto& child : el.children) {
      const auto& n = child.name;
      if (is_rdfs(n, "subClassOf")) {
        parse_sub_class_of(child, c);
      } else if (is_daml(n, "oneOf")) {
        parse_one_of(child, c);
      } else if (in_vocabulary_ns(n)) {
        warn(child, "UnsupportedElement", "element " + n.expanded() + " inside daml:Class ignored");
      } else if (auto value = property_value(child)) {
        c.assertions.push_back(PropertyAssertion{Iri(n.expanded()), std::move(*value)});
      }
    }
    add_class(el, std::move(c));
  }

  void parse_sub_class_of(const Element& el, ClassDef& c) {
    check_attributes(el, {"resource"});
    if (auto r = resource(el)) {
      c.super_classes.insert(*r);
      return;
    }
    bool used = false;
    for (const auto& child : el.children) {
      if (is_daml(child.name, "Restriction")) {
        check_attributes(child, {});
        std::optional<Iri> on_property;
        std::optional<Iri> to_class;
        for (const auto& part : child.children) {
          if (is_daml(part.name, "onProperty")) {
            check_attributes(part, {"resource"});
            on_property = resource(part);
          } else if (is_daml(part.name, "toClass")) {
            check_attributes(part, {"resource"});
            to_class = resource(part);
          } else {
            warn(part, "UnsupportedElement",
                 "element " + part.name.expanded() + " inside daml:Restriction ignored");
          }
        }
        if (on_property && to_class) {
          c.restrictions.push_back(Restriction{*on_property, *to_class});
          used = true;
        } else {
          warn(child, "IncompleteRestriction", "daml:Restriction needs daml:onProperty and daml:toClass; skipped");
        }
      } else {
        warn(child, "UnsupportedElement", "element " + child.name.expanded() + " inside rdfs:subClassOf ignored");
      }
    }
    if (!used && el.children.empty()) warn(el, "EmptySubClassOf", "rdfs:subClassOf without a resource; skipped");
  }

  void parse_one_of(const Element& el, ClassDef& c) {
    check_attributes(el, {"parseType"});
    if (rdf_attribute(el, "parseType") == nullptr) {
      warn(el, "MissingParseType", "daml:oneOf without rdf:parseType=\"daml:collection\"; treated as collection");
    }
    std::vector<Iri> members;
    for (const auto& child : el.children) {
      const bool reference_only = is_rdf(child.name, "Description") || is_daml(child.name, "Thing");
      if (reference_only) {
        check_attributes(child, {"ID", "about"});
        if (auto id = node_id(child)) members.push_back(*id);
        else warn(child, "MissingIdentifier", "collection member without identifier; skipped");
      } else if (in_vocabulary_ns(child.name)) {
        warn(child, "UnsupportedElement", "element " + child.name.expanded() + " inside daml:oneOf ignored");
      } else if (auto id = parse_instance(child, Iri(child.name.expanded()))) {
        members.push_back(*id);
      }
    }
    c.one_of = std::move(members);
  }

  void parse_property(const Element& el, bool unique) {
    check_attributes(el, {"ID", "about"});
    auto id = node_id(el);
    if (!id) {
      warn(el, "MissingIdentifier", "property without rdf:ID or rdf:about; skipped");
      return;
    }
    PropertyDef p;
    p.id = *id;
    p.unique = unique;
    for (const auto& child : el.children) {
      const auto& n = child.name;
      const bool known = is_rdfs(n, "domain") || is_rdfs(n, "range") || is_rdfs(n, "subPropertyOf");
      if (!known) {
        warn(child, "UnsupportedElement", "element " + n.expanded() + " inside property ignored");
        continue;
      }
      check_attributes(child, {"resource"});
      auto r = resource(child);
      if (!r) {
        warn(child, "MissingResource", n.expanded() + " without a resource; skipped");
        continue;
      }
      if (is_rdfs(n, "subPropertyOf")) {
        p.super_properties.insert(*r);
      } else {
        auto& slot = is_rdfs(n, "domain") ? p.domain : p.range;
        if (slot && *slot != *r) {
          warn(child, "MultipleValues", n.expanded() + " given more than once; first value kept");
        } else {
          slot = *r;
        }
      }
    }
    add_property(el, std::move(p));
  }

  // Parses a typed node (or rdf:Description) as an instance. Returns its id.
  std::optional<Iri> parse_instance(const Element& el, std::optional<Iri> class_id) {
    check_attributes(el, {"ID", "about"});
    auto id = node_id(el);
    if (!id) {
      warn(el, "MissingIdentifier", "node " + el.name.expanded() + " without rdf:ID or rdf:about; skipped");
      return std::nullopt;
    }
    InstanceDef inst;
    inst.id = *id;
    for (const auto& child : el.children) {
      const auto& n = child.name;
      if (is_rdf(n, "type")) {
        check_attributes(child, {"resource"});
        auto r = resource(child);
        if (r && !class_id) {
          class_id = *r;
        } else {
          warn(child, "UnsupportedElement", "additional rdf:type ignored");
        }
      } else if (in_vocabulary_ns(n)) {
        warn(child, "UnsupportedElement", "element " + n.expanded() + " inside instance ignored");
      } else if (auto value = property_value(child)) {
        inst.assertions.push_back(PropertyAssertion{Iri(n.expanded()), std::move(*value)});
      }
    }
    if (!class_id) {
      warn(el, "UntypedNode", "rdf:Description " + id->str() + " has no rdf:type; skipped");
      return std::nullopt;
    }
    inst.class_id = *class_id;
    add_instance(el, std::move(inst));
    return id;
  }

  std::optional<Value> property_value(const Element& el) {
    check_attributes(el, {"resource", "datatype"});
    if (auto r = resource(el)) return Value(*r);
    for (const auto& child : el.children) {
      if (auto id = parse_instance(child, in_vocabulary_ns(child.name) ? std::nullopt
                                                                        : std::optional<Iri>(child.name.expanded()))) {
        return Value(*id);
      }
      return std::nullopt;
    }
    Literal lit{el.text, LiteralType::kString};
    if (const auto* dt = rdf_attribute(el, "datatype")) {
      const Iri type = resolve_reference(dt->value, base_);
      if (type == vocab::kXsdDecimal) {
        lit.type = LiteralType::kDecimal;
      } else if (type != vocab::kXsdString) {
        warn(el, "UnsupportedDatatype", "datatype " + type.str() + " treated as string");
      }
    }
    return Value(std::move(lit));
  }

  // Repeated descriptions of one node within a document are combined.
  void add_class(const Element& el, ClassDef c) {
    auto [it, inserted] = doc_.classes.emplace(c.id, c);
    if (inserted || it->second == c) return;
    warn(el, "DuplicateDescription", "class " + c.id.str() + " described more than once; descriptions combined");
    ClassDef& into = it->second;
    into.super_classes.insert(c.super_classes.begin(), c.super_classes.end());
    for (auto& r : c.restrictions) {
      if (std::find(into.restrictions.begin(), into.restrictions.end(), r) == into.restrictions.end())
        into.restrictions.push_back(r);
    }
    if (!into.one_of) into.one_of = std::move(c.one_of);
    for (auto& a : c.assertions) {
      if (std::find(into.assertions.begin(), into.assertions.end(), a) == into.assertions.end())
        into.assertions.push_back(a);
    }
  }

  void add_property(const Element& el, PropertyDef p) {
    auto [it, inserted] = doc_.properties.emplace(p.id, p);
    if (inserted || it->second == p) return;
    warn(el, "DuplicateDescription", "property " + p.id.str() + " described more than once; descriptions combined");
    PropertyDef& into = it->second;
    into.super_properties.insert(p.super_properties.begin(), p.super_properties.end());
    if (!into.domain) into.domain = p.domain;
    if (!into.range) into.range = p.range;
    into.unique = into.unique || p.unique;
  }

  void add_instance(const Element& el, InstanceDef i) {
    auto [it, inserted] = doc_.instances.emplace(i.id, i);
    if (inserted || it->second == i) return;
    warn(el, "DuplicateDescription", "instance " + i.id.str() + " described more than once; descriptions combined");
    InstanceDef& into = it->second;
    if (into.class_id != i.class_id) {
      warn(el, "MultipleTypes", "instance " + i.id.str() + " typed more than once; first type kept");
    }
    for (auto& a : i.assertions) {
      if (std::find(into.assertions.begin(), into.assertions.end(), a) == into.assertions.end())
        into.assertions.push_back(a);
    }
  }

  std::string base_;
  OntologyDocument& doc_;
};

}  // namespace

OntologyDocument parse_document(std::string_view bytes, std::string_view base, std::string source_id) {
  const Element root = xml::parse(bytes, vocab::kBuiltinEntities);
  check_parse_types(root);

  OntologyDocument doc;
  doc.source_id = std::move(source_id);
  doc.base = strip_fragment(base);
  if (const auto* xb = root.attribute(vocab::kXmlNs, "base")) doc.base = strip_fragment(xb->value);
  DocumentParser parser(doc.base, doc);
  parser.parse_root(root);
  return doc;
}

}  // namespace semreg::onto
