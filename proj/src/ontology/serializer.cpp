#include <cctype>
#include <map>
#include <sstream>

#include "common/error.hpp"
#include "ontology/parser.hpp"
#include "ontology/vocabulary.hpp"
#include "ontology/xml_dom.hpp"

namespace semreg::onto {
namespace {

bool is_ncname(std::string_view s) {
  if (s.empty()) return false;
  auto start_ok = [](unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; };
  auto rest_ok = [&](unsigned char c) { return start_ok(c) || std::isdigit(c) || c == '-' || c == '.'; };
  if (!start_ok(static_cast<unsigned char>(s.front()))) return false;
  for (unsigned char c : s.substr(1)) {
    if (!rest_ok(c)) return false;
  }
  return true;
}

class Writer {
 public:
  Writer(const std::map<Iri, ClassDef>& classes, const std::map<Iri, PropertyDef>& properties,
         const std::map<Iri, InstanceDef>& instances)
      : classes_(classes), properties_(properties), instances_(instances) {
    prefixes_[std::string(vocab::kRdfNs)] = "rdf";
    prefixes_[std::string(vocab::kRdfsNs)] = "rdfs";
    prefixes_[std::string(vocab::kDamlNs)] = "daml";
    for (const auto& [_, c] : classes_) {
      for (const auto& a : c.assertions) register_namespace(a.property);
    }
    for (const auto& [_, i] : instances_) {
      if (qname_possible(i.class_id)) register_namespace(i.class_id);
      for (const auto& a : i.assertions) register_namespace(a.property);
    }
    int n = 0;
    for (auto& [ns, prefix] : prefixes_) {
      if (prefix.empty()) prefix = "ns" + std::to_string(++n);
    }
  }

  std::string write() {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<rdf:RDF";
    for (const auto& [ns, prefix] : prefixes_) out_ << "\n    xmlns:" << prefix << "=\"" << xml::escape(ns) << '"';
    out_ << ">\n";
    for (const auto& [_, c] : classes_) write_class(c);
    for (const auto& [_, p] : properties_) write_property(p);
    for (const auto& [_, i] : instances_) write_instance(i);
    out_ << "</rdf:RDF>\n";
    return out_.str();
  }

 private:
  static bool qname_possible(const Iri& iri) {
    const auto ns = iri.namespace_part();
    if (ns == vocab::kRdfNs || ns == vocab::kRdfsNs || ns == vocab::kDamlNs) return false;
    return !ns.empty() && is_ncname(iri.local_name());
  }

  void register_namespace(const Iri& iri) {
    if (!qname_possible(iri)) {
      throw Error(ErrorCode::kInvalidArgument, "cannot write " + iri.str() + " as an element name",
                  {{"entity", iri.str()}});
    }
    prefixes_.try_emplace(std::string(iri.namespace_part()));
  }

  std::string qname(const Iri& iri) const {
    return prefixes_.at(std::string(iri.namespace_part())) + ":" + std::string(iri.local_name());
  }

  static std::string attr(const Iri& iri) { return '"' + xml::escape(iri.str()) + '"'; }

  void write_assertion(const PropertyAssertion& a) {
    const std::string name = qname(a.property);
    if (const auto* iri = std::get_if<Iri>(&a.value)) {
      out_ << "    <" << name << " rdf:resource=" << attr(*iri) << "/>\n";
      return;
    }
    const auto& lit = std::get<Literal>(a.value);
    out_ << "    <" << name;
    if (lit.type == LiteralType::kDecimal) out_ << " rdf:datatype=" << attr(vocab::kXsdDecimal);
    out_ << '>' << xml::escape(lit.lexical) << "</" << name << ">\n";
  }

  void write_class(const ClassDef& c) {
    out_ << "  <daml:Class rdf:about=" << attr(c.id) << ">\n";
    for (const auto& s : c.super_classes) out_ << "    <rdfs:subClassOf rdf:resource=" << attr(s) << "/>\n";
    for (const auto& r : c.restrictions) {
      out_ << "    <rdfs:subClassOf>\n      <daml:Restriction>\n"
           << "        <daml:onProperty rdf:resource=" << attr(r.on_property) << "/>\n"
           << "        <daml:toClass rdf:resource=" << attr(r.to_class) << "/>\n"
           << "      </daml:Restriction>\n    </rdfs:subClassOf>\n";
    }
    if (c.one_of) {
      out_ << "    <daml:oneOf rdf:parseType=\"daml:collection\">\n";
      for (const auto& m : *c.one_of) out_ << "      <rdf:Description rdf:about=" << attr(m) << "/>\n";
      out_ << "    </daml:oneOf>\n";
    }
    for (const auto& a : c.assertions) write_assertion(a);
    out_ << "  </daml:Class>\n";
  }

  void write_property(const PropertyDef& p) {
    const char* tag = p.unique ? "daml:UniqueProperty" : "rdf:Property";
    out_ << "  <" << tag << " rdf:about=" << attr(p.id) << ">\n";
    for (const auto& s : p.super_properties) out_ << "    <rdfs:subPropertyOf rdf:resource=" << attr(s) << "/>\n";
    if (p.domain) out_ << "    <rdfs:domain rdf:resource=" << attr(*p.domain) << "/>\n";
    if (p.range) out_ << "    <rdfs:range rdf:resource=" << attr(*p.range) << "/>\n";
    out_ << "  </" << tag << ">\n";
  }

  void write_instance(const InstanceDef& i) {
    if (qname_possible(i.class_id)) {
      const std::string tag = qname(i.class_id);
      out_ << "  <" << tag << " rdf:about=" << attr(i.id) << ">\n";
      for (const auto& a : i.assertions) write_assertion(a);
      out_ << "  </" << tag << ">\n";
    } else {
      out_ << "  <rdf:Description rdf:about=" << attr(i.id) << ">\n"
           << "    <rdf:type rdf:resource=" << attr(i.class_id) << "/>\n";
      for (const auto& a : i.assertions) write_assertion(a);
      out_ << "  </rdf:Description>\n";
    }
  }

  const std::map<Iri, ClassDef>& classes_;
  const std::map<Iri, PropertyDef>& properties_;
  const std::map<Iri, InstanceDef>& instances_;
  std::map<std::string, std::string> prefixes_;
  std::ostringstream out_;
};

}  // namespace

std::string serialize(const OntologyGraph& graph) {
  return Writer(graph.classes(), graph.properties(), graph.instances()).write();
}

std::string serialize(const OntologyDocument& document) {
  return Writer(document.classes, document.properties, document.instances).write();
}

}  // namespace semreg::onto
