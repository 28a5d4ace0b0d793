#pragma once

#include <string>
#include <string_view>

#include "ontology/model.hpp"

namespace semreg::onto {

// Parses the RDF/XML serialization of the supported DAML+OIL subset:
// daml:Class (rdfs:subClassOf by resource or nested daml:Restriction,
// daml:oneOf with rdf:parseType="daml:collection"), rdf:Property and
// daml:UniqueProperty (rdfs:domain, rdfs:range, rdfs:subPropertyOf), typed
// instance elements and rdf:Description with rdf:type.
//
// `base` is used unless the root carries xml:base. Unknown elements and
// attributes are skipped and reported in OntologyDocument::warnings.
//
// Throws Error with kXmlMalformed, kUnresolvedEntity or
// kUnsupportedConstructFatal (rdf:parseType other than "daml:collection").
OntologyDocument parse_document(std::string_view bytes, std::string_view base, std::string source_id = {});

// Canonical RDF/XML for a set of entities. Every reference is written as an
// absolute IRI, so the output parses back without entity declarations.
std::string serialize(const OntologyGraph& graph);
std::string serialize(const OntologyDocument& document);

}  // namespace semreg::onto
