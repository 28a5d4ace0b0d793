#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "common/iri.hpp"

// Well-known identifiers. Namespace strings are given in their expanded
// element-namespace form (ending in '#'); entity expansions (which the
// documents append "#Name" to) are listed in kBuiltinEntities.
namespace semreg::vocab {

inline constexpr std::string_view kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kDamlNs = "http://www.daml.org/2001/03/daml+oil#";
inline constexpr std::string_view kXsdNs = "http://www.w3.org/2000/10/XMLSchema#";
inline constexpr std::string_view kDamlsPrefix = "http://www.daml.org/services/daml-s/";
inline constexpr std::string_view kProfileNs = "http://www.daml.org/services/daml-s/2001/05/Profile.daml#";
inline constexpr std::string_view kServiceNs = "http://www.daml.org/services/daml-s/2001/05/Service.daml#";
inline constexpr std::string_view kPoecBase = "http://poec.example.org/2002/poec.daml";
inline constexpr std::string_view kPoecNs = "http://poec.example.org/2002/poec.daml#";
inline constexpr std::string_view kXmlNs = "http://www.w3.org/XML/1998/namespace";

// Entities every document may use without declaring them. A document-local
// <!ENTITY> declaration of the same name takes precedence.
inline constexpr std::array<std::pair<std::string_view, std::string_view>, 9> kBuiltinEntities{{
    {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns"},
    {"rdfs", "http://www.w3.org/2000/01/rdf-schema"},
    {"daml", "http://www.daml.org/2001/03/daml+oil"},
    {"xsd", "http://www.w3.org/2000/10/XMLSchema"},
    {"service", "http://www.daml.org/services/daml-s/2001/05/Service.daml"},
    {"profile", "http://www.daml.org/services/daml-s/2001/05/Profile.daml"},
    {"process", "http://www.daml.org/services/daml-s/2001/05/Process.daml"},
    {"grounding", "http://www.daml.org/services/daml-s/2001/05/Grounding.daml"},
    {"poec", "http://poec.example.org/2002/poec.daml#"},
}};

inline Iri rdfs(std::string_view local) { return Iri(std::string(kRdfsNs) + std::string(local)); }
inline Iri daml(std::string_view local) { return Iri(std::string(kDamlNs) + std::string(local)); }
inline Iri xsd(std::string_view local) { return Iri(std::string(kXsdNs) + std::string(local)); }
inline Iri profile(std::string_view local) { return Iri(std::string(kProfileNs) + std::string(local)); }
inline Iri poec(std::string_view local) { return Iri(std::string(kPoecNs) + std::string(local)); }

// DAML-S profile vocabulary.
inline const Iri kServiceType = profile("serviceType");
inline const Iri kServiceParameter = profile("serviceParameter");
inline const Iri kInput = profile("input");
inline const Iri kOutput = profile("output");

// Upper-ontology vocabulary.
inline const Iri kPoecService = poec("PoecService");
inline const Iri kGeneric = poec("Generic");
inline const Iri kImplementation = poec("Implementation");
inline const Iri kAddedValue = poec("Added_Value");
inline const Iri kAddOnTo = poec("AddOn_To");
inline const Iri kTModelKey = poec("tModelKey");
inline const Iri kHasQueryCatalog = poec("has_Query_Catalog");
inline const Iri kInputCatalog = poec("inputCatalog");
inline const Iri kCatalogUri = poec("CatalogURI");
inline const Iri kCatalogSchema = poec("CatalogSchema");
inline const Iri kCatalogSchemaType = poec("CatalogSchemaType");
// Extension: UNSPSC code annotation on product classes.
inline const Iri kUnspscCode = poec("unspscCode");

inline const Iri kXsdDecimal = Iri("http://www.w3.org/2000/10/XMLSchema#decimal");
inline const Iri kXsdString = Iri("http://www.w3.org/2000/10/XMLSchema#string");

// Identifiers in these namespaces are declared external: they never need to
// resolve inside a graph.
inline bool is_external(const Iri& iri) {
  const std::string& s = iri.str();
  for (std::string_view prefix : {kRdfNs, kRdfsNs, kDamlsPrefix, std::string_view("http://www.w3.org/2000/10/XMLSchema"),
                                  std::string_view("http://www.daml.org/2001/03/daml+oil")}) {
    if (s.starts_with(prefix)) return true;
  }
  return false;
}

}  // namespace semreg::vocab
