#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catalog/catalog.hpp"
#include "discovery/semantic_registry.hpp"
#include "ontology/model.hpp"
#include "registry/registry.hpp"

// Brute-force reference implementations. They share no code with the
// library beyond the data types.
namespace semreg::oracle {

// Nodes reachable from root along edges (from -> to), root excluded, ordered
// by shortest distance then lexicographically. Computed by fixpoint
// iteration over the edge list.
std::vector<Iri> reachable(const std::vector<std::pair<Iri, Iri>>& edges, const Iri& root);

std::vector<std::pair<Iri, Iri>> subclass_edges(const onto::OntologyGraph& g);
std::vector<std::pair<Iri, Iri>> superclass_edges(const onto::OntologyGraph& g);

std::vector<Iri> subclasses(const onto::OntologyGraph& g, const Iri& root);
// Internal and external ancestors in one ordered list.
std::vector<Iri> superclasses(const onto::OntologyGraph& g, const Iri& root);

std::set<Iri> sub_properties(const onto::OntologyGraph& g, const Iri& property);

std::vector<Iri> implementations(const onto::OntologyGraph& g, const Iri& generic);

// (value text, declared_on) pairs.
std::set<std::pair<std::string, Iri>> inherited(const onto::OntologyGraph& g, const Iri& anchor, const Iri& property);

// First-reached (value, declared_on) for every add-on.
std::set<std::pair<Iri, Iri>> add_ons(const onto::OntologyGraph& g, const Iri& anchor);

// Exact per-item evaluation; decimals are compared as scaled integers.
bool matches(const catalog::CatalogItem& item, const catalog::Predicate& p);
std::vector<std::string> query(const catalog::Catalog& c, const std::vector<catalog::Predicate>& preds);

std::vector<std::string> find_services(const registry::Registry& r, const std::vector<registry::KeyedReference>& f,
                                       bool all);

// Services whose bags carry the key of `generic`, of a subclass, or of an
// implementation instance of either.
std::set<std::string> functionality(const discovery::State& s, const std::string& domain, const Iri& generic);

}  // namespace semreg::oracle
