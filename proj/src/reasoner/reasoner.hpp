#pragma once

#include <vector>

#include "ontology/model.hpp"

namespace semreg::reason {

using onto::InstanceDef;
using onto::OntologyGraph;

// Transitive closure of the subclass relation from `root`.
//
// `members` holds graph classes, `externals` the declared-external
// identifiers reached (daml Thing, rdfs Resource, the DAML-S Service class).
// Both are ordered breadth-first by shortest distance from root, then
// lexicographically. The root itself is excluded.
struct ClosureResult {
  Iri root;
  std::vector<Iri> members;
  std::vector<Iri> externals;

  bool contains(const Iri& id) const;
};

ClosureResult subclasses_of(const OntologyGraph& graph, const Iri& cls);
ClosureResult superclasses_of(const OntologyGraph& graph, const Iri& cls);

// `property` together with every property that transitively declares it as a
// super property. Ordered breadth-first then lexicographically.
std::vector<Iri> property_and_subproperties(const OntologyGraph& graph, const Iri& property);

// Effective serviceType of an instance; instances without an assertion count
// as Implementation.
Iri service_type_of(const InstanceDef& instance);

// Instances of `generic` or any subclass whose service type is
// Implementation, ordered by id.
std::vector<InstanceDef> implementations_of(const OntologyGraph& graph, const Iri& generic);

struct InheritedValue {
  onto::Value value;
  Iri declared_on;

  friend auto operator<=>(const InheritedValue&, const InheritedValue&) = default;
};

struct InheritedValueSet {
  Iri anchor;
  Iri property;
  // Ordered by declaring class (anchor first, then superclass closure
  // order), then by value.
  std::vector<InheritedValue> values;

  bool contains(const Iri& value, const Iri& declared_on) const;
};

// Class-level assertions of `property` (or a subproperty) on `anchor` and on
// every superclass.
InheritedValueSet inherited_values(const OntologyGraph& graph, const Iri& anchor, const Iri& property);

// Add-ons of a class: inherited Added_Value values plus classes that declare
// AddOn_To toward the anchor or one of its superclasses (the inverse edge).
// Each entry's declared_on is the class in the anchor's chain the edge
// attaches to. Only IRI values are returned; duplicates are removed.
std::vector<InheritedValue> add_ons_of(const OntologyGraph& graph, const Iri& anchor);

}  // namespace semreg::reason
