#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "common/iri.hpp"

namespace semreg::onto {

enum class LiteralType { kString, kDecimal };

struct Literal {
  std::string lexical;
  LiteralType type = LiteralType::kString;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Value = std::variant<Iri, Literal>;

struct PropertyAssertion {
  Iri property;
  Value value;

  friend auto operator<=>(const PropertyAssertion&, const PropertyAssertion&) = default;
};

struct Restriction {
  Iri on_property;
  Iri to_class;

  friend auto operator<=>(const Restriction&, const Restriction&) = default;
};

struct ClassDef {
  Iri id;
  std::set<Iri> super_classes;
  std::vector<Restriction> restrictions;
  std::optional<std::vector<Iri>> one_of;
  // Class-level assertions (Added_Value edges, tModelKey, unspscCode, ...).
  std::vector<PropertyAssertion> assertions;

  friend bool operator==(const ClassDef&, const ClassDef&) = default;
};

struct PropertyDef {
  Iri id;
  std::optional<Iri> domain;
  std::optional<Iri> range;
  std::set<Iri> super_properties;
  bool unique = false;

  friend bool operator==(const PropertyDef&, const PropertyDef&) = default;
};

struct InstanceDef {
  Iri id;
  Iri class_id;
  std::vector<PropertyAssertion> assertions;

  friend bool operator==(const InstanceDef&, const InstanceDef&) = default;
};

struct ParseWarning {
  std::string code;
  std::string message;
  int line = 0;
  int column = 0;
};

// Entities parsed from one document, before merging.
struct OntologyDocument {
  std::string source_id;
  std::string base;
  std::map<Iri, ClassDef> classes;
  std::map<Iri, PropertyDef> properties;
  std::map<Iri, InstanceDef> instances;
  std::vector<ParseWarning> warnings;

  // Entity-wise equality (source id, base and warnings are not compared).
  bool same_entities(const OntologyDocument& other) const {
    return classes == other.classes && properties == other.properties && instances == other.instances;
  }
};

class GraphBuilder;

// Immutable merged ontology plus the reverse indexes the reasoner needs.
class OntologyGraph {
 public:
  OntologyGraph() = default;

  const std::map<Iri, ClassDef>& classes() const noexcept { return classes_; }
  const std::map<Iri, PropertyDef>& properties() const noexcept { return properties_; }
  const std::map<Iri, InstanceDef>& instances() const noexcept { return instances_; }
  const std::map<Iri, std::set<std::string>>& provenance() const noexcept { return provenance_; }

  const ClassDef* find_class(const Iri& id) const;
  const PropertyDef* find_property(const Iri& id) const;
  const InstanceDef* find_instance(const Iri& id) const;

  // Direct subclasses / subproperties, sorted.
  std::span<const Iri> direct_subclasses(const Iri& id) const;
  std::span<const Iri> direct_subproperties(const Iri& id) const;
  // Instances whose class_id is exactly `id`, sorted.
  std::span<const Iri> direct_instances(const Iri& id) const;

  // Entity-wise comparison; provenance is ignored.
  bool same_entities(const OntologyGraph& other) const {
    return classes_ == other.classes_ && properties_ == other.properties_ && instances_ == other.instances_;
  }

 private:
  friend class GraphBuilder;
  void rebuild_indexes();

  std::map<Iri, ClassDef> classes_;
  std::map<Iri, PropertyDef> properties_;
  std::map<Iri, InstanceDef> instances_;
  std::map<Iri, std::set<std::string>> provenance_;

  std::map<Iri, std::vector<Iri>> subclasses_;
  std::map<Iri, std::vector<Iri>> subproperties_;
  std::map<Iri, std::vector<Iri>> instances_by_class_;
};

// Assembles a graph without merge-time checks. Intended for tests and for
// tooling that wants validate() to report problems rather than throw.
class GraphBuilder {
 public:
  GraphBuilder& add_class(ClassDef c, std::string source = {});
  GraphBuilder& add_property(PropertyDef p, std::string source = {});
  GraphBuilder& add_instance(InstanceDef i, std::string source = {});
  GraphBuilder& set_provenance(std::map<Iri, std::set<std::string>> provenance);
  OntologyGraph build_unchecked() &&;

 private:
  OntologyGraph graph_;
};

// Union of documents. Identical duplicate definitions are idempotent;
// differing ones throw ConflictingDefinition. Cycles in the class or
// property hierarchy throw CyclicHierarchy naming the cycle.
OntologyGraph merge(std::span<const OntologyDocument> documents);

// The cycle (as an ordered list starting at the lexicographically smallest
// member) if the subclass relation has one, otherwise empty.
std::vector<Iri> find_class_cycle(const OntologyGraph& graph);
std::vector<Iri> find_property_cycle(const OntologyGraph& graph);

// Literal/IRI rendering used in messages and evidence.
std::string value_text(const Value& v);

}  // namespace semreg::onto
