#include "ontology/model.hpp"

#include <algorithm>
#include <functional>

#include "common/decimal.hpp"
#include "common/error.hpp"
#include "ontology/vocabulary.hpp"

namespace semreg::onto {
namespace {

const std::vector<Iri> kEmpty;

std::span<const Iri> lookup(const std::map<Iri, std::vector<Iri>>& index, const Iri& id) {
  auto it = index.find(id);
  return it == index.end() ? std::span<const Iri>(kEmpty) : std::span<const Iri>(it->second);
}

// Finds a cycle in the directed graph given by `edges(node)`, restricted to
// nodes that are keys of `nodes`. Deterministic: nodes are visited in order.
template <typename Map, typename EdgeFn>
std::vector<Iri> find_cycle(const Map& nodes, EdgeFn edges) {
  enum class Mark { kNone, kActive, kDone };
  std::map<Iri, Mark> marks;
  std::vector<Iri> path;
  std::vector<Iri> cycle;

  std::function<bool(const Iri&)> visit = [&](const Iri& node) {
    marks[node] = Mark::kActive;
    path.push_back(node);
    for (const Iri& next : edges(nodes.at(node))) {
      if (!nodes.contains(next)) continue;
      const Mark m = marks.contains(next) ? marks[next] : Mark::kNone;
      if (m == Mark::kActive) {
        auto start = std::find(path.begin(), path.end(), next);
        cycle.assign(start, path.end());
        return true;
      }
      if (m == Mark::kNone && visit(next)) return true;
    }
    path.pop_back();
    marks[node] = Mark::kDone;
    return false;
  };

  for (const auto& [id, _] : nodes) {
    if (marks.contains(id)) continue;
    if (visit(id)) break;
  }
  if (!cycle.empty()) {
    auto smallest = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), smallest, cycle.end());
  }
  return cycle;
}

std::string join(const std::vector<Iri>& ids, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i != 0) out += sep;
    out += ids[i].str();
  }
  return out;
}

template <typename Def>
void merge_entity(std::map<Iri, Def>& into, std::map<Iri, std::set<std::string>>& provenance, const Def& def,
                  const std::string& source, std::string_view kind) {
  auto [it, inserted] = into.emplace(def.id, def);
  if (!inserted && !(it->second == def)) {
    std::vector<ErrorDetail> details{{"entity", def.id.str()}, {"kind", std::string(kind)}};
    for (const auto& s : provenance[def.id]) details.push_back({"defined_in", s});
    details.push_back({"defined_in", source});
    throw Error(ErrorCode::kConflictingDefinition,
                std::string(kind) + " " + def.id.str() + " has conflicting definitions", std::move(details));
  }
  provenance[def.id].insert(source);
}

}  // namespace

const ClassDef* OntologyGraph::find_class(const Iri& id) const {
  auto it = classes_.find(id);
  return it == classes_.end() ? nullptr : &it->second;
}

const PropertyDef* OntologyGraph::find_property(const Iri& id) const {
  auto it = properties_.find(id);
  return it == properties_.end() ? nullptr : &it->second;
}

const InstanceDef* OntologyGraph::find_instance(const Iri& id) const {
  auto it = instances_.find(id);
  return it == instances_.end() ? nullptr : &it->second;
}

std::span<const Iri> OntologyGraph::direct_subclasses(const Iri& id) const { return lookup(subclasses_, id); }
std::span<const Iri> OntologyGraph::direct_subproperties(const Iri& id) const { return lookup(subproperties_, id); }
std::span<const Iri> OntologyGraph::direct_instances(const Iri& id) const { return lookup(instances_by_class_, id); }

void OntologyGraph::rebuild_indexes() {
  subclasses_.clear();
  subproperties_.clear();
  instances_by_class_.clear();
  // Maps iterate in key order, so every index vector comes out sorted.
  for (const auto& [id, c] : classes_) {
    for (const Iri& super : c.super_classes) subclasses_[super].push_back(id);
  }
  for (const auto& [id, p] : properties_) {
    for (const Iri& super : p.super_properties) subproperties_[super].push_back(id);
  }
  for (const auto& [id, i] : instances_) instances_by_class_[i.class_id].push_back(id);
}

GraphBuilder& GraphBuilder::add_class(ClassDef c, std::string source) {
  graph_.provenance_[c.id].insert(std::move(source));
  Iri id = c.id;
  graph_.classes_.insert_or_assign(std::move(id), std::move(c));
  return *this;
}

GraphBuilder& GraphBuilder::add_property(PropertyDef p, std::string source) {
  graph_.provenance_[p.id].insert(std::move(source));
  Iri id = p.id;
  graph_.properties_.insert_or_assign(std::move(id), std::move(p));
  return *this;
}

GraphBuilder& GraphBuilder::add_instance(InstanceDef i, std::string source) {
  graph_.provenance_[i.id].insert(std::move(source));
  Iri id = i.id;
  graph_.instances_.insert_or_assign(std::move(id), std::move(i));
  return *this;
}

GraphBuilder& GraphBuilder::set_provenance(std::map<Iri, std::set<std::string>> provenance) {
  graph_.provenance_ = std::move(provenance);
  return *this;
}

OntologyGraph GraphBuilder::build_unchecked() && {
  graph_.rebuild_indexes();
  return std::move(graph_);
}

OntologyGraph merge(std::span<const OntologyDocument> documents) {
  OntologyGraph graph;
  GraphBuilder builder;
  std::map<Iri, ClassDef> classes;
  std::map<Iri, PropertyDef> properties;
  std::map<Iri, InstanceDef> instances;
  std::map<Iri, std::set<std::string>> provenance;

  for (const auto& doc : documents) {
    for (const auto& [_, c] : doc.classes) merge_entity(classes, provenance, c, doc.source_id, "class");
    for (const auto& [_, p] : doc.properties) merge_entity(properties, provenance, p, doc.source_id, "property");
    for (const auto& [_, i] : doc.instances) merge_entity(instances, provenance, i, doc.source_id, "instance");
  }

  // Plain literals of decimal-ranged properties become decimal-typed.
  auto retype = [&](std::vector<PropertyAssertion>& assertions) {
    for (auto& a : assertions) {
      auto* lit = std::get_if<Literal>(&a.value);
      if (lit == nullptr || lit->type == LiteralType::kDecimal) continue;
      auto p = properties.find(a.property);
      if (p != properties.end() && p->second.range == vocab::kXsdDecimal && Decimal::parse(lit->lexical)) {
        lit->type = LiteralType::kDecimal;
      }
    }
  };
  for (auto& [_, c] : classes) retype(c.assertions);
  for (auto& [_, i] : instances) retype(i.assertions);

  for (auto& [_, c] : classes) builder.add_class(std::move(c));
  for (auto& [_, p] : properties) builder.add_property(std::move(p));
  for (auto& [_, i] : instances) builder.add_instance(std::move(i));
  builder.set_provenance(std::move(provenance));
  graph = std::move(builder).build_unchecked();

  if (auto cycle = find_class_cycle(graph); !cycle.empty()) {
    std::vector<ErrorDetail> details;
    for (const auto& id : cycle) details.push_back({"member", id.str()});
    throw Error(ErrorCode::kCyclicHierarchy, "subclass cycle: " + join(cycle, " -> "), std::move(details));
  }
  if (auto cycle = find_property_cycle(graph); !cycle.empty()) {
    std::vector<ErrorDetail> details;
    for (const auto& id : cycle) details.push_back({"member", id.str()});
    throw Error(ErrorCode::kCyclicHierarchy, "subproperty cycle: " + join(cycle, " -> "), std::move(details));
  }
  return graph;
}

std::vector<Iri> find_class_cycle(const OntologyGraph& graph) {
  return find_cycle(graph.classes(), [](const ClassDef& c) -> const std::set<Iri>& { return c.super_classes; });
}

std::vector<Iri> find_property_cycle(const OntologyGraph& graph) {
  return find_cycle(graph.properties(),
                    [](const PropertyDef& p) -> const std::set<Iri>& { return p.super_properties; });
}

std::string value_text(const Value& v) {
  if (const auto* iri = std::get_if<Iri>(&v)) return iri->str();
  return std::get<Literal>(v).lexical;
}

}  // namespace semreg::onto
