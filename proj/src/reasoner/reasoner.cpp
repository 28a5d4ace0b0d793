#include "reasoner/reasoner.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "common/error.hpp"
#include "ontology/vocabulary.hpp"

namespace semreg::reason {
namespace {

const onto::ClassDef& require_class(const OntologyGraph& graph, const Iri& cls) {
  const auto* c = graph.find_class(cls);
  if (c == nullptr) throw Error(ErrorCode::kUnknownClass, "unknown class " + cls.str(), {{"class", cls.str()}});
  return *c;
}

// Breadth-first layering: every node appears once, at its shortest distance;
// nodes within a layer are sorted.
template <typename Next>
std::vector<Iri> layered_closure(const Iri& root, Next next) {
  std::vector<Iri> out;
  std::set<Iri> seen{root};
  std::vector<Iri> layer{root};
  while (!layer.empty()) {
    std::set<Iri> following;
    for (const Iri& node : layer) {
      for (const Iri& n : next(node)) {
        if (!seen.contains(n)) following.insert(n);
      }
    }
    layer.assign(following.begin(), following.end());
    for (const Iri& n : layer) {
      seen.insert(n);
      out.push_back(n);
    }
  }
  return out;
}

}  // namespace

bool ClosureResult::contains(const Iri& id) const {
  return std::find(members.begin(), members.end(), id) != members.end() ||
         std::find(externals.begin(), externals.end(), id) != externals.end();
}

bool InheritedValueSet::contains(const Iri& value, const Iri& declared_on) const {
  return std::any_of(values.begin(), values.end(), [&](const InheritedValue& v) {
    const auto* iri = std::get_if<Iri>(&v.value);
    return iri != nullptr && *iri == value && v.declared_on == declared_on;
  });
}

ClosureResult subclasses_of(const OntologyGraph& graph, const Iri& cls) {
  require_class(graph, cls);
  ClosureResult result{cls, {}, {}};
  result.members = layered_closure(cls, [&](const Iri& n) { return graph.direct_subclasses(n); });
  return result;
}

ClosureResult superclasses_of(const OntologyGraph& graph, const Iri& cls) {
  require_class(graph, cls);
  ClosureResult result{cls, {}, {}};
  const auto all = layered_closure(cls, [&](const Iri& n) -> std::vector<Iri> {
    const auto* c = graph.find_class(n);
    if (c == nullptr) return {};
    return {c->super_classes.begin(), c->super_classes.end()};
  });
  for (const Iri& id : all) {
    (graph.find_class(id) != nullptr ? result.members : result.externals).push_back(id);
  }
  return result;
}

std::vector<Iri> property_and_subproperties(const OntologyGraph& graph, const Iri& property) {
  std::vector<Iri> out{property};
  const auto subs = layered_closure(property, [&](const Iri& n) { return graph.direct_subproperties(n); });
  out.insert(out.end(), subs.begin(), subs.end());
  return out;
}

Iri service_type_of(const InstanceDef& instance) {
  for (const auto& a : instance.assertions) {
    if (a.property != vocab::kServiceType) continue;
    if (const auto* iri = std::get_if<Iri>(&a.value)) return *iri;
    return Iri(std::get<onto::Literal>(a.value).lexical);
  }
  return vocab::kImplementation;
}

std::vector<InstanceDef> implementations_of(const OntologyGraph& graph, const Iri& generic) {
  require_class(graph, generic);
  std::vector<Iri> classes{generic};
  const auto subs = subclasses_of(graph, generic).members;
  classes.insert(classes.end(), subs.begin(), subs.end());

  std::vector<InstanceDef> out;
  for (const Iri& cls : classes) {
    for (const Iri& id : graph.direct_instances(cls)) {
      const InstanceDef& inst = *graph.find_instance(id);
      if (service_type_of(inst) == vocab::kImplementation) out.push_back(inst);
    }
  }
  std::sort(out.begin(), out.end(), [](const InstanceDef& a, const InstanceDef& b) { return a.id < b.id; });
  return out;
}

InheritedValueSet inherited_values(const OntologyGraph& graph, const Iri& anchor, const Iri& property) {
  require_class(graph, anchor);
  if (graph.find_property(property) == nullptr && !vocab::is_external(property)) {
    throw Error(ErrorCode::kUnknownProperty, "unknown property " + property.str(), {{"property", property.str()}});
  }
  const auto props = property_and_subproperties(graph, property);
  const std::set<Iri> wanted(props.begin(), props.end());

  std::vector<Iri> chain{anchor};
  const auto supers = superclasses_of(graph, anchor).members;
  chain.insert(chain.end(), supers.begin(), supers.end());

  InheritedValueSet result{anchor, property, {}};
  for (const Iri& cls : chain) {
    std::set<onto::Value> values;
    for (const auto& a : graph.find_class(cls)->assertions) {
      if (wanted.contains(a.property)) values.insert(a.value);
    }
    for (const auto& v : values) result.values.push_back(InheritedValue{v, cls});
  }
  return result;
}

std::vector<InheritedValue> add_ons_of(const OntologyGraph& graph, const Iri& anchor) {
  require_class(graph, anchor);
  std::vector<Iri> chain{anchor};
  const auto supers = superclasses_of(graph, anchor).members;
  chain.insert(chain.end(), supers.begin(), supers.end());

  const auto forward = property_and_subproperties(graph, vocab::kAddedValue);
  const auto inverse = property_and_subproperties(graph, vocab::kAddOnTo);
  const std::set<Iri> forward_set(forward.begin(), forward.end());
  const std::set<Iri> inverse_set(inverse.begin(), inverse.end());

  std::vector<InheritedValue> out;
  std::set<Iri> seen;
  for (const Iri& cls : chain) {
    std::set<Iri> found;
    for (const auto& a : graph.find_class(cls)->assertions) {
      const auto* iri = std::get_if<Iri>(&a.value);
      if (iri != nullptr && forward_set.contains(a.property)) found.insert(*iri);
    }
    for (const auto& [id, c] : graph.classes()) {
      for (const auto& a : c.assertions) {
        const auto* iri = std::get_if<Iri>(&a.value);
        if (iri != nullptr && *iri == cls && inverse_set.contains(a.property)) found.insert(id);
      }
    }
    for (const Iri& v : found) {
      if (seen.insert(v).second) out.push_back(InheritedValue{v, cls});
    }
  }
  return out;
}

}  // namespace semreg::reason
