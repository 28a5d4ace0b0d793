#include "ontology/validate.hpp"

#include <algorithm>
#include <tuple>

#include "common/decimal.hpp"
#include "ontology/vocabulary.hpp"

namespace semreg::onto {
namespace {

bool descends_from(const OntologyGraph& graph, const Iri& cls, const Iri& ancestor) {
  std::vector<Iri> stack{cls};
  std::set<Iri> seen;
  while (!stack.empty()) {
    Iri current = std::move(stack.back());
    stack.pop_back();
    if (current == ancestor) return true;
    if (!seen.insert(current).second) continue;
    if (const auto* c = graph.find_class(current)) {
      stack.insert(stack.end(), c->super_classes.begin(), c->super_classes.end());
    }
  }
  return false;
}

void add_assertion_refs(std::vector<Reference>& out, const Iri& from, const std::vector<PropertyAssertion>& as) {
  for (const auto& a : as) {
    out.push_back({from, a.property, "assertion.property"});
    if (const auto* iri = std::get_if<Iri>(&a.value)) out.push_back({from, *iri, "assertion.value"});
  }
}

void check_assertions(const OntologyGraph& graph, const Iri& entity, const std::vector<PropertyAssertion>& as,
                      ValidationReport& report) {
  std::map<Iri, int> counts;
  for (const auto& a : as) {
    const PropertyDef* p = graph.find_property(a.property);
    if (p == nullptr) continue;
    if (p->unique) ++counts[a.property];
    const auto* lit = std::get_if<Literal>(&a.value);
    if (lit != nullptr && p->range == vocab::kXsdDecimal && !Decimal::parse(lit->lexical)) {
      report.errors.push_back({Severity::kError, "LiteralTypeMismatch", entity,
                               a.property.str() + " expects a decimal literal, got \"" + lit->lexical + "\"",
                               {a.property}});
    }
  }
  for (const auto& [property, n] : counts) {
    if (n > 1) {
      report.errors.push_back({Severity::kError, "UniquePropertyViolation", entity,
                               "unique property " + property.str() + " asserted " + std::to_string(n) + " times",
                               {property}});
    }
  }
}

}  // namespace

bool resolves(const OntologyGraph& graph, const Iri& iri) {
  return vocab::is_external(iri) || graph.find_class(iri) != nullptr || graph.find_property(iri) != nullptr ||
         graph.find_instance(iri) != nullptr;
}

std::vector<Reference> collect_references(const OntologyGraph& graph) {
  std::vector<Reference> out;
  for (const auto& [id, c] : graph.classes()) {
    for (const auto& s : c.super_classes) out.push_back({id, s, "superclass"});
    for (const auto& r : c.restrictions) {
      out.push_back({id, r.on_property, "restriction.onProperty"});
      out.push_back({id, r.to_class, "restriction.toClass"});
    }
    if (c.one_of) {
      for (const auto& m : *c.one_of) out.push_back({id, m, "enumeration.member"});
    }
    add_assertion_refs(out, id, c.assertions);
  }
  for (const auto& [id, p] : graph.properties()) {
    if (p.domain) out.push_back({id, *p.domain, "property.domain"});
    if (p.range) out.push_back({id, *p.range, "property.range"});
    for (const auto& s : p.super_properties) out.push_back({id, s, "property.subPropertyOf"});
  }
  for (const auto& [id, i] : graph.instances()) {
    out.push_back({id, i.class_id, "instance.class"});
    add_assertion_refs(out, id, i.assertions);
  }
  return out;
}

ValidationReport validate(const OntologyGraph& graph) {
  ValidationReport report;

  if (auto cycle = find_class_cycle(graph); !cycle.empty()) {
    std::string names;
    for (const auto& m : cycle) names += (names.empty() ? "" : ", ") + m.str();
    report.errors.push_back({Severity::kError, "CyclicHierarchy", cycle.front(), "subclass cycle {" + names + "}", cycle});
  }
  if (auto cycle = find_property_cycle(graph); !cycle.empty()) {
    std::string names;
    for (const auto& m : cycle) names += (names.empty() ? "" : ", ") + m.str();
    report.errors.push_back(
        {Severity::kError, "CyclicHierarchy", cycle.front(), "subproperty cycle {" + names + "}", cycle});
  }

  for (const auto& ref : collect_references(graph)) {
    bool ok = resolves(graph, ref.to);
    if (ref.role == "instance.class") ok = vocab::is_external(ref.to) || graph.find_class(ref.to) != nullptr;
    if (!ok) {
      report.errors.push_back({Severity::kError, "UnresolvedReference", ref.from,
                               ref.role + " " + ref.to.str() + " does not resolve", {ref.to}});
    }
  }

  for (const auto& [id, c] : graph.classes()) {
    if (c.one_of && c.one_of->empty()) {
      report.errors.push_back({Severity::kError, "EmptyEnumeration", id, "daml:oneOf has no members", {}});
    }
    check_assertions(graph, id, c.assertions, report);
  }

  for (const auto& [id, i] : graph.instances()) {
    check_assertions(graph, id, i.assertions, report);
    const bool is_service = descends_from(graph, i.class_id, vocab::kPoecService);
    const bool typed = std::any_of(i.assertions.begin(), i.assertions.end(),
                                   [](const PropertyAssertion& a) { return a.property == vocab::kServiceType; });
    if (is_service && !typed) {
      report.warnings.push_back({Severity::kWarning, "ServiceTypeDefaulted", id,
                                 "no serviceType asserted; treated as Implementation", {vocab::kImplementation}});
    }
  }

  auto order = [](const Finding& a, const Finding& b) {
    return std::tie(a.entity, a.code, a.message) < std::tie(b.entity, b.code, b.message);
  };
  std::sort(report.errors.begin(), report.errors.end(), order);
  std::sort(report.warnings.begin(), report.warnings.end(), order);
  return report;
}

}  // namespace semreg::onto
