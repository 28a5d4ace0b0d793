#include <algorithm>
#include <set>

#include "common/error.hpp"
#include "common/keys.hpp"
#include "discovery/semantic_registry.hpp"
#include "ontology/vocabulary.hpp"
#include "reasoner/reasoner.hpp"

namespace semreg::discovery {
namespace {

using onto::OntologyGraph;
using registry::BusinessService;

std::optional<std::string> key_of(const std::vector<onto::PropertyAssertion>& assertions) {
  for (const auto& a : assertions) {
    if (a.property != vocab::kTModelKey) continue;
    if (const auto* lit = std::get_if<onto::Literal>(&a.value)) return decimal_to_key(lit->lexical);
  }
  return std::nullopt;
}

void require_generic(const OntologyGraph& graph, const Iri& generic, std::string_view domain) {
  if (graph.find_class(generic) == nullptr) {
    throw Error(ErrorCode::kUnknownGenericClass,
                "class " + generic.str() + " is not defined in domain " + std::string(domain),
                {{"class", generic.str()}, {"domain", std::string(domain)}});
  }
}

// The generic class followed by its subclass closure.
std::vector<Iri> closure_with_root(const OntologyGraph& graph, const Iri& generic) {
  std::vector<Iri> out{generic};
  const auto subs = reason::subclasses_of(graph, generic).members;
  out.insert(out.end(), subs.begin(), subs.end());
  return out;
}

struct Match {
  Iri matched_class;
  std::string class_key;
  std::vector<const onto::InstanceDef*> implementations;
};

// How a service relates to a set of classes: through the tModel of one of
// the classes, or through the tModel of an implementation instance of one.
struct Index {
  std::map<std::string, Iri, std::less<>> class_by_key;
  std::map<std::string, const onto::InstanceDef*, std::less<>> instance_by_key;

  explicit Index(const OntologyGraph& graph) {
    for (const auto& [id, c] : graph.classes()) {
      if (auto k = key_of(c.assertions)) class_by_key.emplace(*k, id);
    }
    for (const auto& [id, i] : graph.instances()) {
      if (auto k = key_of(i.assertions)) instance_by_key.emplace(*k, &i);
    }
  }

  std::optional<Match> match(const BusinessService& service, const std::vector<Iri>& order) const {
    std::map<Iri, std::size_t> rank;
    for (std::size_t i = 0; i < order.size(); ++i) rank.emplace(order[i], i);

    std::optional<std::size_t> best;
    std::string best_key;
    std::vector<const onto::InstanceDef*> impls;
    auto consider = [&](const Iri& cls, const std::string& key) {
      auto r = rank.find(cls);
      if (r == rank.end()) return false;
      if (!best || r->second < *best) {
        best = r->second;
        best_key = key;
      }
      return true;
    };
    for (const auto& ref : service.category_bag.entries()) {
      if (auto c = class_by_key.find(ref.tmodel_key); c != class_by_key.end()) consider(c->second, ref.tmodel_key);
      if (auto i = instance_by_key.find(ref.tmodel_key); i != instance_by_key.end()) {
        if (consider(i->second->class_id, {})) impls.push_back(i->second);
      }
    }
    if (!best) return std::nullopt;
    return Match{order[*best], best_key, std::move(impls)};
  }
};

void add_fact(Evidence& e, std::string kind, std::string value) {
  SupportingFact f{std::move(kind), std::move(value)};
  if (std::find(e.supporting.begin(), e.supporting.end(), f) == e.supporting.end()) e.supporting.push_back(f);
}

Evidence functionality_evidence(const Match& m) {
  Evidence e;
  e.generic_class = m.matched_class;
  e.via = Via::kFunctionality;
  add_fact(e, "matched_class", m.matched_class.str());
  for (const auto* impl : m.implementations) add_fact(e, "implementation", impl->id.str());
  if (!m.class_key.empty()) add_fact(e, "tmodel_key", m.class_key);
  return e;
}

// Accumulates results per service, kept in service-key order.
class Collector {
 public:
  Evidence& at(const BusinessService& service, const Evidence& first) {
    auto [it, fresh] = results_.try_emplace(service.key, DiscoveryResult{service, first});
    return it->second.evidence;
  }

  DiscoveryReport finish(std::vector<DiscoveryWarning> warnings) {
    DiscoveryReport report;
    for (auto& [_, r] : results_) report.results.push_back(std::move(r));
    report.warnings = std::move(warnings);
    return report;
  }

 private:
  std::map<std::string, DiscoveryResult> results_;
};

std::optional<std::string> own_literal(const onto::ClassDef& c, const Iri& property) {
  for (const auto& a : c.assertions) {
    if (a.property == property) return onto::value_text(a.value);
  }
  return std::nullopt;
}

}  // namespace

DiscoveryReport find_by_functionality(const State& state, std::string_view domain, const Iri& generic) {
  const OntologyGraph& graph = state.domain(domain).schema();
  require_generic(graph, generic, domain);
  const auto order = closure_with_root(graph, generic);
  const Index index(graph);
  Collector c;
  for (const auto& [key, service] : state.registry.services()) {
    if (auto m = index.match(service, order)) c.at(service, functionality_evidence(*m));
  }
  return c.finish({});
}

DiscoveryReport find_complementary(const State& state, std::string_view domain, const Iri& anchor) {
  const OntologyGraph& graph = state.domain(domain).schema();
  require_generic(graph, anchor, domain);
  const Index index(graph);
  Collector c;
  std::vector<DiscoveryWarning> warnings;
  for (const auto& add_on : reason::add_ons_of(graph, anchor)) {
    const Iri& target = std::get<Iri>(add_on.value);
    if (graph.find_class(target) == nullptr) {
      warnings.push_back({"AddOnNotAClass", target.str(),
                          "add-on " + target.str() + " of " + add_on.declared_on.str() + " is not a class"});
      continue;
    }
    const auto order = closure_with_root(graph, target);
    for (const auto& [key, service] : state.registry.services()) {
      auto m = index.match(service, order);
      if (!m) continue;
      Evidence first = functionality_evidence(*m);
      first.via = Via::kComplement;
      first.supporting.clear();
      Evidence& e = c.at(service, first);
      add_fact(e, "anchor", anchor.str());
      add_fact(e, "add_on", target.str());
      add_fact(e, "declared_on", add_on.declared_on.str());
      add_fact(e, "matched_class", m->matched_class.str());
      for (const auto* impl : m->implementations) add_fact(e, "implementation", impl->id.str());
    }
  }
  return c.finish(std::move(warnings));
}

DiscoveryReport find_addon_product_services(const State& state, std::string_view domain, const Iri& anchor_product) {
  const OntologyGraph& graph = state.domain(domain).schema();
  Collector c;
  std::vector<DiscoveryWarning> warnings;
  const std::string unspsc(registry::kUnspscKey);
  for (const auto& add_on : reason::add_ons_of(graph, anchor_product)) {
    const Iri& product = std::get<Iri>(add_on.value);
    const auto* cls = graph.find_class(product);
    const auto code = cls == nullptr ? std::nullopt : own_literal(*cls, vocab::kUnspscCode);
    if (!code) {
      warnings.push_back({"MissingUnspscAnnotation", product.str(),
                          "add-on product " + product.str() + " has no UNSPSC code"});
      continue;
    }
    const registry::KeyedReference filter{unspsc, {}, *code};
    for (const auto& [key, service] : state.registry.services()) {
      if (!service.category_bag.matches(filter)) continue;
      Evidence& e = c.at(service, Evidence{product, Via::kAddonProduct, {}, {}});
      add_fact(e, "anchor", anchor_product.str());
      add_fact(e, "add_on", product.str());
      add_fact(e, "declared_on", add_on.declared_on.str());
      add_fact(e, "unspsc", *code);
    }
  }
  return c.finish(std::move(warnings));
}

DiscoveryReport find_by_product_instance(const State& state, std::string_view domain, const Iri& generic,
                                         const catalog::CatalogQuery& query, const catalog::ResourceFetcher& fetcher) {
  const OntologyGraph& graph = state.domain(domain).schema();
  require_generic(graph, generic, domain);
  const auto order = closure_with_root(graph, generic);
  const Index index(graph);
  Collector c;
  std::vector<DiscoveryWarning> warnings;

  for (const auto& [key, service] : state.registry.services()) {
    auto m = index.match(service, order);
    if (!m) continue;
    for (const auto* impl : m->implementations) {
      std::optional<catalog::ElectronicCatalogDescriptor> desc;
      catalog::CatalogQueryResult hits;
      try {
        desc = catalog::extract_query_catalog(graph, *impl);
        if (!desc) continue;
        hits = catalog::execute_query(catalog::load_catalog(*desc, fetcher), query);
      } catch (const Error& e) {
        warnings.push_back({std::string(error_code_name(e.code())), key, e.what()});
        continue;
      }
      if (hits.items.empty()) continue;
      Evidence& e = c.at(service, Evidence{m->matched_class, Via::kProductInstance, {}, {}});
      add_fact(e, "matched_class", m->matched_class.str());
      add_fact(e, "implementation", impl->id.str());
      add_fact(e, "catalog_uri", hits.catalog_uri);
      for (auto& item : hits.items) {
        add_fact(e, "catalog_item", item.id);
        e.matched_items.push_back(std::move(item));
      }
    }
  }
  return c.finish(std::move(warnings));
}

}  // namespace semreg::discovery
