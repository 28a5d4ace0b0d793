#include "discovery/semantic_registry.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "common/error.hpp"
#include "common/keys.hpp"
#include "ontology/vocabulary.hpp"
#include "reasoner/reasoner.hpp"

namespace semreg::discovery {

using onto::OntologyDocument;
using registry::KeyedReference;

namespace {

constexpr std::string_view kInstancePrefix = "instance:";

std::optional<std::string> bound_key(const std::vector<onto::PropertyAssertion>& assertions) {
  for (const auto& a : assertions) {
    if (a.property != vocab::kTModelKey) continue;
    if (const auto* lit = std::get_if<onto::Literal>(&a.value)) return decimal_to_key(lit->lexical);
  }
  return std::nullopt;
}

void stamp_key(std::vector<onto::PropertyAssertion>& assertions, std::string_view key) {
  std::erase_if(assertions, [](const onto::PropertyAssertion& a) { return a.property == vocab::kTModelKey; });
  assertions.push_back({vocab::kTModelKey, onto::Literal{*key_to_decimal(key), onto::LiteralType::kDecimal}});
}

OntologyDocument strip_keys(OntologyDocument doc) {
  auto strip = [](std::vector<onto::PropertyAssertion>& as) {
    std::erase_if(as, [](const onto::PropertyAssertion& a) { return a.property == vocab::kTModelKey; });
  };
  for (auto& [_, c] : doc.classes) strip(c.assertions);
  for (auto& [_, i] : doc.instances) strip(i.assertions);
  return doc;
}

std::vector<OntologyDocument> plain(const std::vector<std::shared_ptr<const OntologyDocument>>& docs) {
  std::vector<OntologyDocument> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(*d);
  return out;
}

KeyedReference daml_spec_ref() {
  return {std::string(registry::kUddiTypesKey), "uddi-org:types", std::string(registry::kDamlSpec)};
}

registry::TModel daml_tmodel(std::string name, std::string overview) {
  registry::TModel t;
  t.name = std::move(name);
  t.overview_doc = std::move(overview);
  t.category_bag.add(daml_spec_ref());
  return t;
}

std::string versioned(const Domain& d) { return d.schema_url + "?version=" + std::to_string(d.version); }

// Keys are carried by the documents, so they must survive replacing a
// document: classes that lose their key get the previous one back.
void restamp(std::vector<std::shared_ptr<const OntologyDocument>>& docs, const std::map<Iri, std::string>& keys) {
  for (auto& doc : docs) {
    std::shared_ptr<OntologyDocument> copy;
    for (const auto& [id, c] : doc->classes) {
      auto k = keys.find(id);
      if (k == keys.end() || bound_key(c.assertions)) continue;
      if (!copy) copy = std::make_shared<OntologyDocument>(*doc);
      stamp_key(copy->classes[id].assertions, k->second);
    }
    if (copy) doc = std::move(copy);
  }
}

void refresh_graph(Domain& d) {
  auto docs = plain(d.documents);
  d.graph = std::make_shared<const onto::OntologyGraph>(onto::merge(docs));
}

void bump_version(registry::Registry& reg, Domain& d) {
  ++d.version;
  auto schema = reg.get_tmodel(d.schema_tmodel_key);
  schema.overview_doc = versioned(d);
  reg.save_tmodel(std::move(schema));
}

const Registration* registration_for_service(const State& s, std::string_view key, const Domain** owner) {
  for (const auto& [_, d] : s.domains) {
    for (const auto& r : d.registrations) {
      if (r.service_key == key) {
        if (owner != nullptr) *owner = &d;
        return &r;
      }
    }
  }
  return nullptr;
}

bool is_poec_service(const onto::OntologyGraph& graph, const Iri& cls) {
  if (graph.find_class(cls) == nullptr) return false;
  return cls == vocab::kPoecService || reason::superclasses_of(graph, cls).contains(vocab::kPoecService);
}

std::string summarize(const std::vector<onto::Finding>& findings) {
  std::string out;
  for (std::size_t i = 0; i < findings.size() && i < 3; ++i) {
    if (i) out += "; ";
    out += findings[i].code + " at " + findings[i].entity.str() + ": " + findings[i].message;
  }
  if (findings.size() > 3) out += "; ...";
  return out;
}

std::vector<ErrorDetail> finding_details(const std::vector<onto::Finding>& findings) {
  std::vector<ErrorDetail> out;
  for (const auto& f : findings) out.push_back({f.code, f.entity.str()});
  return out;
}

}  // namespace

std::string_view binding_kind_name(BindingKind kind) {
  switch (kind) {
    case BindingKind::kGenericClass: return "generic_class";
    case BindingKind::kImplementationInstance: return "implementation_instance";
    case BindingKind::kDomainSchema: return "domain_schema";
  }
  return "generic_class";
}

std::string_view via_name(Via via) {
  switch (via) {
    case Via::kFunctionality: return "functionality";
    case Via::kComplement: return "complement";
    case Via::kAddonProduct: return "addon_product";
    case Via::kProductInstance: return "product_instance";
  }
  return "functionality";
}

std::vector<std::string> DiscoveryReport::service_keys() const {
  std::vector<std::string> out;
  for (const auto& r : results) out.push_back(r.service.key);
  return out;
}

const Domain& State::domain(std::string_view id) const {
  auto it = domains.find(id);
  if (it == domains.end()) {
    throw Error(ErrorCode::kUnknownDomain, "unknown domain " + std::string(id), {{"domain", std::string(id)}});
  }
  return it->second;
}

Iri resolve_class_name(const onto::OntologyGraph& graph, std::string_view name) {
  if (has_scheme(name)) return Iri(std::string(name));
  Iri upper = vocab::poec(name);
  if (graph.find_class(upper) != nullptr) return upper;
  const Iri* unique = nullptr;
  for (const auto& [id, _] : graph.classes()) {
    if (id.local_name() != name) continue;
    if (unique != nullptr) return upper;
    unique = &id;
  }
  return unique != nullptr ? *unique : upper;
}

std::vector<SemanticBinding> bindings_of(const State&, const Domain& domain) {
  std::vector<SemanticBinding> out;
  for (const auto& [id, c] : domain.graph->classes()) {
    if (auto k = bound_key(c.assertions)) out.push_back({id, *k, BindingKind::kGenericClass});
  }
  for (const auto& [id, i] : domain.graph->instances()) {
    if (auto k = bound_key(i.assertions)) out.push_back({id, *k, BindingKind::kImplementationInstance});
  }
  if (!domain.schema_tmodel_key.empty()) {
    out.push_back({Iri(domain.schema_url), domain.schema_tmodel_key, BindingKind::kDomainSchema});
  }
  std::sort(out.begin(), out.end(), [](const SemanticBinding& a, const SemanticBinding& b) {
    return a.entity < b.entity;
  });
  return out;
}

std::vector<std::string> binding_violations(const State& state) {
  std::vector<std::string> out;
  std::map<std::string, std::string> owner_of_key;
  const auto& tmodels = state.registry.tmodels();
  for (const auto& [id, d] : state.domains) {
    auto check_entity = [&](const Iri& entity, const std::vector<onto::PropertyAssertion>& as) {
      const auto n = std::count_if(as.begin(), as.end(),
                                   [](const onto::PropertyAssertion& a) { return a.property == vocab::kTModelKey; });
      if (n > 1) out.push_back(entity.str() + " carries " + std::to_string(n) + " tModel keys");
      for (const auto& a : as) {
        if (a.property != vocab::kTModelKey) continue;
        const auto* lit = std::get_if<onto::Literal>(&a.value);
        if (lit == nullptr || !decimal_to_key(lit->lexical)) out.push_back(entity.str() + " has a malformed tModelKey");
      }
    };
    for (const auto& [cid, c] : d.graph->classes()) check_entity(cid, c.assertions);
    for (const auto& [iid, i] : d.graph->instances()) check_entity(iid, i.assertions);

    for (const auto& b : bindings_of(state, d)) {
      const std::string who = id + ":" + b.entity.str();
      if (!tmodels.contains(b.tmodel_key)) out.push_back(who + " is bound to missing tModel " + b.tmodel_key);
      auto [it, fresh] = owner_of_key.emplace(b.tmodel_key, who);
      if (!fresh && it->second != who) {
        out.push_back("tModel " + b.tmodel_key + " is bound to both " + it->second + " and " + who);
      }
    }
    for (const auto& r : d.registrations) {
      const auto& services = state.registry.services();
      auto s = services.find(r.service_key);
      if (s == services.end()) {
        out.push_back("registration of " + r.instance.str() + " names missing service " + r.service_key);
        continue;
      }
      const auto* inst = d.graph->find_instance(r.instance);
      const auto key = inst == nullptr ? std::nullopt : bound_key(inst->assertions);
      if (!key) {
        out.push_back("registered instance " + r.instance.str() + " has no binding");
      } else if (!s->second.category_bag.references(*key)) {
        out.push_back("service " + r.service_key + " does not reference the tModel of " + r.instance.str());
      }
    }
  }
  return out;
}

SemanticRegistry::SemanticRegistry(std::uint64_t seed, std::string public_base) {
  State s;
  s.registry = registry::Registry(seed);
  s.public_base = std::move(public_base);
  for (auto& t : builtin_taxonomies()) s.registry.add_taxonomy(std::move(t));
  current_ = std::make_shared<const State>(std::move(s));
}

SemanticRegistry::SemanticRegistry(State state) : current_(std::make_shared<const State>(std::move(state))) {}

std::shared_ptr<const State> SemanticRegistry::snapshot() const {
  std::lock_guard lock(state_mutex_);
  return current_;
}

void SemanticRegistry::set_commit_hook(std::function<void(const State&)> hook) {
  std::lock_guard lock(write_mutex_);
  commit_hook_ = std::move(hook);
}

void SemanticRegistry::set_fetcher(std::shared_ptr<const catalog::ResourceFetcher> fetcher) {
  std::lock_guard lock(state_mutex_);
  fetcher_ = std::move(fetcher);
}

std::shared_ptr<const catalog::ResourceFetcher> SemanticRegistry::fetcher() const {
  std::lock_guard lock(state_mutex_);
  return fetcher_;
}

template <typename Fn>
auto SemanticRegistry::write(Fn&& fn) {
  std::lock_guard lock(write_mutex_);
  auto next = std::make_shared<State>(*snapshot());
  auto publish = [&] {
    if (commit_hook_) commit_hook_(*next);
    std::lock_guard g(state_mutex_);
    current_ = std::move(next);
  };
  if constexpr (std::is_void_v<decltype(fn(*next))>) {
    fn(*next);
    publish();
  } else {
    auto result = fn(*next);
    publish();
    return result;
  }
}

onto::ValidationReport SemanticRegistry::load_ontology(std::string_view domain_id,
                                                       std::vector<OntologyDocument> documents) {
  if (domain_id.empty()) throw Error(ErrorCode::kInvalidArgument, "domain id must not be empty");
  if (documents.empty()) throw Error(ErrorCode::kInvalidArgument, "no ontology documents given");
  return write([&](State& s) {
    auto [it, created] = s.domains.try_emplace(std::string(domain_id));
    Domain& d = it->second;
    std::map<Iri, std::string> old_keys;
    if (created) {
      d.id = std::string(domain_id);
      d.schema_url = s.public_base + "/domains/" + d.id + "/schema";
    } else {
      for (const auto& [cid, c] : d.graph->classes()) {
        if (auto k = bound_key(c.assertions)) old_keys.emplace(cid, *k);
      }
    }

    std::size_t n = d.documents.size();
    for (auto& doc : documents) {
      if (doc.source_id.empty()) doc.source_id = "document-" + std::to_string(++n);
      if (doc.source_id.starts_with(kInstancePrefix)) {
        throw Error(ErrorCode::kInvalidArgument, "source id " + doc.source_id + " is reserved for instance documents");
      }
      auto ptr = std::make_shared<const OntologyDocument>(std::move(doc));
      auto same = std::find_if(d.documents.begin(), d.documents.end(),
                               [&](const auto& e) { return e->source_id == ptr->source_id; });
      if (same != d.documents.end()) {
        *same = std::move(ptr);
      } else {
        d.documents.push_back(std::move(ptr));
      }
    }
    restamp(d.documents, old_keys);
    refresh_graph(d);

    auto report = onto::validate(*d.graph);
    if (!report.ok()) {
      throw Error(ErrorCode::kInvalidOntology, "ontology for domain " + d.id + " is invalid: " +
                                                   summarize(report.errors),
                  finding_details(report.errors));
    }
    if (created) {
      d.schema_tmodel_key = s.registry.save_tmodel(daml_tmodel("domain:" + d.id, d.schema_url)).key;
    }
    bump_version(s.registry, d);
    return report;
  });
}

void SemanticRegistry::load_taxonomy(registry::Taxonomy taxonomy) {
  write([&](State& s) { s.registry.add_taxonomy(std::move(taxonomy)); });
}

registry::TModel SemanticRegistry::publish_tmodel(registry::TModel draft) {
  return write([&](State& s) { return s.registry.save_tmodel(std::move(draft)); });
}

registry::BusinessEntity SemanticRegistry::publish_business(registry::BusinessEntity draft) {
  return write([&](State& s) { return s.registry.save_business(std::move(draft)); });
}

registry::BusinessService SemanticRegistry::publish_service(registry::BusinessService draft) {
  return write([&](State& s) {
    // An update must not drop the semantic references of a registered service.
    if (!draft.key.empty() && registration_for_service(s, draft.key, nullptr) != nullptr) {
      const auto& old = s.registry.get_service(draft.key);
      const auto& tms = s.registry.tmodels();
      for (const auto& ref : old.category_bag.entries()) {
        auto t = tms.find(ref.tmodel_key);
        if (t != tms.end() && t->second.is_daml_spec()) draft.category_bag.add(ref);
      }
    }
    return s.registry.save_service(std::move(draft));
  });
}

void SemanticRegistry::delete_service(std::string_view key) {
  write([&](State& s) {
    const Domain* owner = nullptr;
    const Registration* reg = registration_for_service(s, key, &owner);
    if (reg == nullptr) {
      s.registry.delete_service(key);
      return;
    }
    Domain& d = s.domains.find(owner->id)->second;
    const Registration r = *reg;
    std::optional<std::string> instance_key;
    if (const auto* inst = d.graph->find_instance(r.instance)) instance_key = bound_key(inst->assertions);

    s.registry.delete_service(key);
    std::erase_if(d.registrations, [&](const Registration& x) { return x.service_key == r.service_key; });
    std::erase_if(d.documents, [&](const auto& doc) { return doc->source_id == r.document_id; });
    refresh_graph(d);
    if (instance_key && s.registry.tmodels().contains(*instance_key)) s.registry.delete_tmodel(*instance_key);
    bump_version(s.registry, d);
  });
}

void SemanticRegistry::delete_tmodel(std::string_view key) {
  write([&](State& s) {
    for (const auto& [_, d] : s.domains) {
      for (const auto& b : bindings_of(s, d)) {
        if (b.tmodel_key == key) {
          throw Error(ErrorCode::kTModelInUse, "tModel " + std::string(key) + " is bound to " + b.entity.str(),
                      {{"key", std::string(key)}, {"entity", b.entity.str()}});
        }
      }
    }
    s.registry.delete_tmodel(key);
  });
}

RegistrationOutcome SemanticRegistry::register_semantic_service(RegistrationRequest request) {
  return write([&](State& s) -> RegistrationOutcome {
    auto dit = s.domains.find(request.domain);
    if (dit == s.domains.end()) {
      throw Error(ErrorCode::kUnknownDomain, "unknown domain " + request.domain, {{"domain", request.domain}});
    }
    Domain& d = dit->second;
    const onto::OntologyGraph& schema = *d.graph;
    OntologyDocument doc = std::move(request.instance_document);

    for (const auto& [id, inst] : doc.instances) {
      const bool known = schema.find_class(inst.class_id) != nullptr || doc.classes.contains(inst.class_id) ||
                         vocab::is_external(inst.class_id);
      if (!known) {
        throw Error(ErrorCode::kUnknownGenericClass,
                    "class " + inst.class_id.str() + " of " + id.str() + " is not defined in domain " + d.id,
                    {{"instance", id.str()}, {"class", inst.class_id.str()}});
      }
    }

    // Instances that are values of another instance (a QueryCatalog
    // parameter, say) describe parts of the service, not the service.
    std::set<Iri> parts;
    for (const auto& [id, inst] : doc.instances) {
      for (const auto& a : inst.assertions) {
        if (const auto* iri = std::get_if<Iri>(&a.value); iri != nullptr && *iri != id) parts.insert(*iri);
      }
    }
    std::vector<const onto::InstanceDef*> impls;
    for (const auto& [id, inst] : doc.instances) {
      if (parts.contains(id)) continue;
      if (reason::service_type_of(inst) == vocab::kImplementation && is_poec_service(schema, inst.class_id)) {
        impls.push_back(&inst);
      }
    }
    if (impls.size() != 1) {
      throw Error(ErrorCode::kInvalidInstanceDocument,
                  "instance document must describe exactly one service implementation, found " +
                      std::to_string(impls.size()));
    }
    const Iri instance_id = impls.front()->id;
    const Iri generic = impls.front()->class_id;
    const std::string local(instance_id.local_name());
    const std::string generic_local(generic.local_name());
    doc.source_id = std::string(kInstancePrefix) + instance_id.str();

    // Re-registration.
    for (const auto& r : d.registrations) {
      if (r.instance != instance_id) continue;
      auto existing = std::find_if(d.documents.begin(), d.documents.end(),
                                   [&](const auto& e) { return e->source_id == r.document_id; });
      if (existing == d.documents.end() || !strip_keys(**existing).same_entities(strip_keys(doc))) {
        throw Error(ErrorCode::kOntologyMergeConflict,
                    "instance " + instance_id.str() + " is already registered with a different description",
                    {{"instance", instance_id.str()}, {"service_key", r.service_key}});
      }
      RegistrationOutcome out{s.registry.get_service(r.service_key), {}};
      for (const auto& b : bindings_of(s, d)) {
        if (b.entity == instance_id || b.entity == generic || b.kind == BindingKind::kDomainSchema) {
          out.bindings.push_back(b);
        }
      }
      return out;
    }

    doc = strip_keys(std::move(doc));
    {
      auto docs = plain(d.documents);
      docs.push_back(doc);
      try {
        (void)onto::merge(docs);
      } catch (const Error& e) {
        throw Error(ErrorCode::kOntologyMergeConflict, std::string("instance document conflicts with domain: ") + e.what(),
                    e.details());
      }
    }

    std::map<std::string, Iri> key_owner;
    for (const auto& [_, other] : s.domains) {
      for (const auto& b : bindings_of(s, other)) key_owner.emplace(b.tmodel_key, b.entity);
    }
    auto claim = [&](const std::string& key, const Iri& entity) {
      auto [it, fresh] = key_owner.emplace(key, entity);
      if (!fresh && it->second != entity) {
        throw Error(ErrorCode::kOntologyMergeConflict,
                    "tModel " + key + " is already bound to " + it->second.str(),
                    {{"tmodel_key", key}, {"entity", it->second.str()}});
      }
    };

    std::string generic_key;
    if (auto k = bound_key(schema.find_class(generic)->assertions); k && s.registry.tmodels().contains(*k)) {
      generic_key = *k;
    } else {
      generic_key = s.registry.save_tmodel(daml_tmodel(generic_local, d.schema_url + "#" + generic_local)).key;
      claim(generic_key, generic);
      std::map<Iri, std::string> stamp{{generic, generic_key}};
      for (auto& e : d.documents) {
        if (!e->classes.contains(generic)) continue;
        auto copy = std::make_shared<OntologyDocument>(*e);
        stamp_key(copy->classes[generic].assertions, generic_key);
        e = std::move(copy);
      }
    }

    const std::string overview = request.instance_url.value_or(d.schema_url + "#" + local);
    const std::string instance_key = s.registry.save_tmodel(daml_tmodel(local, overview)).key;
    claim(instance_key, instance_id);
    stamp_key(doc.instances[instance_id].assertions, instance_key);

    registry::BusinessService service = std::move(request.service);
    service.category_bag.add({d.schema_tmodel_key, "domain", d.id});
    service.category_bag.add({generic_key, generic_local, generic.str()});
    service.category_bag.add({instance_key, local, instance_id.str()});
    service = s.registry.save_service(std::move(service));

    const std::string document_id = doc.source_id;
    d.documents.push_back(std::make_shared<const OntologyDocument>(std::move(doc)));
    try {
      refresh_graph(d);
    } catch (const Error& e) {
      throw Error(ErrorCode::kOntologyMergeConflict, std::string("instance document conflicts with domain: ") + e.what(),
                  e.details());
    }
    auto report = onto::validate(*d.graph);
    if (!report.ok()) {
      throw Error(ErrorCode::kInvalidInstanceDocument, "instance document is invalid: " + summarize(report.errors),
                  finding_details(report.errors));
    }
    d.registrations.push_back({instance_id, service.key, document_id});
    bump_version(s.registry, d);

    RegistrationOutcome out{service, {}};
    out.bindings.push_back({Iri(d.schema_url), d.schema_tmodel_key, BindingKind::kDomainSchema});
    out.bindings.push_back({generic, generic_key, BindingKind::kGenericClass});
    out.bindings.push_back({instance_id, instance_key, BindingKind::kImplementationInstance});
    return out;
  });
}

DiscoveryReport SemanticRegistry::find_by_functionality(std::string_view domain, std::string_view generic) const {
  auto s = snapshot();
  const auto& graph = s->domain(domain).schema();
  return discovery::find_by_functionality(*s, domain, resolve_class_name(graph, generic));
}

DiscoveryReport SemanticRegistry::find_complementary(std::string_view domain, std::string_view anchor) const {
  auto s = snapshot();
  const auto& graph = s->domain(domain).schema();
  return discovery::find_complementary(*s, domain, resolve_class_name(graph, anchor));
}

DiscoveryReport SemanticRegistry::find_addon_product_services(std::string_view domain,
                                                              std::string_view anchor_product) const {
  auto s = snapshot();
  const auto& graph = s->domain(domain).schema();
  return discovery::find_addon_product_services(*s, domain, resolve_class_name(graph, anchor_product));
}

DiscoveryReport SemanticRegistry::find_by_product_instance(std::string_view domain, std::string_view generic,
                                                           const catalog::CatalogQuery& query) const {
  auto s = snapshot();
  auto f = fetcher();
  const auto& graph = s->domain(domain).schema();
  const catalog::FileFetcher fallback;
  return discovery::find_by_product_instance(*s, domain, resolve_class_name(graph, generic), query,
                                             f ? *f : static_cast<const catalog::ResourceFetcher&>(fallback));
}

}  // namespace semreg::discovery
