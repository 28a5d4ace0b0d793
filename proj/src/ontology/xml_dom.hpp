#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semreg::xml {

struct Name {
  std::string ns;  // empty for unqualified names
  std::string local;

  bool is(std::string_view n, std::string_view l) const { return ns == n && local == l; }
  std::string expanded() const { return ns + local; }
};

struct Attribute {
  Name name;
  std::string value;
};

struct Element {
  Name name;
  std::vector<Attribute> attributes;
  std::vector<Element> children;
  std::string text;  // concatenated character data directly inside this element
  int line = 0;
  int column = 0;

  const Attribute* attribute(std::string_view ns, std::string_view local) const;
};

using EntityTable = std::span<const std::pair<std::string_view, std::string_view>>;

// Parses a namespace-aware element tree. `entities` are made available to the
// document as if declared at the end of its internal DTD subset, so local
// declarations win. Throws Error{kXmlMalformed} with line/column details, or
// Error{kUnresolvedEntity} for references to undeclared entities.
Element parse(std::string_view bytes, EntityTable entities = {});

// Escapes text for use inside an attribute value or element content.
std::string escape(std::string_view text);

}  // namespace semreg::xml
