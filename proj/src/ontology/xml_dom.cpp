#include "ontology/xml_dom.hpp"

#include <expat.h>

#include <memory>

#include "common/error.hpp"

namespace semreg::xml {
namespace {

constexpr char kNsSeparator = '\x1f';

Name split_name(const XML_Char* raw) {
  std::string_view s(raw);
  auto sep = s.find(kNsSeparator);
  if (sep == std::string_view::npos) return Name{{}, std::string(s)};
  return Name{std::string(s.substr(0, sep)), std::string(s.substr(sep + 1))};
}

struct Injection {
  std::string text;
  std::size_t offset = 0;  // byte offset of the inserted declarations
  std::size_t length = 0;
};

std::size_t skip_quoted_or_markup(std::string_view doc, std::size_t pos) {
  const char c = doc[pos];
  if (c == '"' || c == '\'') {
    auto end = doc.find(c, pos + 1);
    return end == std::string_view::npos ? doc.size() : end + 1;
  }
  if (doc.substr(pos).starts_with("<!--")) {
    auto end = doc.find("-->", pos + 4);
    return end == std::string_view::npos ? doc.size() : end + 3;
  }
  if (doc.substr(pos).starts_with("<?")) {
    auto end = doc.find("?>", pos + 2);
    return end == std::string_view::npos ? doc.size() : end + 2;
  }
  return pos + 1;
}

// Places the entity table into the document's DTD so expat expands the
// references and still rejects anything undeclared. Declarations are kept on
// one line so reported line numbers stay correct.
Injection inject_entities(std::string_view doc, EntityTable entities) {
  Injection out;
  if (entities.empty()) {
    out.text = std::string(doc);
    return out;
  }
  std::string decls;
  for (const auto& [name, value] : entities) {
    decls += "<!ENTITY ";
    decls += name;
    decls += " \"";
    decls += value;
    decls += "\">";
  }

  std::size_t pos = doc.starts_with("\xEF\xBB\xBF") ? 3 : 0;
  auto insert = [&](std::size_t at, std::string piece) {
    out.text = std::string(doc.substr(0, at)) + piece + std::string(doc.substr(at));
    out.offset = at;
    out.length = piece.size();
    return out;
  };

  while (pos < doc.size()) {
    const char c = doc[pos];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++pos;
    } else if (doc.substr(pos).starts_with("<?") || doc.substr(pos).starts_with("<!--")) {
      pos = skip_quoted_or_markup(doc, pos);
    } else if (doc.substr(pos).starts_with("<!DOCTYPE")) {
      std::size_t p = pos + 9;
      while (p < doc.size()) {
        const char d = doc[p];
        if (d == '"' || d == '\'') {
          p = skip_quoted_or_markup(doc, p);
        } else if (d == '>') {
          return insert(p, " [" + decls + "]");
        } else if (d == '[') {
          ++p;
          while (p < doc.size() && doc[p] != ']') {
            const char e = doc[p];
            if (e == '"' || e == '\'' || e == '<') {
              p = skip_quoted_or_markup(doc, p);
            } else {
              ++p;
            }
          }
          return insert(p, decls);
        } else {
          ++p;
        }
      }
      break;
    } else {
      return insert(pos, "<!DOCTYPE root [" + decls + "]>");
    }
  }
  out.text = std::string(doc);
  return out;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(XML_Parser parser) : parser_(parser) {}

  static void on_start(void* user, const XML_Char* name, const XML_Char** atts) {
    auto* self = static_cast<TreeBuilder*>(user);
    Element el;
    el.name = split_name(name);
    el.line = static_cast<int>(XML_GetCurrentLineNumber(self->parser_));
    el.column = static_cast<int>(XML_GetCurrentColumnNumber(self->parser_)) + 1;
    for (std::size_t i = 0; atts[i] != nullptr; i += 2) {
      el.attributes.push_back(Attribute{split_name(atts[i]), atts[i + 1]});
    }
    self->stack_.push_back(std::move(el));
  }

  static void on_end(void* user, const XML_Char*) {
    auto* self = static_cast<TreeBuilder*>(user);
    Element el = std::move(self->stack_.back());
    self->stack_.pop_back();
    if (self->stack_.empty()) {
      self->root_ = std::move(el);
    } else {
      self->stack_.back().children.push_back(std::move(el));
    }
  }

  static void on_text(void* user, const XML_Char* s, int len) {
    auto* self = static_cast<TreeBuilder*>(user);
    if (!self->stack_.empty()) self->stack_.back().text.append(s, static_cast<std::size_t>(len));
  }

  Element take_root() { return std::move(root_); }

 private:
  XML_Parser parser_;
  std::vector<Element> stack_;
  Element root_;
};

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

const Attribute* Element::attribute(std::string_view ns, std::string_view local) const {
  for (const auto& a : attributes) {
    if (a.name.ns == ns && a.name.local == local) return &a;
  }
  return nullptr;
}

Element parse(std::string_view bytes, EntityTable entities) {
  Injection injected = inject_entities(bytes, entities);
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreateNS("UTF-8", kNsSeparator));
  if (!parser) throw Error(ErrorCode::kInternal, "cannot allocate XML parser");

  TreeBuilder builder(parser.get());
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &TreeBuilder::on_start, &TreeBuilder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &TreeBuilder::on_text);

  const auto status =
      XML_Parse(parser.get(), injected.text.data(), static_cast<int>(injected.text.size()), XML_TRUE);
  if (status != XML_STATUS_OK) {
    const XML_Error code = XML_GetErrorCode(parser.get());
    const auto line = XML_GetCurrentLineNumber(parser.get());
    auto column = XML_GetCurrentColumnNumber(parser.get()) + 1;
    const auto byte = static_cast<std::size_t>(XML_GetCurrentByteIndex(parser.get()));
    if (injected.length != 0 && byte >= injected.offset + injected.length) {
      // Undo the column shift on the line the declarations were inserted into.
      const auto line_start = injected.text.rfind('\n', byte == 0 ? 0 : byte - 1);
      const std::size_t start = line_start == std::string::npos ? 0 : line_start + 1;
      if (start <= injected.offset) column -= injected.length;
    }
    std::vector<ErrorDetail> details{{"line", std::to_string(line)}, {"column", std::to_string(column)}};
    const std::string message = std::string(XML_ErrorString(code)) + " at line " + std::to_string(line) +
                                ", column " + std::to_string(column);
    if (code == XML_ERROR_UNDEFINED_ENTITY) throw Error(ErrorCode::kUnresolvedEntity, message, std::move(details));
    throw Error(ErrorCode::kXmlMalformed, message, std::move(details));
  }
  return builder.take_root();
}

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace semreg::xml
