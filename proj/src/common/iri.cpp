#include "common/iri.hpp"

#include <cctype>

namespace semreg {

std::string_view Iri::local_name() const noexcept {
  std::string_view v = value_;
  auto pos = v.rfind('#');
  if (pos == std::string_view::npos) pos = v.rfind('/');
  if (pos == std::string_view::npos) return v;
  return v.substr(pos + 1);
}

std::string_view Iri::namespace_part() const noexcept {
  std::string_view v = value_;
  return v.substr(0, v.size() - local_name().size());
}

std::string strip_fragment(std::string_view base) {
  auto pos = base.find('#');
  return std::string(pos == std::string_view::npos ? base : base.substr(0, pos));
}

bool has_scheme(std::string_view ref) noexcept {
  if (ref.empty() || !std::isalpha(static_cast<unsigned char>(ref.front()))) return false;
  for (std::size_t i = 1; i < ref.size(); ++i) {
    const auto c = static_cast<unsigned char>(ref[i]);
    if (c == ':') return true;
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

Iri resolve_reference(std::string_view ref, std::string_view base) {
  if (has_scheme(ref)) return Iri(std::string(ref));
  std::string doc = strip_fragment(base);
  if (!ref.empty() && ref.front() == '#') return Iri(doc + std::string(ref));
  return Iri(doc + "#" + std::string(ref));
}

bool is_syntactic_url(std::string_view text) noexcept {
  if (!has_scheme(text)) return false;
  auto colon = text.find(':');
  if (colon + 1 >= text.size()) return false;
  for (unsigned char c : text) {
    if (c <= 0x20 || c == 0x7f) return false;
  }
  return true;
}

}  // namespace semreg
