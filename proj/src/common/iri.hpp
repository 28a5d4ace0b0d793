#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace semreg {

// Namespace-expanded identifier. Comparison is exact and case-sensitive.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  // Text after the last '#', or after the last '/' when there is no '#'.
  std::string_view local_name() const noexcept;
  // Everything before local_name().
  std::string_view namespace_part() const noexcept;

  friend auto operator<=>(const Iri&, const Iri&) = default;
  friend bool operator==(const Iri&, const Iri&) = default;

 private:
  std::string value_;
};

// Drops a trailing "#fragment" from a document base.
std::string strip_fragment(std::string_view base);

bool has_scheme(std::string_view ref) noexcept;

// Resolves a reference found in a document against the document base.
//  "#X"        -> base#X
//  "scheme:…"  -> unchanged
//  "X"         -> base#X   (bare names are treated as fragment identifiers)
Iri resolve_reference(std::string_view ref, std::string_view base);

// Minimal syntactic URL check: "scheme:" followed by at least one character
// with no whitespace or control characters. Relative paths are not URLs.
bool is_syntactic_url(std::string_view text) noexcept;

}  // namespace semreg

template <>
struct std::hash<semreg::Iri> {
  std::size_t operator()(const semreg::Iri& iri) const noexcept { return std::hash<std::string>{}(iri.str()); }
};
