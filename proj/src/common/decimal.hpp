#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace semreg {

/// Exact decimal number with arbitrary precision.
///
/// Only comparison is supported; the registry never does arithmetic on
/// prices or keys, it only orders and matches them. The lexical form given
/// at parse time is preserved for display.
class Decimal {
 public:
  /// Accepts `[+-]?digits[.digits]` or `[+-]?.digits`; surrounding
  /// whitespace is not allowed.
  static std::optional<Decimal> parse(std::string_view text);

  const std::string& lexical() const noexcept { return lexical_; }
  /// Canonical form: no leading zeros, no trailing fractional zeros, no "-0".
  std::string canonical() const;

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);
  friend bool operator==(const Decimal& a, const Decimal& b) { return (a <=> b) == 0; }

 private:
  Decimal() = default;

  std::string lexical_;
  bool negative_ = false;
  std::string integer_;   // no leading zeros; empty means zero
  std::string fraction_;  // no trailing zeros
};

}  // namespace semreg
