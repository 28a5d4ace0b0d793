#include "common/decimal.hpp"

#include <algorithm>
#include <cctype>

namespace semreg {
namespace {

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Compares magnitudes of two normalized (integer, fraction) pairs.
std::strong_ordering compare_magnitude(const std::string& ai, const std::string& af,
                                       const std::string& bi, const std::string& bf) {
  if (ai.size() != bi.size()) return ai.size() <=> bi.size();
  if (auto c = ai.compare(bi); c != 0) return c <=> 0;
  const std::size_t n = std::max(af.size(), bf.size());
  for (std::size_t i = 0; i < n; ++i) {
    const char ca = i < af.size() ? af[i] : '0';
    const char cb = i < bf.size() ? bf[i] : '0';
    if (ca != cb) return ca <=> cb;
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::optional<Decimal> Decimal::parse(std::string_view text) {
  Decimal d;
  d.lexical_ = std::string(text);
  std::string_view rest = text;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    d.negative_ = rest.front() == '-';
    rest.remove_prefix(1);
  }
  std::string_view int_part = rest;
  std::string_view frac_part;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    int_part = rest.substr(0, dot);
    frac_part = rest.substr(dot + 1);
    if (frac_part.empty()) return std::nullopt;
  }
  if (int_part.empty() && frac_part.empty()) return std::nullopt;
  if (!all_digits(int_part) || !all_digits(frac_part)) return std::nullopt;

  auto first = int_part.find_first_not_of('0');
  d.integer_ = first == std::string_view::npos ? std::string() : std::string(int_part.substr(first));
  auto last = frac_part.find_last_not_of('0');
  d.fraction_ = last == std::string_view::npos ? std::string() : std::string(frac_part.substr(0, last + 1));
  if (d.integer_.empty() && d.fraction_.empty()) d.negative_ = false;
  return d;
}

std::string Decimal::canonical() const {
  std::string out;
  if (negative_) out += '-';
  out += integer_.empty() ? "0" : integer_;
  if (!fraction_.empty()) {
    out += '.';
    out += fraction_;
  }
  return out;
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  if (a.negative_ != b.negative_) return a.negative_ ? std::strong_ordering::less : std::strong_ordering::greater;
  auto mag = compare_magnitude(a.integer_, a.fraction_, b.integer_, b.fraction_);
  if (a.negative_) return 0 <=> mag;
  return mag;
}

}  // namespace semreg
