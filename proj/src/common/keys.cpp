#include "common/keys.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace semreg {
namespace {

using u128 = unsigned __int128;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::array<std::size_t, 4> kDashes{8, 13, 18, 23};

std::string format_uuid(u128 value) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex(32, '0');
  for (int i = 31; i >= 0; --i) {
    hex[static_cast<std::size_t>(i)] = kHex[static_cast<unsigned>(value & 0xf)];
    value >>= 4;
  }
  return hex.substr(0, 8) + "-" + hex.substr(8, 4) + "-" + hex.substr(12, 4) + "-" + hex.substr(16, 4) + "-" +
         hex.substr(20, 12);
}

}  // namespace

std::string KeyGenerator::next() {
  ++sequence_;
  const std::uint64_t hi = splitmix64(seed_ ^ splitmix64(sequence_));
  const std::uint64_t lo = splitmix64(hi ^ sequence_);
  u128 value = (static_cast<u128>(hi) << 64) | lo;
  // Version 4 and RFC 4122 variant bits.
  value &= ~(static_cast<u128>(0xf) << 76);
  value |= static_cast<u128>(0x4) << 76;
  value &= ~(static_cast<u128>(0x3) << 62);
  value |= static_cast<u128>(0x2) << 62;
  return format_uuid(value);
}

bool is_uuid_key(std::string_view key) noexcept {
  if (key.size() != 36) return false;
  for (std::size_t i = 0; i < key.size(); ++i) {
    const bool dash = std::find(kDashes.begin(), kDashes.end(), i) != kDashes.end();
    if (dash) {
      if (key[i] != '-') return false;
    } else if (!std::isxdigit(static_cast<unsigned char>(key[i])) ||
               std::isupper(static_cast<unsigned char>(key[i]))) {
      return false;
    }
  }
  return true;
}

std::optional<std::string> key_to_decimal(std::string_view uuid_key) {
  if (!is_uuid_key(uuid_key)) return std::nullopt;
  u128 value = 0;
  for (char c : uuid_key) {
    if (c == '-') continue;
    const unsigned digit = std::isdigit(static_cast<unsigned char>(c)) ? static_cast<unsigned>(c - '0')
                                                                        : static_cast<unsigned>(c - 'a' + 10);
    value = (value << 4) | digit;
  }
  if (value == 0) return std::string("0");
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<std::string> decimal_to_key(std::string_view decimal) {
  if (decimal.empty() || decimal.size() > 39) return std::nullopt;
  u128 value = 0;
  const u128 max = ~static_cast<u128>(0);
  for (char c : decimal) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    const auto digit = static_cast<unsigned>(c - '0');
    if (value > (max - digit) / 10) return std::nullopt;
    value = value * 10 + digit;
  }
  return format_uuid(value);
}

}  // namespace semreg
