#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace semreg {

// Registry keys are lowercase UUID strings (8-4-4-4-12 hex, version 4
// layout). They are produced from a per-registry seed and a monotonically
// increasing sequence number so a registry restored from a snapshot keeps
// assigning fresh keys deterministically.
class KeyGenerator {
 public:
  explicit KeyGenerator(std::uint64_t seed = 0, std::uint64_t sequence = 0) : seed_(seed), sequence_(sequence) {}

  std::string next();

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t sequence() const noexcept { return sequence_; }

 private:
  std::uint64_t seed_;
  std::uint64_t sequence_;
};

bool is_uuid_key(std::string_view key) noexcept;

// Ontology-side encoding of a key: tModelKey is decimal-typed, so the 128-bit
// value of the UUID is written as an unsigned decimal integer.
std::optional<std::string> key_to_decimal(std::string_view uuid_key);
std::optional<std::string> decimal_to_key(std::string_view decimal);

}  // namespace semreg
