#pragma once

#include <bit>
#include <cstdint>
#include <string_view>

namespace mht {

/// 64-bit FNV-1a. Numbers are fed as little-endian byte sequences so digests
/// are identical across hosts.
class Fnv1a {
public:
  Fnv1a& add_byte(std::uint8_t b) {
    state_ ^= b;
    state_ *= 0x100000001b3ULL;
    return *this;
  }
  Fnv1a& add(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) add_byte(static_cast<std::uint8_t>(x >> (8 * i)));
    return *this;
  }
  Fnv1a& add(double x) { return add(std::bit_cast<std::uint64_t>(x)); }
  Fnv1a& add(std::string_view s) {
    add(static_cast<std::uint64_t>(s.size()));
    for (char c : s) add_byte(static_cast<std::uint8_t>(c));
    return *this;
  }
  std::uint64_t value() const { return state_; }

private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace mht
