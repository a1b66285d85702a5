#pragma once

#include <cstdint>
#include <string_view>

namespace tgpo {

constexpr std::uint64_t fnv1a64(std::string_view data,
                                std::uint64_t seed = 0xCBF29CE484222325ull) {
  std::uint64_t h = seed;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace tgpo
