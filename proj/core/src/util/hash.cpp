#include "biseld/util/hash.hpp"

#include <fmt/format.h>

namespace biseld::util {

void Fnv1a::update(std::string_view bytes) {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
}

std::string Fnv1a::hex() const { return fmt::format("{:016x}", state_); }

std::string content_hash(std::string_view bytes) {
  Fnv1a h;
  h.update(bytes);
  return h.hex();
}

}  // namespace biseld::util
