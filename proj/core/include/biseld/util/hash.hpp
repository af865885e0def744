#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace biseld::util {

/// 64-bit FNV-1a; used for manifest content hashes, not for security.
class Fnv1a {
 public:
  void update(std::string_view bytes);
  std::uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string content_hash(std::string_view bytes);

}  // namespace biseld::util
