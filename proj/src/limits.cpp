#include "bratteli/limits.hpp"

#include <cstdlib>
#include <string>

namespace bratteli {

std::size_t max_enumeration_width() {
  constexpr std::size_t kDefault = 16;
  const char* env = std::getenv("BRATTELI_MAX_WIDTH");
  if (env == nullptr || *env == '\0') return kDefault;
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(env, &pos);
    if (pos != std::string(env).size() || v == 0) return kDefault;
    return static_cast<std::size_t>(v);
  } catch (...) {
    return kDefault;
  }
}

}  // namespace bratteli
