#include "stoch/errors.hpp"

#include <cstdlib>
#include <string>

namespace stoch {

int capacity_limit(int fallback) {
  const char* raw = std::getenv("CONTINGENCY_MAX_N");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value <= fallback) return fallback;
  return static_cast<int>(value);
}

void require_capacity(int n, int fallback, const char* what) {
  const int limit = capacity_limit(fallback);
  if (n > limit) {
    throw CapacityError(std::string(what) + ": n = " + std::to_string(n) + " exceeds the limit " +
                        std::to_string(limit) + " (set CONTINGENCY_MAX_N to raise it)");
  }
}

}  // namespace stoch
