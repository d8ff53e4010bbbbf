#include "influx/errors.hpp"

#include <cstdlib>
#include <cstring>

namespace influx {

bool assertions_enabled() {
  static const bool enabled = [] {
    const char* v = std::getenv("INFLUX_ASSERT");
    return v != nullptr && std::strcmp(v, "1") == 0;
  }();
  return enabled;
}

}  // namespace influx
