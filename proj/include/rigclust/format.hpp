#pragma once

#include <cstdio>
#include <string>

namespace rigclust {

/// Round-trippable, locale-independent rendering used in every output file.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace rigclust
