#pragma once

#include <cstdio>
#include <string>

namespace nlc::detail {

/// Shortest round-trippable-enough decimal form used in every emitted file.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace nlc::detail
