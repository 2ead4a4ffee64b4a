#pragma once

#include <cstdio>
#include <string>

namespace rotdim {

/// Fixed 17-significant-digit rendering; round-trips every finite double.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace rotdim
