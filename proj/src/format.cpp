#include "edgerent/format.hpp"

#include <cmath>
#include <cstdio>

namespace edgerent {

std::string format_g12(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace edgerent
