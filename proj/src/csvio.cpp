#include "sshqt/csvio.hpp"

#include <cstdio>

namespace sshqt {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace sshqt
