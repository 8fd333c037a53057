#pragma once

#include <cstdio>
#include <span>
#include <string>

namespace garchlim::csv {

// Shortest representation that round-trips a double; output is locale-free
// and stable across runs, which keeps emitted files bit-identical.
inline std::string fmt(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  return buf;
}

inline std::string join(std::span<const double> values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += fmt(values[i]);
  }
  return out;
}

}  // namespace garchlim::csv
