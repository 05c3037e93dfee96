#pragma once

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <string>

#include "lavrentiev/field.hpp"

namespace lavrentiev {

/// 17 significant digits; round-trips every double.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class Tag>
void write_field_csv(std::ostream& os, const Array2D<Tag>& f, std::size_t nx, std::size_t nt, std::size_t n_gamma) {
  os << "# nx=" << nx << " nt=" << nt << " N=" << n_gamma << '\n';
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (std::size_t c = 0; c < f.cols(); ++c) {
      if (c) os << ',';
      os << format_double(f(r, c));
    }
    os << '\n';
  }
}

} // namespace lavrentiev
