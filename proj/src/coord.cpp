#include "prophecke/coord.hpp"

namespace prophecke {

std::string coord_str(const Coord& a, int rank) {
  std::string s = "(";
  for (int i = 0; i < rank; ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

}  // namespace prophecke
