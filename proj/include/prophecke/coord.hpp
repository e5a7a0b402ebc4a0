#ifndef PROPHECKE_COORD_HPP
#define PROPHECKE_COORD_HPP

#include <array>
#include <cstdint>
#include <string>

namespace prophecke {

// Lattices in this library have rank at most kMaxRank; vectors are stored in
// fixed-size arrays with unused coordinates zero, so they compare and hash as
// plain values.
constexpr int kMaxRank = 4;

using Coord = std::array<int, kMaxRank>;

inline Coord coord_zero() { return Coord{0, 0, 0, 0}; }

inline Coord operator+(const Coord& a, const Coord& b) {
  Coord r;
  for (int i = 0; i < kMaxRank; ++i) r[i] = a[i] + b[i];
  return r;
}

inline Coord operator-(const Coord& a, const Coord& b) {
  Coord r;
  for (int i = 0; i < kMaxRank; ++i) r[i] = a[i] - b[i];
  return r;
}

inline Coord operator-(const Coord& a) {
  Coord r;
  for (int i = 0; i < kMaxRank; ++i) r[i] = -a[i];
  return r;
}

inline Coord operator*(int c, const Coord& a) {
  Coord r;
  for (int i = 0; i < kMaxRank; ++i) r[i] = c * a[i];
  return r;
}

inline long long dot(const Coord& a, const Coord& b) {
  long long s = 0;
  for (int i = 0; i < kMaxRank; ++i) s += static_cast<long long>(a[i]) * b[i];
  return s;
}

inline bool is_zero(const Coord& a) {
  for (int i = 0; i < kMaxRank; ++i)
    if (a[i] != 0) return false;
  return true;
}

inline int sup_norm(const Coord& a) {
  int m = 0;
  for (int i = 0; i < kMaxRank; ++i) m = std::max(m, a[i] < 0 ? -a[i] : a[i]);
  return m;
}

std::string coord_str(const Coord& a, int rank);

// Square matrix acting on Coord, rank x rank, row major in a fixed array.
struct CMat {
  std::array<int, kMaxRank * kMaxRank> m{};

  static CMat identity() {
    CMat r;
    for (int i = 0; i < kMaxRank; ++i) r.m[i * kMaxRank + i] = 1;
    return r;
  }
  int at(int i, int j) const { return m[i * kMaxRank + j]; }
  int& at(int i, int j) { return m[i * kMaxRank + j]; }

  Coord apply(const Coord& v) const {
    Coord r{};
    for (int i = 0; i < kMaxRank; ++i) {
      long long s = 0;
      for (int j = 0; j < kMaxRank; ++j) s += static_cast<long long>(at(i, j)) * v[j];
      r[i] = static_cast<int>(s);
    }
    return r;
  }
  CMat mul(const CMat& o) const {
    CMat r;
    for (int i = 0; i < kMaxRank; ++i)
      for (int j = 0; j < kMaxRank; ++j) {
        long long s = 0;
        for (int k = 0; k < kMaxRank; ++k)
          s += static_cast<long long>(at(i, k)) * o.at(k, j);
        r.at(i, j) = static_cast<int>(s);
      }
    return r;
  }
  bool operator==(const CMat& o) const { return m == o.m; }
  bool operator<(const CMat& o) const { return m < o.m; }
};

}  // namespace prophecke

#endif
