#ifndef PROPHECKE_INTLIN_HPP
#define PROPHECKE_INTLIN_HPP

#include <vector>

namespace prophecke {

// Dense integer matrix, row major.
struct IMat {
  int rows = 0, cols = 0;
  std::vector<long long> a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  long long& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  long long at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  static IMat identity(int n);
  IMat mul(const IMat& o) const;
};

// Smith normal form: returns D diagonal with d1 | d2 | ... along with
// unimodular U (rows x rows) and V (cols x cols) such that U * A * V = D.
struct SmithResult {
  IMat d, u, v;
  std::vector<long long> divisors;  // nonzero diagonal entries d1 | d2 | ...
};
SmithResult smith_normal_form(const IMat& m);

// Solves A x = b over Q for A with independent columns; returns true and the
// rational solution (num[i] / den) if consistent.  Used for cone membership.
bool solve_rational(const IMat& a, const std::vector<long long>& b,
                    std::vector<long long>& num, long long& den);

}  // namespace prophecke

#endif
