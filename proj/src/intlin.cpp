#include "prophecke/intlin.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace prophecke {

IMat IMat::identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat IMat::mul(const IMat& o) const {
  if (cols != o.rows) throw std::invalid_argument("matrix shape mismatch");
  IMat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      long long x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

namespace {

void row_swap(IMat& m, IMat& u, int i, int j) {
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
  for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
}

void col_swap(IMat& m, IMat& v, int i, int j) {
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
  for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
}

void row_addmul(IMat& m, IMat& u, int dst, int src, long long f) {
  for (int c = 0; c < m.cols; ++c) m.at(dst, c) += f * m.at(src, c);
  for (int c = 0; c < u.cols; ++c) u.at(dst, c) += f * u.at(src, c);
}

void col_addmul(IMat& m, IMat& v, int dst, int src, long long f) {
  for (int r = 0; r < m.rows; ++r) m.at(r, dst) += f * m.at(r, src);
  for (int r = 0; r < v.rows; ++r) v.at(r, dst) += f * v.at(r, src);
}

void row_negate(IMat& m, IMat& u, int i) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
  for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
}

}  // namespace

SmithResult smith_normal_form(const IMat& input) {
  SmithResult res;
  res.d = input;
  res.u = IMat::identity(input.rows);
  res.v = IMat::identity(input.cols);
  IMat& d = res.d;
  IMat& u = res.u;
  IMat& v = res.v;

  int t = 0;
  int n = std::min(d.rows, d.cols);
  while (t < n) {
    // find a pivot (smallest nonzero absolute value) in the remaining block
    int pi = -1, pj = -1;
    long long best = 0;
    for (int i = t; i < d.rows; ++i)
      for (int j = t; j < d.cols; ++j) {
        long long x = std::llabs(d.at(i, j));
        if (x != 0 && (pi < 0 || x < best)) {
          best = x;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    row_swap(d, u, t, pi);
    col_swap(d, v, t, pj);

    bool clean = true;
    for (int i = t + 1; i < d.rows; ++i) {
      long long f = d.at(i, t) / d.at(t, t);
      if (f != 0) row_addmul(d, u, i, t, -f);
      if (d.at(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < d.cols; ++j) {
      long long f = d.at(t, j) / d.at(t, t);
      if (f != 0) col_addmul(d, v, j, t, -f);
      if (d.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // remainders left, pick a new pivot

    // divisibility: d(t,t) must divide everything below-right
    bool fixed = false;
    for (int i = t + 1; i < d.rows && !fixed; ++i)
      for (int j = t + 1; j < d.cols && !fixed; ++j)
        if (d.at(i, j) % d.at(t, t) != 0) {
          row_addmul(d, u, t, i, 1);
          fixed = true;
        }
    if (fixed) continue;

    if (d.at(t, t) < 0) row_negate(d, u, t);
    ++t;
  }
  for (int i = 0; i < n; ++i)
    if (d.at(i, i) != 0) res.divisors.push_back(d.at(i, i));
  return res;
}

bool solve_rational(const IMat& a, const std::vector<long long>& b,
                    std::vector<long long>& num, long long& den) {
  // fraction-free Gaussian elimination on [A | b]
  int rows = a.rows, cols = a.cols;
  std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols + 1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m[i][j] = a.at(i, j);
    m[i][cols] = b[i];
  }
  std::vector<int> pivot_row(cols, -1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[r], m[pr]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      long long g = std::gcd(m[i][c], m[r][c]);
      long long fi = m[r][c] / g, fr = m[i][c] / g;
      for (int j = 0; j <= cols; ++j) m[i][j] = m[i][j] * fi - m[r][j] * fr;
    }
    pivot_row[c] = r;
    ++r;
  }
  // consistency: zero rows must have zero rhs
  for (int i = r; i < rows; ++i)
    if (m[i][cols] != 0) return false;
  num.assign(cols, 0);
  den = 1;
  for (int c = 0; c < cols; ++c) {
    if (pivot_row[c] < 0) {
      // dependent column: caller requires independent columns
      bool col_zero = true;
      for (int i = 0; i < rows; ++i)
        if (a.at(i, c) != 0) col_zero = false;
      if (!col_zero) throw std::invalid_argument("solve_rational: dependent columns");
      continue;
    }
    long long piv = m[pivot_row[c]][c];
    long long g = std::gcd(den, std::llabs(piv));
    den = den / g * std::llabs(piv);
  }
  for (int c = 0; c < cols; ++c) {
    if (pivot_row[c] < 0) {
      num[c] = 0;
      continue;
    }
    long long piv = m[pivot_row[c]][c];
    long long rhs = m[pivot_row[c]][cols];
    num[c] = rhs * (den / piv);
  }
  return true;
}

}  // namespace prophecke
