// Monomial-matrix oracle for the extension of the extended Weyl group by
// T0/T1.  Elements of N(T)/T1 for SL_n and GL_n over a local field with
// residue field F_q are monomial matrices whose entries are pairs
// (unit in F_q^x, valuation): exact group arithmetic, no Hecke theory.
#ifndef PROPHECKE_TESTS_ORACLE_MATRIX_MODEL_HPP
#define PROPHECKE_TESTS_ORACLE_MATRIX_MODEL_HPP

#include <stdexcept>
#include <vector>

#include "prophecke/extended_group.hpp"
#include "prophecke/gf.hpp"

namespace prophecke::testing {

struct MonoMat {
  // column j holds its unique nonzero entry at row[j] with value
  // unit[j] * pi^val[j]
  int n = 0;
  std::vector<int> row, val;
  std::vector<Fel> unit;

  bool operator==(const MonoMat& o) const {
    return n == o.n && row == o.row && val == o.val && unit == o.unit;
  }
};

class MatrixModel {
 public:
  // group: "SL2", "SL3" (coroot-basis coordinates) or "GL2", "GL3"
  // (standard-basis coordinates)
  MatrixModel(const std::string& group, const GF& field)
      : field_(field) {
    if (group == "SL2") {
      n_ = 2;
      sl_ = true;
    } else if (group == "SL3") {
      n_ = 3;
      sl_ = true;
    } else if (group == "GL2") {
      n_ = 2;
      sl_ = false;
    } else if (group == "GL3") {
      n_ = 3;
      sl_ = false;
    } else {
      throw std::invalid_argument("matrix model supports SL2/SL3/GL2/GL3 only");
    }
  }

  MonoMat identity() const {
    MonoMat m;
    m.n = n_;
    m.row.resize(n_);
    m.val.assign(n_, 0);
    m.unit.assign(n_, field_.one);
    for (int j = 0; j < n_; ++j) m.row[j] = j;
    return m;
  }

  MonoMat mul(const MonoMat& a, const MonoMat& b) const {
    MonoMat r = identity();
    for (int j = 0; j < n_; ++j) {
      int i = b.row[j];
      r.row[j] = a.row[i];
      r.val[j] = a.val[i] + b.val[j];
      r.unit[j] = field_.mul(a.unit[i], b.unit[j]);
    }
    return r;
  }

  MonoMat diag_units(const std::vector<Fel>& u) const {
    MonoMat m = identity();
    m.unit = u;
    return m;
  }

  MonoMat diag_pi(const std::vector<int>& v) const {
    MonoMat m = identity();
    m.val = v;
    return m;
  }

  // Tits lift of the simple reflection s_i: antidiagonal block (0 1 / -1 0)
  // in rows/columns i, i+1.
  MonoMat simple_lift(int i) const {
    MonoMat m = identity();
    m.row[i] = i + 1;
    m.row[i + 1] = i;
    m.unit[i] = field_.from_int(-1);  // column i carries -1 at row i+1
    m.unit[i + 1] = field_.one;
    return m;
  }

  // Diagonal exponents of a coweight in the model coordinates.
  std::vector<int> coweight_exponents(const Coord& lam) const {
    std::vector<int> e(n_, 0);
    if (sl_) {
      for (int j = 0; j + 1 < n_; ++j) {
        e[j] += lam[j];
        e[j + 1] -= lam[j];
      }
    } else {
      for (int j = 0; j < n_; ++j) e[j] = lam[j];
    }
    return e;
  }

  // Image of a TildeElt under the model: t * n(u) * lam(pi^{-1}).
  MonoMat of(const ExtendedGroup& g, const TildeElt& x) const {
    // torus part
    std::vector<Fel> units(n_, field_.one);
    auto texp = coweight_exponents(x.t);  // additive dlog coordinates
    for (int j = 0; j < n_; ++j) units[j] = field_.gpow(texp[j]);
    MonoMat m = diag_units(units);
    // finite part along a reduced word
    for (int i : g.datum().weyl().word(x.u)) m = mul(m, simple_lift(i));
    // splitting: lam(pi^{-1}) = diag(pi^{-e_j})
    auto lexp = coweight_exponents(x.lam);
    std::vector<int> vals(n_);
    for (int j = 0; j < n_; ++j) vals[j] = -lexp[j];
    return mul(m, diag_pi(vals));
  }

 private:
  const GF& field_;
  int n_ = 0;
  bool sl_ = false;
};

}  // namespace prophecke::testing

#endif
