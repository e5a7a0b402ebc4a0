#ifndef PROPHECKE_EXTENDED_GROUP_HPP
#define PROPHECKE_EXTENDED_GROUP_HPP

#include <memory>
#include <vector>

#include "prophecke/affine_weyl.hpp"
#include "prophecke/gf.hpp"

namespace prophecke {

// Element of the extension 0 -> T0/T1 -> W~ -> W -> 0, in the normal form
// t * n(u) * s(lam): t a torus tuple in (Z/(q-1))^rank, n(u) the Tits lift of
// the finite part, s the splitting of the coweight lattice.
struct TildeElt {
  Coord t{};
  Coord lam{};
  int u = 0;
  bool operator==(const TildeElt& o) const {
    return t == o.t && lam == o.lam && u == o.u;
  }
  bool operator!=(const TildeElt& o) const { return !(*this == o); }
  bool operator<(const TildeElt& o) const {
    if (lam != o.lam) return lam < o.lam;
    if (u != o.u) return u < o.u;
    return t < o.t;
  }
};

// Character of T0/T1 = (F_q^x)^rank written additively: a tuple of exponents
// xi with xi(t) = ghat^(sum xi_i t_i), ghat a fixed generator of mu_{q-1}.
struct TorusChar {
  Coord a{};
  bool operator==(const TorusChar& o) const { return a == o.a; }
  bool operator<(const TorusChar& o) const { return a < o.a; }
};

class ExtendedGroup {
 public:
  explicit ExtendedGroup(std::shared_ptr<const AffineWeyl> weyl);

  const AffineWeyl& aw() const { return *weyl_; }
  const RootDatum& datum() const { return weyl_->datum(); }
  std::shared_ptr<const AffineWeyl> aw_ptr() const { return weyl_; }
  int modulus() const { return modulus_; }  // q - 1

  static TildeElt identity() { return TildeElt{}; }
  TildeElt torus(const Coord& t) const;
  TildeElt splitting(const Coord& lam) const { return TildeElt{coord_zero(), lam, 0}; }
  TildeElt tits_lift(int u) const { return TildeElt{coord_zero(), coord_zero(), u}; }
  TildeElt lift(const WElt& w) const { return TildeElt{coord_zero(), w.lam, w.u}; }
  TildeElt lift_affine(int aff_idx) const;  // n_A for A in Pi_aff
  // Lift of the reflection at a positive root within its root-SL2 coset.
  TildeElt root_reflection_lift(int pos_root_idx) const;
  WElt project(const TildeElt& a) const { return WElt{a.lam, a.u}; }
  bool is_torus(const TildeElt& a) const { return a.u == 0 && is_zero(a.lam); }

  TildeElt mult(const TildeElt& a, const TildeElt& b) const;
  TildeElt inverse(const TildeElt& a) const;
  TildeElt conjugate(const TildeElt& g, const TildeElt& x) const {
    return mult(mult(g, x), inverse(g));
  }
  Coord cocycle(int u, int v) const;  // n(u) n(v) = c(u,v) n(uv)

  int length(const TildeElt& a) const { return weyl_->length(project(a)); }
  Coord torus_reduce(const Coord& t) const;
  Coord torus_apply(int u, const Coord& t) const {
    return datum().torus_apply(u, t, modulus_ == 0 ? 1 : modulus_);
  }
  // alpha_v(-1) in additive torus coordinates.
  Coord minus_one_coweight(const Coord& coroot) const;

  // T_A for A = (alpha, r): the image of the coroot direction in T0/T1.
  const std::vector<Coord>& subtorus(int aff_idx) const { return sub_t_[aff_idx]; }
  // (q-1)/|T_A|, the multiplicity in front of the subtorus sum in the
  // quadratic relation.
  int subtorus_scale(int aff_idx) const { return sub_scale_[aff_idx]; }
  bool char_trivial_on_subtorus(const TorusChar& xi, int aff_idx) const;
  bool char_trivial_on_coroot(const TorusChar& xi, const Coord& coroot) const;

  std::vector<TorusChar> characters() const;  // all (q-1)^rank, lex order
  // xi evaluated at t inside a field containing mu_{q-1} (field.q() - 1 must
  // be divisible by q - 1).
  Fel char_value(const GF& field, const TorusChar& xi, const Coord& t) const;

  // Number of torus points (q-1)^rank.
  long long torus_size() const;
  std::vector<Coord> torus_points() const;

  // Factorization tau_w = tau_{t} tau_{omega} tau_{n_{A_1}} ... tau_{n_{A_k}}
  // with lengths additive along the chain.
  struct Factorization {
    Coord t;
    TildeElt omega;            // canonical lift of the Omega part
    std::vector<int> letters;  // indices into Pi_aff
  };
  Factorization factor(const TildeElt& w) const;

  // Length-zero lifts generating Omega~ together with the torus.
  const std::vector<TildeElt>& omega_tilde_generators() const { return omega_gens_; }

  // Total order refining length, used for serialized output.
  bool canonical_less(const TildeElt& a, const TildeElt& b) const;

 private:
  Coord rmul_gen(Coord t, int& u, int gen_i) const;

  std::shared_ptr<const AffineWeyl> weyl_;
  int modulus_;
  std::vector<Coord> theta_;            // alpha_v_i(-1) per simple root
  std::vector<Coord> cocycle_table_;    // |W|^2 torus values
  std::vector<std::vector<Coord>> sub_t_;
  std::vector<int> sub_scale_;
  std::vector<TildeElt> omega_gens_;
  std::vector<TildeElt> aff_lift_;
};

}  // namespace prophecke

#endif
