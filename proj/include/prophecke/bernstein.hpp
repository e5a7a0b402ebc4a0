#ifndef PROPHECKE_BERNSTEIN_HPP
#define PROPHECKE_BERNSTEIN_HPP

#include <tuple>

#include "prophecke/hecke.hpp"

namespace prophecke {

// Coweight in the extended lattice: a coweight plus a torus tuple, glued by
// the splitting.  e^{(lam, t)} corresponds to the basis index t * s(lam).
struct XtCoweight {
  Coord lam{};
  Coord t{};
  bool operator==(const XtCoweight& o) const { return lam == o.lam && t == o.t; }
  bool operator<(const XtCoweight& o) const {
    return lam != o.lam ? lam < o.lam : t < o.t;
  }
};

// Integral Bernstein maps B_F^sigma, central Bernstein functions, the
// Bernstein basis of the whole ring with its triangular base change, and the
// ideal of positive-length central generators.
class Bernstein {
 public:
  explicit Bernstein(std::shared_ptr<const HeckeOps> ops);

  const HeckeGen& alg() const { return ops_->alg(); }
  const ExtendedGroup& grp() const { return alg().grp(); }
  const HeckeOps& ops() const { return *ops_; }

  TildeElt translation(const XtCoweight& lt) const {
    return grp().mult(grp().torus(lt.t), grp().splitting(lt.lam));
  }
  int translation_length(const XtCoweight& lt) const {
    return grp().length(translation(lt));
  }

  // B_F^sigma on a plain or extended coweight (generic coefficients).
  HEltGen map(Facet f, Sign sigma, const Coord& lam) const;
  HEltGen map(Facet f, Sign sigma, const XtCoweight& lt) const;
  // Same value computed from a different (mu, nu) decomposition; used to test
  // independence of the choice.
  HEltGen map_alt(Facet f, Sign sigma, const Coord& lam, int pad) const;

  // Finite Weyl orbit in the extended coweight lattice.
  std::vector<XtCoweight> orbit(const XtCoweight& lt) const;
  // z_O = sum of B_C^+ over the orbit (generic mode).
  HEltGen central(const XtCoweight& lt) const;
  HEltGen central(const Coord& lam) const { return central(XtCoweight{lam, coord_zero()}); }
  // Orbit sum for an arbitrary facet and sign.
  HEltGen orbit_sum(Facet f, Sign sigma, const XtCoweight& lt) const;

  // The Bernstein basis element B_{x0}^+(w).
  HEltGen basis_elt(const TildeElt& w) const;
  // Triangular base change tau <-> Bernstein basis, generic and char-p.
  std::map<TildeElt, Laurent> to_basis(const HEltGen& a) const;
  HEltGen from_basis(const std::map<TildeElt, Laurent>& coeffs) const;
  std::map<TildeElt, Fel> to_basis_p(const HeckeP& alg_p, const HEltP& a) const;
  HEltP basis_elt_p(const HeckeP& alg_p, const TildeElt& w) const;
  HEltP central_p(const HeckeP& alg_p, const XtCoweight& lt) const;

  // Generators z_lam of the ideal of the positive-length part of the center:
  // the dominant Hilbert basis elements with l(e^lam) > 0.
  std::vector<Coord> ideal_generators() const;

 private:
  std::pair<Coord, Coord> decompose(Facet f, Sign sigma, const Coord& lam, int pad) const;

  std::shared_ptr<const HeckeOps> ops_;
  mutable std::mutex mu_;
  mutable std::map<TildeElt, HEltGen> basis_cache_;
  mutable std::map<std::tuple<uint32_t, int, Coord>, HEltGen> map_cache_;
};

// The pro-p Hecke algebra of the Levi subgroup attached to a standard facet,
// together with the index translation into the parent group and the
// positive/negative embeddings.
class LeviAlgebra {
 public:
  LeviAlgebra(std::shared_ptr<const ExtendedGroup> parent, Facet f);

  Facet facet() const { return facet_; }
  const ExtendedGroup& parent() const { return *parent_; }
  const ExtendedGroup& grp() const { return ops_->alg().grp(); }
  const HeckeGen& alg() const { return ops_->alg(); }
  const Bernstein& bernstein() const { return *bern_; }

  TildeElt to_parent(const TildeElt& w) const;
  TildeElt from_parent(const TildeElt& w) const;  // finite part must lie in W_F
  bool f_positive(const TildeElt& w) const;
  bool f_negative(const TildeElt& w) const;

  // j_F^+/j_F^-: embeddings of the positive/negative subalgebras.
  HEltGen embed_pos(const HEltGen& a) const;
  HEltGen embed_neg(const HEltGen& a) const;

  // _F B_{F'}^+ for a parent facet F' with Pi_{F'} contained in Pi_F.
  HEltGen levi_bernstein(Facet parent_fprime, const XtCoweight& lt) const;

 private:
  HEltGen embed(const HEltGen& a, bool positive) const;

  std::shared_ptr<const ExtendedGroup> parent_;
  Facet facet_;
  RootDatum::Levi levi_;
  std::shared_ptr<const ExtendedGroup> sub_;
  std::shared_ptr<HeckeOps> ops_;
  std::shared_ptr<Bernstein> bern_;
};

}  // namespace prophecke

#endif
