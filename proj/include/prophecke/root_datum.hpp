#ifndef PROPHECKE_ROOT_DATUM_HPP
#define PROPHECKE_ROOT_DATUM_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prophecke/coord.hpp"
#include "prophecke/intlin.hpp"

namespace prophecke {

class RootDatum;

// Finite Weyl group with full multiplication / inversion / length / reduced
// word tables and the action on the coweight lattice and on the roots.
class WeylGroup {
 public:
  void build(const RootDatum& datum);

  int size() const { return static_cast<int>(mat_.size()); }
  int ngens() const { return ngens_; }
  int identity() const { return 0; }
  int mult(int a, int b) const { return mult_[a * size() + b]; }
  int inverse(int a) const { return inv_[a]; }
  int length(int a) const { return len_[a]; }
  int det(int a) const { return det_[a]; }
  const std::vector<int>& word(int a) const { return word_[a]; }
  int gen(int i) const { return gen_elt_[i]; }
  const CMat& matrix(int a) const { return mat_[a]; }
  Coord apply(int a, const Coord& v) const { return mat_[a].apply(v); }
  // Index of u acting on a signed root index (see RootDatum root indexing).
  int root_image(int a, int signed_root) const {
    return root_perm_[a][signed_root];
  }
  // Element with a given action matrix, or -1.
  int find(const CMat& m) const;

 private:
  int ngens_ = 0;
  std::vector<CMat> mat_;
  std::vector<int> mult_, inv_, len_, det_, gen_elt_;
  std::vector<std::vector<int>> word_;
  std::vector<std::vector<int>> root_perm_;
  std::map<CMat, int> index_;
};

// Standard facet: a subset of the simple roots (bit i <-> simple root i).
// The empty set is the chamber C, the full set the hyperspecial vertex x0.
struct Facet {
  uint32_t mask = 0;
  bool operator==(const Facet& o) const { return mask == o.mask; }
  bool operator<(const Facet& o) const { return mask < o.mask; }
};

enum class Sign : int { Plus = +1, Minus = -1 };
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

enum class DomOrder { Equal, Less, Greater, Incomparable };

// Based root datum (Phi, X^*(T), coroots, X_*(T)) together with q, the finite
// Weyl group tables, facets and Weyl chambers.  Coweights are integer vectors
// in a fixed basis of X_*(T); roots are vectors in the dual basis so that the
// pairing is the dot product.
class RootDatum {
 public:
  // Catalog labels: SL2..SL4, GL1..GL4, PGL2..PGL4, B2, C2, G2, SL2xSL2.
  static std::shared_ptr<const RootDatum> build(const std::string& label, int q);
  // Generic constructor used by build() and for Levi subdata.
  RootDatum(std::string label, int q, int rank,
            std::vector<Coord> simple_roots, std::vector<Coord> simple_coroots);

  const std::string& label() const { return label_; }
  int q() const { return q_; }
  int p() const { return p_; }
  int rank() const { return rank_; }
  int nsimple() const { return static_cast<int>(simple_roots_.size()); }
  int npos() const { return static_cast<int>(pos_roots_.size()); }
  int ncomponents() const { return ncomp_; }
  bool irreducible() const { return ncomp_ == 1 && nsimple() > 0; }

  const Coord& simple_root(int i) const { return simple_roots_[i]; }
  const Coord& simple_coroot(int i) const { return simple_coroots_[i]; }
  const Coord& pos_root(int i) const { return pos_roots_[i]; }
  const Coord& pos_coroot(int i) const { return pos_coroots_[i]; }
  const std::vector<int>& pos_expr(int i) const { return pos_expr_[i]; }
  int pos_height(int i) const { return pos_height_[i]; }
  long long cartan(int i, int j) const { return dot(simple_coroots_[i], simple_roots_[j]); }

  // Signed root indexing: r in [0, npos) is pos_root(r); r in [npos, 2npos)
  // is -pos_root(r - npos).
  int nroots() const { return 2 * npos(); }
  Coord root(int signed_idx) const;
  Coord coroot(int signed_idx) const;
  bool is_positive(int signed_idx) const { return signed_idx < npos(); }
  int negate_root(int signed_idx) const {
    return signed_idx < npos() ? signed_idx + npos() : signed_idx - npos();
  }
  int root_index(const Coord& alpha) const;  // -1 if not a root

  int component_of_simple(int i) const { return comp_of_simple_[i]; }
  int component_of_pos(int i) const { return comp_of_pos_[i]; }
  // Highest root of a component (index into positive roots).
  int highest_root(int comp) const { return highest_[comp]; }

  const WeylGroup& weyl() const { return weyl_; }
  long long pairing(const Coord& lambda, const Coord& alpha) const { return dot(lambda, alpha); }
  // Simple reflection s_alpha for any root (as Weyl group element index).
  int reflection(int signed_root) const;
  // Action of u on torus tuples (coordinates mod modulus).
  Coord torus_apply(int u, const Coord& t, int modulus) const;

  // Facets.
  Facet chamber_facet() const { return Facet{0}; }
  Facet vertex_facet() const { return Facet{(1u << nsimple()) - 1}; }
  std::vector<Facet> standard_facets() const;
  std::vector<int> facet_pos_roots(Facet f) const;  // indices of Phi_F^+
  bool pos_root_in_facet(int i, Facet f) const;
  const std::vector<int>& facet_weyl_elements(Facet f) const;  // W_F
  int facet_longest(Facet f) const;                            // w_F
  bool in_facet_weyl(int u, Facet f) const;

  // Weyl chambers C^sigma(F).
  bool chamber_contains(const Coord& lambda, Facet f, Sign sigma) const;
  bool dominant(const Coord& lambda) const {
    return chamber_contains(lambda, chamber_facet(), Sign::Plus);
  }
  // A lattice point strictly inside C^sigma(F).
  Coord chamber_interior(Facet f, Sign sigma) const;
  Coord strongly_dominant() const { return chamber_interior(chamber_facet(), Sign::Plus); }

  // W-orbit of a coweight (sorted, deterministic).
  std::vector<Coord> weyl_orbit(const Coord& lambda) const;
  // Unique dominant representative.
  Coord dominant_rep(const Coord& lambda) const;

  // Dominance order on dominant coweights: mu - lambda in the nonnegative
  // rational span of the simple coroots.
  DomOrder dominance_compare(const Coord& lambda, const Coord& mu) const;
  // The underlying cone-membership test, defined for arbitrary coweights.
  bool coroot_cone_member(const Coord& delta) const;

  // Hilbert basis of the dominant semigroup (Gordan generators), enumerated
  // within a sup-norm box and verified to regenerate the box.
  const std::vector<Coord>& dominant_hilbert_basis() const;

  // Levi subdatum attached to a facet: same lattice, root system Phi_F.
  struct Levi {
    std::shared_ptr<const RootDatum> datum;
    Facet facet;                    // in the parent
    std::vector<int> u_to_parent;   // Levi Weyl index -> parent Weyl index
    std::vector<int> u_from_parent; // parent index -> Levi index or -1
    std::vector<int> simple_to_parent;  // Levi simple root i -> parent simple index
  };
  Levi levi(Facet f) const;

 private:
  void close_roots();
  void build_components();

  std::string label_;
  int q_, p_, s_, rank_;
  std::vector<Coord> simple_roots_, simple_coroots_;
  std::vector<Coord> pos_roots_, pos_coroots_;
  std::vector<std::vector<int>> pos_expr_;
  std::vector<int> pos_height_;
  std::vector<int> comp_of_simple_, comp_of_pos_, highest_;
  int ncomp_ = 0;
  WeylGroup weyl_;
  std::map<Coord, int> root_idx_;
  mutable std::map<uint32_t, std::vector<int>> facet_elts_;
  mutable std::vector<Coord> hilbert_;
};

}  // namespace prophecke

#endif
