#ifndef PROPHECKE_AFFINE_WEYL_HPP
#define PROPHECKE_AFFINE_WEYL_HPP

#include <optional>
#include <string>
#include <vector>

#include "prophecke/root_datum.hpp"

namespace prophecke {

// Affine root (alpha, r): alpha a signed root index of the datum, r in Z.
struct AffRoot {
  int root;  // signed root index
  int r;
  bool operator==(const AffRoot& o) const { return root == o.root && r == o.r; }
};

// Element u * e^lambda of the extended affine Weyl group W = Weyl x X_*(T).
struct WElt {
  Coord lam{};
  int u = 0;
  bool operator==(const WElt& o) const { return u == o.u && lam == o.lam; }
  bool operator!=(const WElt& o) const { return !(*this == o); }
  bool operator<(const WElt& o) const {
    return lam != o.lam ? lam < o.lam : u < o.u;
  }
};

// Simple affine root: (alpha_i, 0) for simple i, or (-alpha0_c, 1) per
// irreducible component c.
struct SimpleAffData {
  AffRoot aff;
  int reflection_u;   // Weyl index of s_alpha
  Coord coroot;       // coroot of the root direction
  std::string name;   // "s1".."sn" and "s0" (one per component: s0, s0'...)
};

// All W-level combinatorics of a root datum: the affine action, lengths,
// reduced words, the Omega decomposition, Bruhat order, the orientation
// character, distinguished coset representatives and F-positivity.
class AffineWeyl {
 public:
  explicit AffineWeyl(std::shared_ptr<const RootDatum> datum);

  const RootDatum& datum() const { return *datum_; }
  std::shared_ptr<const RootDatum> datum_ptr() const { return datum_; }

  static WElt identity() { return WElt{}; }
  WElt translation(const Coord& lam) const { return WElt{lam, 0}; }
  WElt finite(int u) const { return WElt{coord_zero(), u}; }
  WElt mult(const WElt& a, const WElt& b) const;
  WElt inverse(const WElt& a) const;

  int naff() const { return static_cast<int>(simple_aff_.size()); }
  const SimpleAffData& simple_aff(int i) const { return simple_aff_[i]; }
  WElt simple_reflection(int i) const;  // s_A for A in Pi_aff
  int aff_name_index(const std::string& name) const;  // -1 if unknown

  bool aff_root_positive(const AffRoot& a) const {
    return a.r > 0 || (a.r == 0 && datum_->is_positive(a.root));
  }
  AffRoot act(const WElt& w, const AffRoot& a) const;

  int length(const WElt& w) const;               // closed form
  int length_oracle(const WElt& w) const;        // direct inversion count
  // +1 if l(w s_A) = l(w) + 1, else -1.
  int descent(const WElt& w, int aff_idx) const;

  // Omega = W / W_aff as a finitely generated abelian group.
  struct OmegaClass {
    std::vector<long long> free;     // coordinates on the free generators
    std::vector<long long> torsion;  // coordinates mod torsion divisors
    bool operator==(const OmegaClass& o) const {
      return free == o.free && torsion == o.torsion;
    }
    bool operator<(const OmegaClass& o) const {
      return free != o.free ? free < o.free : torsion < o.torsion;
    }
    bool trivial() const;
  };
  OmegaClass omega_class(const Coord& lam) const;
  OmegaClass omega_class(const WElt& w) const { return omega_class(w.lam); }
  int n_torsion() const { return static_cast<int>(torsion_div_.size()); }
  int n_free() const { return nfree_; }
  long long torsion_divisor(int i) const { return torsion_div_[i]; }
  // Stored length-zero representative of a class.
  WElt omega_rep(const OmegaClass& c) const;
  // Length-zero generators corresponding to free/torsion quotient generators.
  const std::vector<WElt>& omega_generators() const { return omega_gen_rep_; }

  // w = omega * w_aff with a reduced word for the affine part.
  struct OmegaDecomposition {
    WElt omega;
    std::vector<int> word;  // indices into Pi_aff
  };
  OmegaDecomposition omega_decompose(const WElt& w) const;

  bool bruhat_leq(const WElt& a, const WElt& b) const;
  int epsilon_c(const WElt& w) const;  // orientation character, +-1

  bool is_distinguished(const WElt& d) const;
  // d = e^lambda * w with lambda dominant; requires d distinguished.
  std::pair<Coord, int> distinguished_decompose(const WElt& d) const;
  // Distinguished representative and finite part of the coset W_fin * w.
  std::pair<int, WElt> coset_decompose(const WElt& w) const;
  // All distinguished elements of length <= bound with ||lam||_inf <= box.
  std::vector<WElt> distinguished_upto(int max_len, int box) const;

  // F-positivity (finite part must lie in W_F).
  bool is_f_positive(const WElt& w, Facet f) const;
  bool is_strongly_f_positive(const Coord& lam, Facet f) const;
  bool coweight_f_positive(const Coord& lam, Facet f) const;

  // Length in the Levi subdatum (Phi_F, X_*): counts only Phi_F inversions.
  int length_levi(const WElt& w, Facet f) const;
  // (3.1): l(e^{mu-nu}) + l(e^nu) - l(e^mu) computed in the full datum equals
  // the same combination computed in the Levi datum.
  bool length_identity_levi(const Coord& mu, const Coord& nu, Facet f) const;

  // Enumeration of W elements within a coweight box (all finite parts).
  std::vector<WElt> elements_in_box(int box) const;

 private:
  int length_over_roots(const WElt& w, const std::vector<int>& pos_idx) const;
  void build_simple_aff();
  void build_omega();

  std::shared_ptr<const RootDatum> datum_;
  std::vector<SimpleAffData> simple_aff_;

  // Smith normal form data for X_*/(coroot lattice)
  IMat snf_u_;
  std::vector<long long> snf_div_;
  int snf_rank_ = 0;  // number of divisor rows
  int nfree_ = 0;
  std::vector<long long> torsion_div_;  // divisors > 1
  std::vector<int> torsion_rows_, free_rows_;
  std::vector<WElt> omega_gen_rep_;  // one per free gen, then one per torsion gen
};

}  // namespace prophecke

#endif
