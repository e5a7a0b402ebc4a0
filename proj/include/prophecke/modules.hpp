#ifndef PROPHECKE_MODULES_HPP
#define PROPHECKE_MODULES_HPP

#include <cstdint>
#include <random>

#include "prophecke/bernstein.hpp"

namespace prophecke {

// Dense matrix over a small finite field, row major; vectors are rows and
// right modules act by right multiplication.
struct FMat {
  int rows = 0, cols = 0;
  std::vector<Fel> a;

  FMat() = default;
  FMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  Fel& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  Fel at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  bool operator==(const FMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  bool is_zero() const {
    for (Fel x : a)
      if (x != 0) return false;
    return true;
  }
  static FMat identity(const GF&, int n);
};

FMat fmul(const GF& f, const FMat& x, const FMat& y);
FMat fadd(const GF& f, const FMat& x, const FMat& y);
FMat fscale(const GF& f, const FMat& x, Fel c);
bool fnilpotent(const GF& f, const FMat& x);
bool finvertible(const GF& f, const FMat& x);
int frank(const GF& f, FMat x);
// Solution space dimension of the homogeneous system rows * x^T = 0 given as
// a stacked matrix acting on row vectors: dim ker { v : v * m^T = 0 } style
// helpers are provided through the two calls used below.
int fkernel_dim(const GF& f, const FMat& m);                    // right kernel
std::vector<std::vector<Fel>> fkernel_basis(const GF& f, FMat m);  // right kernel basis
// dim of { X : a_i X = X b_i for all i } for square a_i (n x n), b_i (m x m).
int intertwiner_dim(const GF& f, const std::vector<FMat>& as, const std::vector<FMat>& bs);

// Character of the affine subalgebra: a torus character plus a value in
// {0, -1} at each simple affine reflection lift n_A.
struct AffineChar {
  TorusChar xi;
  std::vector<int8_t> val;  // entries 0 or -1, indexed by Pi_aff
  bool operator==(const AffineChar& o) const { return xi == o.xi && val == o.val; }
  bool operator<(const AffineChar& o) const {
    return !(xi == o.xi) ? xi < o.xi : val < o.val;
  }
};

// Characters of the affine subalgebra and the Omega action on them.
class CharacterTheory {
 public:
  explicit CharacterTheory(std::shared_ptr<const ExtendedGroup> grp);

  const ExtendedGroup& grp() const { return *grp_; }
  std::shared_ptr<const ExtendedGroup> grp_ptr() const { return grp_; }

  std::vector<AffineChar> all() const;
  AffineChar trivial_char() const;
  AffineChar sign_char() const;
  bool valid(const AffineChar& x) const;
  bool is_triv_or_sign_twist(const AffineChar& x) const;
  AffineChar iota_c_twist(const AffineChar& x) const;  // X o iota_C

  // omega . X = X(tau_{omega^{-1}} . tau_omega); factors through the Omega
  // quotient, the torus acting trivially.
  AffineChar act(const TildeElt& omega, const AffineChar& x) const;

  // X evaluated at tau_w for w in the affine part (trivial Omega class).
  Fel value(const GF& f, const AffineChar& x, const TildeElt& w) const;

  // Omega-bar bookkeeping: exponent coordinates on the quotient generators.
  int n_omega_gens() const { return static_cast<int>(grp_->omega_tilde_generators().size()); }
  long long omega_gen_order(int i) const;
  TildeElt omega_lift(const std::vector<long long>& e) const;

  struct Orbit {
    std::vector<AffineChar> elems;                   // sorted orbit
    std::vector<std::vector<long long>> path;        // lift(path[j]) . base = elems[j]
    AffineChar base;
    // stabilizer of base inside the exponent lattice Z^k (contains the
    // relation lattice), then the invariant factors of stabilizer/relations
    std::vector<std::vector<long long>> stab_basis;
    std::vector<std::vector<long long>> q_gens;      // exponents of quotient generators
    std::vector<long long> q_orders;                 // 0 = infinite
  };
  Orbit orbit_of(const AffineChar& x) const;

 private:
  std::shared_ptr<const ExtendedGroup> grp_;
};

// 1-dimensional sigma datum on the stabilizer quotient generators.
struct SigmaChar {
  std::vector<Fel> gen_val;  // one value per Orbit::q_gens entry
  bool operator==(const SigmaChar& o) const { return gen_val == o.gen_val; }
  bool operator<(const SigmaChar& o) const { return gen_val < o.gen_val; }
};

// Finite dimensional right module induced from (X, sigma): basis lines are
// cosets of the fixator, generators act by exact matrices over the module
// field (an extension of F_p large enough for all character values).
class InducedModule {
 public:
  InducedModule(std::shared_ptr<const CharacterTheory> theory,
                std::shared_ptr<const GF> field, CharacterTheory::Orbit orbit,
                SigmaChar sigma);

  int dim() const { return static_cast<int>(orbit_.elems.size()); }
  const GF& field() const { return *field_; }
  const CharacterTheory::Orbit& orbit() const { return orbit_; }
  const SigmaChar& sigma() const { return sigma_; }
  const AffineChar& line_char(int j) const { return orbit_.elems[j]; }

  FMat act_torus(const Coord& t) const;
  FMat act_letter(int aff_idx) const;
  FMat act_len0(const TildeElt& omega) const;
  FMat act_tau(const TildeElt& w) const;
  // a must live over a field embedding into the module field.
  FMat act(const HeckeP& alg, const HEltP& a) const;

  // sigma evaluated on an arbitrary element of the fixator.
  Fel sigma_value(const TildeElt& h) const;

  // Sampled module-axiom check: act(a) act(b) == act(a b).
  bool verify_relations(std::mt19937_64& rng, int samples,
                        const HeckeP& alg) const;

 private:
  std::shared_ptr<const CharacterTheory> theory_;
  std::shared_ptr<const GF> field_;
  CharacterTheory::Orbit orbit_;
  SigmaChar sigma_;
  std::vector<TildeElt> coset_rep_;  // line j carries rep_j^{-1} . base
};

// Classification of the simple supersingular modules: one induced module per
// Omega-orbit of pairs (X, sigma) with X not a twist of the trivial or sign
// character.
struct ClassifiedModule {
  AffineChar orbit_rep;
  SigmaChar sigma;
  std::shared_ptr<InducedModule> module;
  bool supersingular = false;
  bool irreducible = false;
  std::map<Coord, Fel> z_character;  // z_lam scalars on the length-zero lattice
};

struct ClassifyOptions {
  std::vector<Fel> pi_scalars;  // values for the free Omega generators
};

// Minimal extension degree over F_q so that every torsion sigma equation is
// solvable; returns the field GF(p, s * e).
std::shared_ptr<GF> classification_field(const ExtendedGroup& grp);

std::vector<ClassifiedModule> classify(std::shared_ptr<const CharacterTheory> theory,
                                       std::shared_ptr<const GF> field,
                                       std::shared_ptr<const Bernstein> bern,
                                       const ClassifyOptions& opts);

// Supersingularity of a finite dimensional module: every ideal generator acts
// nilpotently.
bool is_supersingular_module(const InducedModule& m, const Bernstein& bern,
                             const HeckeP& alg_mod);

// All affine characters contained in a list of generator matrices, with
// multiplicities: simultaneous eigen-line search.
std::vector<std::pair<AffineChar, int>> contained_affine_characters(
    const CharacterTheory& theory, const GF& f,
    const std::vector<FMat>& torus_gens, const std::vector<FMat>& letter_mats);

// Weight characters (chibar, Pi_chi) of the finite Hecke subalgebra.
struct WeightChar {
  TorusChar chibar;
  uint32_t pi_chi = 0;
};
uint32_t pi_chibar_mask(const ExtendedGroup& grp, const TorusChar& chibar);
std::vector<WeightChar> all_weight_chars(const ExtendedGroup& grp);

// The cyclic right module chi tensor H over the finite subalgebra, realized
// sparsely on the distinguished-coset basis.
class WeightModule {
 public:
  WeightModule(std::shared_ptr<const HeckeP> alg, WeightChar chi);

  using Vec = std::map<TildeElt, Fel>;

  const WeightChar& chi() const { return chi_; }
  Facet facet() const { return Facet{chi_.pi_chi}; }
  Fel chi_value(const TildeElt& w0) const;  // on the finite part
  Vec generator() const;                    // 1 (x) 1
  Vec act(const Vec& v, const HEltP& h) const;
  bool equal(const Vec& a, const Vec& b) const { return a == b; }

 private:
  Vec reduce(const TildeElt& w, Fel c) const;

  std::shared_ptr<const HeckeP> alg_;
  WeightChar chi_;
};

}  // namespace prophecke

#endif
