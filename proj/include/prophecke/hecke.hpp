#ifndef PROPHECKE_HECKE_HPP
#define PROPHECKE_HECKE_HPP

#include <map>
#include <mutex>
#include <stdexcept>

#include "prophecke/extended_group.hpp"
#include "prophecke/laurent.hpp"

namespace prophecke {

struct ModeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised when a coefficient fails the Z[q] certificate during specialization.
struct IntegralityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coefficient ring for the generic mode: Z[v, v^-1] with q = v^2.
struct RingGeneric {
  using El = Laurent;
  El zero() const { return Laurent(); }
  El one() const { return Laurent::of_int(1); }
  El of_int(long long n) const { return Laurent::of_int(n); }
  bool is_zero(const El& a) const { return a.is_zero(); }
  El add(const El& a, const El& b) const { return a + b; }
  El sub(const El& a, const El& b) const { return a - b; }
  El neg(const El& a) const { return -a; }
  El mul(const El& a, const El& b) const { return a * b; }
  El q_shift(const El& a, int k) const { return a.shifted(2 * k); }  // a * q^k
  bool invertible_q() const { return true; }
};

// Coefficient ring for the characteristic-p mode: a finite field of
// characteristic p, in which q acts as zero.
struct RingCharP {
  const GF* field = nullptr;
  using El = Fel;
  El zero() const { return GF::zero; }
  El one() const { return GF::one; }
  El of_int(long long n) const { return field->from_int(n); }
  bool is_zero(const El& a) const { return a == GF::zero; }
  El add(const El& a, const El& b) const { return field->add(a, b); }
  El sub(const El& a, const El& b) const { return field->sub(a, b); }
  El neg(const El& a) const { return field->neg(a); }
  El mul(const El& a, const El& b) const { return field->mul(a, b); }
  El q_shift(const El& a, int k) const {
    if (k > 0) return GF::zero;  // q = 0 in characteristic p
    if (k == 0) return a;
    throw ModeError("q is not invertible in characteristic p");
  }
  bool invertible_q() const { return false; }
};

// Test hook: when nonzero, corrupts the quadratic relation multiplicity, so
// the verification suite must detect the fault.
extern int g_fault_quadratic;

// Sparse Hecke algebra element: finitely supported map from basis indices to
// coefficients, with no stored zeros.
template <class R>
using HTerms = std::map<TildeElt, typename R::El>;

// The pro-p Iwahori-Hecke algebra of an extended group in one coefficient
// mode.  Multiplication decomposes the right factor through the torus, the
// length-zero part and a reduced affine word, applying braid steps and the
// quadratic relation tau_{n_A}^2 = q tau_{n_A^2} + c_A tau_{n_A}, where
// c_A = ((q-1)/|T_A|) * sum_{t in T_A} tau_t.
template <class R>
class Hecke {
 public:
  using El = HTerms<R>;
  using C = typename R::El;

  Hecke(std::shared_ptr<const ExtendedGroup> grp, R ring)
      : grp_(std::move(grp)), ring_(std::move(ring)) {}

  const ExtendedGroup& grp() const { return *grp_; }
  std::shared_ptr<const ExtendedGroup> grp_ptr() const { return grp_; }
  const R& ring() const { return ring_; }

  El zero() const { return {}; }
  El one() const { return tau(ExtendedGroup::identity()); }
  El tau(const TildeElt& w) const {
    El e;
    e.emplace(w, ring_.one());
    return e;
  }
  El tau(const TildeElt& w, const C& c) const {
    El e;
    if (!ring_.is_zero(c)) e.emplace(w, c);
    return e;
  }

  bool is_zero(const El& a) const { return a.empty(); }
  bool equal(const El& a, const El& b) const { return a == b; }

  void add_term(El& a, const TildeElt& w, const C& c) const {
    if (ring_.is_zero(c)) return;
    auto [it, fresh] = a.emplace(w, c);
    if (!fresh) {
      it->second = ring_.add(it->second, c);
      if (ring_.is_zero(it->second)) a.erase(it);
    }
  }
  El add(const El& a, const El& b) const {
    El r = a;
    for (const auto& [w, c] : b) add_term(r, w, c);
    return r;
  }
  El sub(const El& a, const El& b) const {
    El r = a;
    for (const auto& [w, c] : b) add_term(r, w, ring_.neg(c));
    return r;
  }
  El scale(const El& a, const C& c) const {
    El r;
    for (const auto& [w, x] : a) add_term(r, w, ring_.mul(x, c));
    return r;
  }
  El neg(const El& a) const { return scale(a, ring_.neg(ring_.one())); }

  // a * tau_t for a torus element.
  El rmul_torus(const El& a, const Coord& t) const {
    El r;
    TildeElt tt = grp_->torus(t);
    for (const auto& [w, c] : a) add_term(r, grp_->mult(w, tt), c);
    return r;
  }
  // a * tau_x for a length-zero x.
  El rmul_len0(const El& a, const TildeElt& x) const {
    if (grp_->length(x) != 0) throw std::invalid_argument("element has positive length");
    El r;
    for (const auto& [w, c] : a) add_term(r, grp_->mult(w, x), c);
    return r;
  }
  // a * tau_{n_A} for a simple affine reflection.
  El rmul_letter(const El& a, int aff_idx) const {
    El r;
    TildeElt n = grp_->lift_affine(aff_idx);
    const auto& sub = grp_->subtorus(aff_idx);
    C scale_c = ring_.of_int(grp_->subtorus_scale(aff_idx) + g_fault_quadratic);
    for (const auto& [w, c] : a) {
      if (grp_->aw().descent(grp_->project(w), aff_idx) == +1) {
        add_term(r, grp_->mult(w, n), c);
      } else {
        add_term(r, grp_->mult(w, n), ring_.q_shift(c, 1));
        C cc = ring_.mul(c, scale_c);
        for (const Coord& t : sub) add_term(r, grp_->mult(w, grp_->torus(t)), cc);
      }
    }
    return r;
  }

  El rmul_tau(const El& a, const TildeElt& w) const {
    auto f = grp_->factor(w);
    El r = rmul_torus(a, f.t);
    r = rmul_len0(r, f.omega);
    for (int i : f.letters) r = rmul_letter(r, i);
    return r;
  }

  El mul(const El& a, const El& b) const {
    El r;
    for (const auto& [w, c] : b) {
      El part = rmul_tau(a, w);
      for (const auto& [x, d] : part) add_term(r, x, ring_.mul(d, c));
    }
    return r;
  }

  // Same product, but the reduced word of each right-factor index is chosen
  // by a caller-supplied descent picker (used to test word independence).
  template <class Picker>
  El mul_with_word_choice(const El& a, const El& b, Picker&& pick) const {
    El r;
    const AffineWeyl& aw = grp_->aw();
    for (const auto& [w, c] : b) {
      WElt x = grp_->project(w);
      auto cls = aw.omega_class(x);
      WElt omega = aw.omega_rep(cls);
      WElt rest = aw.mult(aw.inverse(omega), x);
      std::vector<int> rev;
      while (aw.length(rest) > 0) {
        std::vector<int> descents;
        for (int i = 0; i < aw.naff(); ++i)
          if (aw.descent(rest, i) == -1) descents.push_back(i);
        int i = descents[pick(descents.size())];
        rev.push_back(i);
        rest = aw.mult(rest, aw.simple_reflection(i));
      }
      std::vector<int> word(rev.rbegin(), rev.rend());
      TildeElt p = grp_->lift(omega);
      for (int i : word) p = grp_->mult(p, grp_->lift_affine(i));
      TildeElt tstar = grp_->mult(w, grp_->inverse(p));
      El part = rmul_torus(a, tstar.t);
      part = rmul_len0(part, grp_->lift(omega));
      for (int i : word) part = rmul_letter(part, i);
      for (const auto& [x2, d] : part) add_term(r, x2, ring_.mul(d, c));
    }
    return r;
  }

  // The central ingredient of the quadratic relation.
  El c_element(int aff_idx) const {
    El r;
    C scale_c = ring_.of_int(grp_->subtorus_scale(aff_idx));
    for (const Coord& t : grp_->subtorus(aff_idx))
      add_term(r, grp_->torus(t), scale_c);
    return r;
  }

  std::string coeff_str(const C& c) const;

 private:
  std::shared_ptr<const ExtendedGroup> grp_;
  R ring_;
};

using HeckeGen = Hecke<RingGeneric>;
using HeckeP = Hecke<RingCharP>;
using HEltGen = HTerms<RingGeneric>;
using HEltP = HTerms<RingCharP>;

// Generic-mode operations that use inverses of basis elements: basis inverse,
// the involution iota, and their compositions.  Results are cached per basis
// index; fills are idempotent so the mutex only serializes insertion.
class HeckeOps {
 public:
  explicit HeckeOps(std::shared_ptr<const HeckeGen> alg) : alg_(std::move(alg)) {}

  const HeckeGen& alg() const { return *alg_; }
  std::shared_ptr<const HeckeGen> alg_ptr() const { return alg_; }

  // tau_w^{-1}; coefficients land in Z[q, q^{-1}].
  HEltGen invert_basis(const TildeElt& w) const;
  // iota(tau_w) = (-q)^{l(w)} (tau_{w^{-1}})^{-1}, extended linearly.
  HEltGen iota(const HEltGen& a) const;
  HEltGen v_c(const HEltGen& a) const;
  HEltGen iota_c(const HEltGen& a) const { return iota(v_c(a)); }

 private:
  HEltGen iota_basis(const TildeElt& w) const;

  std::shared_ptr<const HeckeGen> alg_;
  mutable std::mutex mu_;
  mutable std::map<TildeElt, HEltGen> inv_cache_, iota_cache_;
};

// v -> 0 specialization from the generic mode to characteristic p; every
// coefficient must lie in Z[q].
HEltP specialize(const HeckeGen& src, const HeckeP& dst, const HEltGen& a);

// Idempotent attached to a torus character (characteristic p only).
HEltP idempotent(const HeckeP& alg, const TorusChar& xi);

// v_C in characteristic p (a linear involution, no inverses needed).
HEltP v_c(const HeckeP& alg, const HEltP& a);

// iota/iota_C in characteristic p, computed by specializing the generic basis
// images (never by dividing in the field).
HEltP iota_p(const HeckeOps& gen_ops, const HeckeP& alg, const HEltP& a);
HEltP iota_c_p(const HeckeOps& gen_ops, const HeckeP& alg, const HEltP& a);

}  // namespace prophecke

#endif
