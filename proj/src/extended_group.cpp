#include "prophecke/extended_group.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace prophecke {

ExtendedGroup::ExtendedGroup(std::shared_ptr<const AffineWeyl> weyl)
    : weyl_(std::move(weyl)) {
  const RootDatum& d = datum();
  modulus_ = d.q() - 1;

  theta_.resize(d.nsimple());
  for (int i = 0; i < d.nsimple(); ++i)
    theta_[i] = minus_one_coweight(d.simple_coroot(i));

  // cocycle table over the finite Weyl group
  const WeylGroup& w = d.weyl();
  int n = w.size();
  cocycle_table_.assign(static_cast<size_t>(n) * n, coord_zero());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Coord t = coord_zero();
      int u = a;
      for (int gen : w.word(b)) t = rmul_gen(t, u, gen);
      if (u != w.mult(a, b)) throw std::logic_error("cocycle bookkeeping failed");
      cocycle_table_[static_cast<size_t>(a) * n + b] = t;
    }

  // subtori T_A and the quadratic-relation multiplicity (q-1)/|T_A|
  sub_t_.resize(weyl_->naff());
  sub_scale_.resize(weyl_->naff());
  int mod = modulus_ == 0 ? 1 : modulus_;
  for (int i = 0; i < weyl_->naff(); ++i) {
    const Coord& cv = weyl_->simple_aff(i).coroot;
    std::set<Coord> pts;
    for (int k = 0; k < mod; ++k) pts.insert(torus_reduce(k * cv));
    sub_t_[i].assign(pts.begin(), pts.end());
    if (mod % static_cast<int>(pts.size()) != 0)
      throw std::logic_error("subtorus order does not divide q-1");
    sub_scale_[i] = mod / static_cast<int>(pts.size());
  }

  for (const WElt& g : weyl_->omega_generators()) omega_gens_.push_back(lift(g));

  // lifts of the simple affine reflections; for A = (-alpha0, 1) the lift is
  // n_0 = n_{alpha0}^{-1} s(-alpha0_v) with n_{alpha0} in the root-SL2 coset,
  // so that the subgroup-sum quadratic relation holds for every letter
  for (int i = 0; i < weyl_->naff(); ++i) {
    const SimpleAffData& s = weyl_->simple_aff(i);
    if (s.aff.r == 0) {
      aff_lift_.push_back(tits_lift(s.reflection_u));
    } else {
      int hi = datum().negate_root(s.aff.root);
      aff_lift_.push_back(mult(inverse(root_reflection_lift(hi)), splitting(s.coroot)));
    }
  }
}

Coord ExtendedGroup::torus_reduce(const Coord& t) const {
  int mod = modulus_ == 0 ? 1 : modulus_;
  Coord r{};
  for (int i = 0; i < kMaxRank; ++i) {
    r[i] = t[i] % mod;
    if (r[i] < 0) r[i] += mod;
  }
  return r;
}

Coord ExtendedGroup::minus_one_coweight(const Coord& coroot) const {
  // -1 in F_q^x has discrete log (q-1)/2 for odd q and 0 for even q
  int dlog = (datum().q() % 2 == 0) ? 0 : modulus_ / 2;
  return torus_reduce(dlog * coroot);
}

TildeElt ExtendedGroup::torus(const Coord& t) const {
  return TildeElt{torus_reduce(t), coord_zero(), 0};
}

// Right-multiplies the section element (t, u) by the lift n_i, keeping the
// normal form (torus, finite part).  Uses n_i^2 = alpha_v_i(-1).
Coord ExtendedGroup::rmul_gen(Coord t, int& u, int gen_i) const {
  const WeylGroup& w = datum().weyl();
  int us = w.mult(u, w.gen(gen_i));
  if (w.length(us) > w.length(u)) {
    u = us;
    return t;
  }
  // u = u' s_i with l(u') = l(u) - 1: n(u) n_i = n(u') n_i^2 = n(u') theta_i
  Coord moved = datum().torus_apply(us, theta_[gen_i], modulus_ == 0 ? 1 : modulus_);
  u = us;
  return torus_reduce(t + moved);
}

Coord ExtendedGroup::cocycle(int u, int v) const {
  int n = datum().weyl().size();
  return cocycle_table_[static_cast<size_t>(u) * n + v];
}

TildeElt ExtendedGroup::mult(const TildeElt& a, const TildeElt& b) const {
  const WeylGroup& w = datum().weyl();
  TildeElt r;
  r.u = w.mult(a.u, b.u);
  r.lam = w.apply(w.inverse(b.u), a.lam) + b.lam;
  r.t = torus_reduce(a.t + torus_apply(a.u, b.t) + cocycle(a.u, b.u));
  return r;
}

TildeElt ExtendedGroup::inverse(const TildeElt& a) const {
  const WeylGroup& w = datum().weyl();
  TildeElt r;
  r.u = w.inverse(a.u);
  r.lam = -w.apply(a.u, a.lam);
  r.t = torus_reduce(-(torus_apply(r.u, a.t) + cocycle(r.u, a.u)));
  return r;
}

TildeElt ExtendedGroup::lift_affine(int aff_idx) const { return aff_lift_[aff_idx]; }

TildeElt ExtendedGroup::root_reflection_lift(int pos_root_idx) const {
  // Lift of s_beta in the root-SL2 coset: n_beta = n(v) n_i n(v)^{-1} for any
  // v(alpha_i) = beta.  Different choices differ by elements of T_A, which
  // leave the quadratic relation unchanged.
  const RootDatum& d = datum();
  for (int v = 0; v < d.weyl().size(); ++v)
    for (int i = 0; i < d.nsimple(); ++i) {
      int simple_idx = d.root_index(d.simple_root(i));
      if (d.weyl().root_image(v, simple_idx) == pos_root_idx) {
        TildeElt nv = tits_lift(v);
        return mult(mult(nv, tits_lift(d.weyl().gen(i))), inverse(nv));
      }
    }
  throw std::logic_error("root is not Weyl-conjugate to a simple root");
}

bool ExtendedGroup::char_trivial_on_coroot(const TorusChar& xi, const Coord& coroot) const {
  int mod = modulus_ == 0 ? 1 : modulus_;
  long long v = dot(xi.a, coroot) % mod;
  return v == 0;
}

bool ExtendedGroup::char_trivial_on_subtorus(const TorusChar& xi, int aff_idx) const {
  return char_trivial_on_coroot(xi, weyl_->simple_aff(aff_idx).coroot);
}

std::vector<TorusChar> ExtendedGroup::characters() const {
  int mod = modulus_ == 0 ? 1 : modulus_;
  std::vector<TorusChar> out;
  int rank = datum().rank();
  std::vector<int> idx(rank, 0);
  while (true) {
    TorusChar xi;
    for (int i = 0; i < rank; ++i) xi.a[i] = idx[i];
    out.push_back(xi);
    int k = rank - 1;
    while (k >= 0 && idx[k] == mod - 1) idx[k--] = 0;
    if (k < 0) break;
    ++idx[k];
  }
  return out;
}

Fel ExtendedGroup::char_value(const GF& field, const TorusChar& xi, const Coord& t) const {
  int mod = modulus_ == 0 ? 1 : modulus_;
  if ((field.q() - 1) % mod != 0)
    throw std::invalid_argument("field does not contain the needed roots of unity");
  long long e = dot(xi.a, t) % mod;
  long long stride = (field.q() - 1) / mod;
  return field.gpow(e * stride);
}

long long ExtendedGroup::torus_size() const {
  long long n = 1;
  int mod = modulus_ == 0 ? 1 : modulus_;
  for (int i = 0; i < datum().rank(); ++i) n *= mod;
  return n;
}

std::vector<Coord> ExtendedGroup::torus_points() const {
  int mod = modulus_ == 0 ? 1 : modulus_;
  int rank = datum().rank();
  std::vector<Coord> out;
  std::vector<int> idx(rank, 0);
  while (true) {
    Coord t{};
    for (int i = 0; i < rank; ++i) t[i] = idx[i];
    out.push_back(t);
    int k = rank - 1;
    while (k >= 0 && idx[k] == mod - 1) idx[k--] = 0;
    if (k < 0) break;
    ++idx[k];
  }
  return out;
}

ExtendedGroup::Factorization ExtendedGroup::factor(const TildeElt& w) const {
  Factorization f;
  auto dec = weyl_->omega_decompose(project(w));
  f.omega = lift(dec.omega);
  f.letters = dec.word;
  TildeElt p = f.omega;
  for (int i : f.letters) p = mult(p, lift_affine(i));
  TildeElt tstar = mult(w, inverse(p));
  if (!is_torus(tstar)) throw std::logic_error("factorization residue is not a torus element");
  f.t = tstar.t;
  return f;
}

bool ExtendedGroup::canonical_less(const TildeElt& a, const TildeElt& b) const {
  int la = length(a), lb = length(b);
  if (la != lb) return la < lb;
  auto ca = weyl_->omega_class(a.lam), cb = weyl_->omega_class(b.lam);
  if (!(ca == cb)) return ca < cb;
  if (a.lam != b.lam) return a.lam < b.lam;
  if (a.u != b.u) return a.u < b.u;
  return a.t < b.t;
}

}  // namespace prophecke
