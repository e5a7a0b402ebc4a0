#include "prophecke/hecke.hpp"

namespace prophecke {

int g_fault_quadratic = 0;

template <>
std::string Hecke<RingGeneric>::coeff_str(const Laurent& c) const {
  return c.to_string();
}

template <>
std::string Hecke<RingCharP>::coeff_str(const Fel& c) const {
  return ring_.field->to_string(c);
}

HEltGen HeckeOps::invert_basis(const TildeElt& w) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = inv_cache_.find(w);
    if (it != inv_cache_.end()) return it->second;
  }
  const HeckeGen& h = *alg_;
  const ExtendedGroup& g = h.grp();
  auto f = g.factor(w);
  HEltGen r = h.one();
  for (auto it = f.letters.rbegin(); it != f.letters.rend(); ++it) {
    int i = *it;
    // tau_{n_A}^{-1} = q^{-1} (tau_{n_A} - c_A) tau_{n_A^2}
    TildeElt n = g.lift_affine(i);
    TildeElt theta = g.mult(n, n);
    HEltGen inv_letter;
    h.add_term(inv_letter, g.mult(n, theta), Laurent::q_power(-1));
    Laurent ms = Laurent::q_power(-1).scaled(-g.subtorus_scale(i));
    for (const Coord& t : g.subtorus(i))
      h.add_term(inv_letter, g.mult(g.torus(t), theta), ms);
    r = h.mul(r, inv_letter);
  }
  r = h.rmul_len0(r, g.inverse(f.omega));
  r = h.rmul_torus(r, g.torus_reduce(-f.t));
  std::lock_guard<std::mutex> lock(mu_);
  return inv_cache_.emplace(w, std::move(r)).first->second;
}

HEltGen HeckeOps::iota_basis(const TildeElt& w) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = iota_cache_.find(w);
    if (it != iota_cache_.end()) return it->second;
  }
  const HeckeGen& h = *alg_;
  int len = h.grp().length(w);
  HEltGen r = invert_basis(h.grp().inverse(w));
  r = h.scale(r, Laurent::monomial(2 * len, len % 2 == 0 ? 1 : -1));
  std::lock_guard<std::mutex> lock(mu_);
  return iota_cache_.emplace(w, std::move(r)).first->second;
}

HEltGen HeckeOps::iota(const HEltGen& a) const {
  const HeckeGen& h = *alg_;
  HEltGen r;
  for (const auto& [w, c] : a) {
    HEltGen img = h.scale(iota_basis(w), c);
    r = h.add(r, img);
  }
  return r;
}

HEltGen HeckeOps::v_c(const HEltGen& a) const {
  const HeckeGen& h = *alg_;
  HEltGen r;
  for (const auto& [w, c] : a) {
    int e = h.grp().aw().epsilon_c(h.grp().project(w));
    h.add_term(r, w, e == 1 ? c : -c);
  }
  return r;
}

HEltP specialize(const HeckeGen& src, const HeckeP& dst, const HEltGen& a) {
  if (&src.grp() != &dst.grp())
    throw std::invalid_argument("specialization across different groups");
  HEltP r;
  for (const auto& [w, c] : a) {
    if (!c.is_q_polynomial())
      throw IntegralityError("coefficient " + c.to_string() +
                             " is not integral in q; specialization refused");
    dst.add_term(r, w, dst.ring().of_int(c.constant_term()));
  }
  return r;
}

HEltP idempotent(const HeckeP& alg, const TorusChar& xi) {
  const ExtendedGroup& g = alg.grp();
  const GF& f = *alg.ring().field;
  Fel sign = alg.ring().of_int(g.datum().rank() % 2 == 0 ? 1 : -1);
  HEltP r;
  for (const Coord& t : g.torus_points()) {
    Fel v = g.char_value(f, xi, g.torus_reduce(-t));
    alg.add_term(r, g.torus(t), f.mul(sign, v));
  }
  return r;
}

HEltP v_c(const HeckeP& alg, const HEltP& a) {
  HEltP r;
  for (const auto& [w, c] : a) {
    int e = alg.grp().aw().epsilon_c(alg.grp().project(w));
    alg.add_term(r, w, e == 1 ? c : alg.ring().neg(c));
  }
  return r;
}

HEltP iota_p(const HeckeOps& gen_ops, const HeckeP& alg, const HEltP& a) {
  HEltP r;
  for (const auto& [w, c] : a) {
    HEltP img = specialize(gen_ops.alg(), alg, gen_ops.iota(gen_ops.alg().tau(w)));
    for (const auto& [x, d] : img) alg.add_term(r, x, alg.ring().mul(d, c));
  }
  return r;
}

HEltP iota_c_p(const HeckeOps& gen_ops, const HeckeP& alg, const HEltP& a) {
  return iota_p(gen_ops, alg, v_c(alg, a));
}

}  // namespace prophecke
