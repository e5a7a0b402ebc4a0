#include "prophecke/bernstein.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace prophecke {

Bernstein::Bernstein(std::shared_ptr<const HeckeOps> ops) : ops_(std::move(ops)) {}

std::pair<Coord, Coord> Bernstein::decompose(Facet f, Sign sigma, const Coord& lam,
                                             int pad) const {
  const RootDatum& d = grp().datum();
  Coord interior = d.chamber_interior(f, sigma);
  // smallest multiple of the interior vector that pulls lam into the chamber
  int m = pad;
  while (m < (1 << 20)) {
    Coord nu = m * interior;
    Coord mu = lam + nu;
    if (d.chamber_contains(nu, f, sigma) && d.chamber_contains(mu, f, sigma))
      return {mu, nu};
    ++m;
  }
  throw std::logic_error("Bernstein decomposition left the Weyl chamber");
}

HEltGen Bernstein::map(Facet f, Sign sigma, const Coord& lam) const {
  auto key = std::make_tuple(f.mask, sigma == Sign::Plus ? 1 : -1, lam);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_cache_.find(key);
    if (it != map_cache_.end()) return it->second;
  }
  HEltGen r = map_alt(f, sigma, lam, 0);
  std::lock_guard<std::mutex> lock(mu_);
  return map_cache_.emplace(std::move(key), std::move(r)).first->second;
}

HEltGen Bernstein::map_alt(Facet f, Sign sigma, const Coord& lam, int pad) const {
  const ExtendedGroup& g = grp();
  auto [mu, nu] = decompose(f, sigma, lam, pad);
  int llam = g.length(g.splitting(lam));
  int lnu = g.length(g.splitting(nu));
  int lmu = g.length(g.splitting(mu));
  int num = llam + lnu - lmu;
  if (num % 2 != 0) throw std::logic_error("odd exponent in the Bernstein map");
  HEltGen r = alg().mul(ops_->invert_basis(g.splitting(nu)), alg().tau(g.splitting(mu)));
  return alg().scale(r, Laurent::v_power(num));
}

HEltGen Bernstein::map(Facet f, Sign sigma, const XtCoweight& lt) const {
  HEltGen base = map(f, sigma, lt.lam);
  return alg().rmul_torus(base, lt.t);
}

std::vector<XtCoweight> Bernstein::orbit(const XtCoweight& lt) const {
  const RootDatum& d = grp().datum();
  std::set<XtCoweight> out;
  for (int u = 0; u < d.weyl().size(); ++u)
    out.insert(XtCoweight{d.weyl().apply(u, lt.lam), grp().torus_apply(u, lt.t)});
  return {out.begin(), out.end()};
}

HEltGen Bernstein::central(const XtCoweight& lt) const {
  return orbit_sum(grp().datum().chamber_facet(), Sign::Plus, lt);
}

HEltGen Bernstein::orbit_sum(Facet f, Sign sigma, const XtCoweight& lt) const {
  HEltGen r;
  for (const XtCoweight& m : orbit(lt)) r = alg().add(r, map(f, sigma, m));
  return r;
}

HEltGen Bernstein::basis_elt(const TildeElt& w) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = basis_cache_.find(w);
    if (it != basis_cache_.end()) return it->second;
  }
  const ExtendedGroup& g = grp();
  const RootDatum& d = g.datum();
  // w = s(lam) * w0 with w0 in the finite part: lam = u . lam_w
  Coord lam = d.weyl().apply(w.u, w.lam);
  TildeElt w0{w.t, coord_zero(), w.u};
  int lw = g.length(w);
  int lw0 = g.length(w0);
  int llam = g.length(g.splitting(lam));
  int num = lw - lw0 - llam;
  if (num % 2 != 0) throw std::logic_error("odd exponent in the Bernstein basis");
  Facet x0 = d.vertex_facet();
  HEltGen r = alg().mul(map(x0, Sign::Plus, lam), alg().tau(w0));
  r = alg().scale(r, Laurent::v_power(num));
  // triangularity contract: leading coefficient 1 at tau_w, rest shorter
  auto it = r.find(w);
  if (it == r.end() || !it->second.is_one())
    throw std::logic_error("Bernstein basis element lost its leading term");
  for (const auto& [x, c] : r)
    if (!(x == w) && g.length(x) >= lw)
      throw std::logic_error("Bernstein basis element is not triangular");
  std::lock_guard<std::mutex> lock(mu_);
  return basis_cache_.emplace(w, std::move(r)).first->second;
}

std::map<TildeElt, Laurent> Bernstein::to_basis(const HEltGen& a) const {
  std::map<TildeElt, Laurent> out;
  HEltGen rest = a;
  while (!rest.empty()) {
    // peel a term of maximal length
    auto best = rest.begin();
    int best_len = grp().length(best->first);
    for (auto it = std::next(rest.begin()); it != rest.end(); ++it) {
      int len = grp().length(it->first);
      if (len > best_len) {
        best = it;
        best_len = len;
      }
    }
    TildeElt w = best->first;
    Laurent c = best->second;
    out[w] = c;
    rest = alg().sub(rest, alg().scale(basis_elt(w), c));
    if (rest.count(w)) throw std::logic_error("basis conversion failed to eliminate a term");
  }
  return out;
}

HEltGen Bernstein::from_basis(const std::map<TildeElt, Laurent>& coeffs) const {
  HEltGen r;
  for (const auto& [w, c] : coeffs) r = alg().add(r, alg().scale(basis_elt(w), c));
  return r;
}

HEltP Bernstein::basis_elt_p(const HeckeP& alg_p, const TildeElt& w) const {
  return specialize(alg(), alg_p, basis_elt(w));
}

HEltP Bernstein::central_p(const HeckeP& alg_p, const XtCoweight& lt) const {
  return specialize(alg(), alg_p, central(lt));
}

std::map<TildeElt, Fel> Bernstein::to_basis_p(const HeckeP& alg_p, const HEltP& a) const {
  std::map<TildeElt, Fel> out;
  HEltP rest = a;
  while (!rest.empty()) {
    auto best = rest.begin();
    int best_len = grp().length(best->first);
    for (auto it = std::next(rest.begin()); it != rest.end(); ++it) {
      int len = grp().length(it->first);
      if (len > best_len) {
        best = it;
        best_len = len;
      }
    }
    TildeElt w = best->first;
    Fel c = best->second;
    out[w] = c;
    rest = alg_p.sub(rest, alg_p.scale(basis_elt_p(alg_p, w), c));
    if (rest.count(w)) throw std::logic_error("basis conversion failed to eliminate a term");
  }
  return out;
}

std::vector<Coord> Bernstein::ideal_generators() const {
  std::vector<Coord> out;
  for (const Coord& lam : grp().datum().dominant_hilbert_basis())
    if (grp().length(grp().splitting(lam)) > 0) out.push_back(lam);
  return out;
}

LeviAlgebra::LeviAlgebra(std::shared_ptr<const ExtendedGroup> parent, Facet f)
    : parent_(std::move(parent)), facet_(f) {
  levi_ = parent_->datum().levi(f);
  sub_ = std::make_shared<ExtendedGroup>(std::make_shared<AffineWeyl>(levi_.datum));
  ops_ = std::make_shared<HeckeOps>(std::make_shared<HeckeGen>(sub_, RingGeneric{}));
  bern_ = std::make_shared<Bernstein>(ops_);
  // sanity: the index translation must intertwine the two group laws
  const WeylGroup& lw = levi_.datum->weyl();
  for (int a = 0; a < lw.size(); ++a)
    for (int b = 0; b < lw.size(); ++b) {
      Coord ca = sub_->cocycle(a, b);
      Coord cb = parent_->cocycle(levi_.u_to_parent[a], levi_.u_to_parent[b]);
      if (!(ca == cb)) throw std::logic_error("Levi cocycle mismatch");
    }
}

TildeElt LeviAlgebra::to_parent(const TildeElt& w) const {
  return TildeElt{w.t, w.lam, levi_.u_to_parent[w.u]};
}

TildeElt LeviAlgebra::from_parent(const TildeElt& w) const {
  int u = levi_.u_from_parent[w.u];
  if (u < 0) throw std::invalid_argument("finite part outside the facet Weyl group");
  return TildeElt{w.t, w.lam, u};
}

bool LeviAlgebra::f_positive(const TildeElt& w) const {
  return parent_->aw().is_f_positive(parent_->project(to_parent(w)), facet_);
}

bool LeviAlgebra::f_negative(const TildeElt& w) const {
  return parent_->aw().is_f_positive(
      parent_->aw().inverse(parent_->project(to_parent(w))), facet_);
}

HEltGen LeviAlgebra::embed(const HEltGen& a, bool positive) const {
  HEltGen r;
  for (const auto& [w, c] : a) {
    if (positive ? !f_positive(w) : !f_negative(w))
      throw std::invalid_argument("support is not F-positive (resp. F-negative)");
    r.emplace(to_parent(w), c);
  }
  return r;
}

HEltGen LeviAlgebra::embed_pos(const HEltGen& a) const { return embed(a, true); }
HEltGen LeviAlgebra::embed_neg(const HEltGen& a) const { return embed(a, false); }

HEltGen LeviAlgebra::levi_bernstein(Facet parent_fprime, const XtCoweight& lt) const {
  if ((parent_fprime.mask & ~facet_.mask) != 0)
    throw std::invalid_argument("facet is not contained in the Levi facet");
  // translate the parent facet into Levi simple-root indices
  uint32_t mask = 0;
  for (size_t i = 0; i < levi_.simple_to_parent.size(); ++i)
    if (parent_fprime.mask & (1u << levi_.simple_to_parent[i])) mask |= (1u << i);
  return bern_->map(Facet{mask}, Sign::Plus, lt);
}

}  // namespace prophecke
