#include "prophecke/verify.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <mutex>
#include <set>
#include <thread>
#include <optional>
#include <random>
#include <sstream>

namespace prophecke {

namespace {

struct Ctx {
  SuiteConfig cfg;
  std::shared_ptr<const ExtendedGroup> grp;
  std::shared_ptr<const GF> base;
  std::shared_ptr<GF> modfield;
  std::shared_ptr<HeckeGen> gen;
  std::shared_ptr<HeckeP> chp;     // over the base field F_q
  std::shared_ptr<HeckeP> chpmod;  // over the classification field
  std::shared_ptr<HeckeOps> ops;
  std::shared_ptr<Bernstein> bern;
  std::shared_ptr<CharacterTheory> theory;
  std::vector<Fel> pi_scalars_mod;

  mutable std::mutex brute_mu;
  mutable std::optional<std::vector<SimpleModuleSignature>> brute_cache;

  uint64_t check_seed(const std::string& name) const {
    uint64_t h = cfg.seed ^ 0x9e3779b97f4a7c15ull;
    for (char c : name) h = (h ^ static_cast<uint64_t>(c)) * 0x100000001b3ull;
    return h;
  }
};

std::shared_ptr<Ctx> make_ctx(const SuiteConfig& cfg) {
  auto ctx = std::make_shared<Ctx>();
  ctx->cfg = cfg;
  ctx->grp = std::make_shared<ExtendedGroup>(
      std::make_shared<AffineWeyl>(RootDatum::build(cfg.group, cfg.q)));
  int p, s;
  factor_prime_power(cfg.q, p, s);
  ctx->base = std::make_shared<GF>(p, s);
  ctx->modfield = classification_field(*ctx->grp);
  ctx->gen = std::make_shared<HeckeGen>(ctx->grp, RingGeneric{});
  ctx->chp = std::make_shared<HeckeP>(ctx->grp, RingCharP{ctx->base.get()});
  ctx->chpmod = std::make_shared<HeckeP>(ctx->grp, RingCharP{ctx->modfield.get()});
  ctx->ops = std::make_shared<HeckeOps>(ctx->gen);
  ctx->bern = std::make_shared<Bernstein>(ctx->ops);
  ctx->theory = std::make_shared<CharacterTheory>(ctx->grp);
  long long mu = std::max(1, ctx->grp->modulus());
  for (int e : cfg.pi_scalars)
    ctx->pi_scalars_mod.push_back(
        ctx->modfield->gpow(static_cast<long long>(e) * ((ctx->modfield->q() - 1) / mu)));
  return ctx;
}

std::vector<Coord> box_coweights(int rank, int radius) {
  std::vector<Coord> out;
  std::vector<int> idx(rank, -radius);
  while (true) {
    Coord c{};
    for (int i = 0; i < rank; ++i) c[i] = idx[i];
    out.push_back(c);
    int k = 0;
    while (k < rank && idx[k] == radius) idx[k++] = -radius;
    if (k == rank) break;
    ++idx[k];
  }
  return out;
}

int default_box(const Ctx& c) { return c.grp->datum().rank() <= 2 ? 4 : 2; }

// Box guaranteed to contain every coweight of translation length <= cap for
// rank <= 2 data (coordinates are bounded by the length in the chosen bases,
// up to central directions, which never change lengths).
int exhaustive_box(const Ctx& c, int cap) {
  return c.grp->datum().rank() <= 2 ? std::max(default_box(c), cap) : default_box(c);
}

TildeElt random_elt(const Ctx& c, std::mt19937_64& rng, int box, int max_len) {
  const RootDatum& d = c.grp->datum();
  std::uniform_int_distribution<int> coord(-box, box);
  std::uniform_int_distribution<int> tor(0, std::max(0, c.grp->modulus() - 1));
  std::uniform_int_distribution<int> fin(0, d.weyl().size() - 1);
  while (true) {
    TildeElt x;
    for (int i = 0; i < d.rank(); ++i) {
      x.lam[i] = coord(rng);
      x.t[i] = c.grp->modulus() > 0 ? tor(rng) : 0;
    }
    x.u = fin(rng);
    if (c.grp->length(x) <= max_len) return x;
  }
}

// dominant coweights with translation length <= cap
std::vector<Coord> dominant_upto(const Ctx& c, int cap) {
  std::vector<Coord> out;
  for (const Coord& lam : box_coweights(c.grp->datum().rank(), exhaustive_box(c, cap)))
    if (c.grp->datum().dominant(lam) &&
        c.grp->length(c.grp->splitting(lam)) <= cap)
      out.push_back(lam);
  return out;
}

// orbit representatives (dominant) with l_O <= cap, with a couple of torus twists
std::vector<XtCoweight> orbit_reps(const Ctx& c, int cap) {
  std::vector<XtCoweight> out;
  Coord t1{};
  t1[0] = 1;
  for (const Coord& lam : dominant_upto(c, cap)) {
    out.push_back(XtCoweight{lam, coord_zero()});
    if (c.grp->modulus() > 1) out.push_back(XtCoweight{lam, c.grp->torus_reduce(t1)});
  }
  return out;
}

std::string elt_str(const Ctx& c, const TildeElt& w) {
  return tilde_to_json(*c.grp, w).dump();
}

void fail(CheckResult& res, const std::string& cex) {
  if (res.status != CheckResult::Status::Fail) {
    res.status = CheckResult::Status::Fail;
    res.counterexample = cex;
  }
}

// ---------------------------------------------------------------------------
// individual checks
// ---------------------------------------------------------------------------

void check_relations(const Ctx& c, CheckResult& res) {
  std::mt19937_64 rng(c.check_seed(res.name));
  int triples = c.cfg.max_len >= 5 ? 1000 : 200;
  int box = 2, len = std::min(5, c.cfg.max_len);
  for (int it = 0; it < triples; ++it) {
    TildeElt a = random_elt(c, rng, box, len), b = random_elt(c, rng, box, len),
             d = random_elt(c, rng, box, len);
    ++res.instances;
    bool ok = true;
    if (c.cfg.mode != "charp") {
      HEltGen ga = c.gen->tau(a), gb = c.gen->tau(b), gd = c.gen->tau(d);
      ok = ok && c.gen->mul(c.gen->mul(ga, gb), gd) == c.gen->mul(ga, c.gen->mul(gb, gd));
    }
    if (c.cfg.mode != "generic") {
      HEltP pa = c.chp->tau(a), pb = c.chp->tau(b), pd = c.chp->tau(d);
      ok = ok && c.chp->mul(c.chp->mul(pa, pb), pd) == c.chp->mul(pa, c.chp->mul(pb, pd));
    }
    if (!ok)
      fail(res, "associativity failed on " + elt_str(c, a) + ", " + elt_str(c, b) +
                    ", " + elt_str(c, d));
  }
  // quadratic relations, unprojected and projected on every (xi, A)
  for (int i = 0; i < c.grp->aw().naff(); ++i) {
    TildeElt n = c.grp->lift_affine(i);
    TildeElt n2 = c.grp->mult(n, n);
    HEltGen lhs = c.gen->mul(c.gen->tau(n), c.gen->tau(n));
    HEltGen rhs = c.gen->add(c.gen->tau(n2, Laurent::q_power(1)),
                             c.gen->mul(c.gen->c_element(i), c.gen->tau(n)));
    ++res.instances;
    if (!(lhs == rhs)) fail(res, "quadratic relation failed at letter " + std::to_string(i));
    for (const TorusChar& xi : c.grp->characters()) {
      HEltP e = idempotent(*c.chp, xi);
      HEltP sq = c.chp->mul(c.chp->tau(n), c.chp->tau(n));
      HEltP pl = c.chp->mul(e, sq);
      ++res.instances;
      if (c.grp->char_trivial_on_subtorus(xi, i)) {
        HEltP pr = c.chp->scale(c.chp->mul(e, c.chp->tau(n)), c.base->from_int(-1));
        if (!(pl == pr))
          fail(res, "projected quadratic relation failed at letter " + std::to_string(i));
      } else if (!c.chp->is_zero(pl)) {
        fail(res, "projected quadratic relation is nonzero at letter " + std::to_string(i));
      }
    }
  }
  // braid relations on length-additive pairs
  int found = 0;
  while (found < 60) {
    TildeElt a = random_elt(c, rng, box, len), b = random_elt(c, rng, box, len);
    TildeElt ab = c.grp->mult(a, b);
    if (c.grp->length(ab) != c.grp->length(a) + c.grp->length(b)) continue;
    ++found;
    ++res.instances;
    if (!(c.gen->mul(c.gen->tau(a), c.gen->tau(b)) == c.gen->tau(ab)))
      fail(res, "braid relation failed on " + elt_str(c, a) + ", " + elt_str(c, b));
  }
}

void check_lemma_1_2(const Ctx& c, CheckResult& res) {
  const AffineWeyl& aw = c.grp->aw();
  int box = default_box(c);
  auto elems = aw.elements_in_box(box);
  for (const WElt& w : elems) {
    ++res.instances;
    // length fast path vs inversion-count oracle
    if (aw.length(w) != aw.length_oracle(w))
      fail(res, "length fast path disagrees with the oracle at " +
                    welt_to_json(aw, w).dump());
    // det on the affine subgroup and the epsilon_C formula vs decomposition
    auto dec = aw.omega_decompose(w);
    if (aw.omega_class(w).trivial()) {
      int det = c.grp->datum().weyl().det(w.u);
      if (det != (aw.length(w) % 2 == 0 ? 1 : -1))
        fail(res, "det != (-1)^l on the affine subgroup at " + welt_to_json(aw, w).dump());
    }
    if (aw.epsilon_c(w) != c.grp->datum().weyl().det(dec.omega.u))
      fail(res, "epsilon_C disagrees with the Omega-part determinant");
  }
  // epsilon_C(w) = (-1)^{l(e^lam)} for w <= e^lam
  for (const Coord& lam : box_coweights(c.grp->datum().rank(), 2)) {
    WElt t = aw.translation(lam);
    int sign = aw.length(t) % 2 == 0 ? 1 : -1;
    for (const WElt& w : aw.elements_in_box(2)) {
      if (!aw.bruhat_leq(w, t)) continue;
      ++res.instances;
      if (aw.epsilon_c(w) != sign)
        fail(res, "epsilon_C not constant below " + welt_to_json(aw, t).dump());
    }
  }
}

void check_prop_1_3(const Ctx& c, CheckResult& res) {
  const AffineWeyl& aw = c.grp->aw();
  const WeylGroup& fin = c.grp->datum().weyl();
  int box = std::min(default_box(c), 3);
  for (const WElt& w : aw.elements_in_box(box)) {
    if (aw.length(w) > std::min(8, c.cfg.max_len + 2)) continue;
    ++res.instances;
    auto [u0, d] = aw.coset_decompose(w);
    if (!aw.is_distinguished(d) || !(aw.mult(aw.finite(u0), d) == w))
      fail(res, "coset decomposition failed at " + welt_to_json(aw, w).dump());
    if (is_zero(w.lam) && aw.is_distinguished(w) && w.u != fin.identity())
      fail(res, "non-identity distinguished element in the finite group");
    if (aw.is_distinguished(w)) {
      auto [lam, wfin] = aw.distinguished_decompose(w);
      if (aw.length(aw.translation(lam)) != aw.length(w) + fin.length(wfin))
        fail(res, "length additivity of the distinguished decomposition failed");
      for (int u = 0; u < fin.size(); ++u) {
        ++res.instances;
        if (aw.length(aw.mult(aw.finite(u), w)) != fin.length(u) + aw.length(w))
          fail(res, "l(w0 d) != l(w0) + l(d)");
      }
    }
  }
  for (const WElt& d : aw.distinguished_upto(6, box)) {
    for (int i = 0; i < aw.naff(); ++i) {
      ++res.instances;
      WElt ds = aw.mult(d, aw.simple_reflection(i));
      int ld = aw.length(d), lds = aw.length(ds);
      auto [u0, rep] = aw.coset_decompose(ds);
      bool case1 = (lds == ld - 1) && aw.is_distinguished(ds);
      bool case2 = (lds == ld + 1) && aw.is_distinguished(ds);
      bool case3 = (lds == ld + 1) && !aw.is_distinguished(ds) && rep == d;
      if ((case1 ? 1 : 0) + (case2 ? 1 : 0) + (case3 ? 1 : 0) != 1)
        fail(res, "trichotomy failed at " + welt_to_json(aw, d).dump() + " with letter " +
                      std::to_string(i));
    }
  }
}

void check_lemma_2_3(const Ctx& c, CheckResult& res) {
  const RootDatum& d = c.grp->datum();
  const AffineWeyl& aw = c.grp->aw();
  Coord t1{};
  t1[0] = c.grp->modulus() > 1 ? 1 : 0;
  int cap = c.cfg.max_len + 2;
  for (const Coord& lam : box_coweights(d.rank(), exhaustive_box(c, cap))) {
    if (c.grp->length(c.grp->splitting(lam)) > cap) continue;
    for (Facet f : d.standard_facets())
      for (Sign sg : {Sign::Plus, Sign::Minus})
        for (const Coord& t : {coord_zero(), t1}) {
          ++res.instances;
          XtCoweight lt{lam, t};
          TildeElt top = c.bern->translation(lt);
          HEltGen b = c.bern->map(f, sg, lt);
          auto lead = b.find(top);
          if (lead == b.end() || !lead->second.is_one()) {
            fail(res, "leading coefficient is not 1 at " + elt_str(c, top));
            continue;
          }
          for (const auto& [w, coeff] : b) {
            if (!coeff.is_q_polynomial())
              fail(res, "non-integral coefficient " + coeff.to_string());
            if (w == top) continue;
            if (c.grp->length(w) >= c.grp->length(top) ||
                !aw.bruhat_leq(c.grp->project(w), c.grp->project(top)))
              fail(res, "support is not strictly below the leading index");
          }
        }
  }
}

void check_eq_2_1(const Ctx& c, CheckResult& res) {
  const RootDatum& d = c.grp->datum();
  Coord t1{};
  t1[0] = c.grp->modulus() > 1 ? 1 : 0;
  int cap = c.cfg.max_len + 2;
  for (const Coord& lam : box_coweights(d.rank(), exhaustive_box(c, cap))) {
    if (c.grp->length(c.grp->splitting(lam)) > cap) continue;
    for (Facet f : d.standard_facets())
      for (const Coord& t : {coord_zero(), t1}) {
        ++res.instances;
        XtCoweight lt{lam, t};
        if (!(c.ops->iota_c(c.bern->map(f, Sign::Plus, lt)) ==
              c.bern->map(f, Sign::Minus, lt)))
          fail(res, "iota_C(B+) != B- at lambda " + coord_str(lam, d.rank()));
      }
  }
}

void check_eq_2_4(const Ctx& c, CheckResult& res) {
  const RootDatum& d = c.grp->datum();
  int box = d.npos() <= 1 ? 2 : 1;
  int cap = std::max(6, c.cfg.max_len);
  for (Facet f : d.standard_facets())
    for (Sign sg : {Sign::Plus, Sign::Minus})
      for (const Coord& m1 : box_coweights(d.rank(), box))
        for (const Coord& m2 : box_coweights(d.rank(), box)) {
          if (c.grp->length(c.grp->splitting(m1)) > cap ||
              c.grp->length(c.grp->splitting(m2)) > cap)
            continue;
          ++res.instances;
          int ell = c.grp->length(c.grp->splitting(m1)) +
                    c.grp->length(c.grp->splitting(m2)) -
                    c.grp->length(c.grp->splitting(m1 + m2));
          if (ell < 0 || ell % 2 != 0) {
            fail(res, "length defect is negative or odd");
            continue;
          }
          HEltGen prod = c.gen->mul(c.bern->map(f, sg, m1), c.bern->map(f, sg, m2));
          HEltGen expect = c.gen->scale(c.bern->map(f, sg, m1 + m2), Laurent::v_power(ell));
          if (!(prod == expect)) fail(res, "chamber multiplicativity failed");
          bool common = false;
          for (int u = 0; u < d.weyl().size(); ++u) {
            int ui = d.weyl().inverse(u);
            if (d.dominant(d.weyl().apply(ui, m1)) && d.dominant(d.weyl().apply(ui, m2)))
              common = true;
          }
          if (common != (ell == 0)) fail(res, "exponent-chamber dichotomy failed");
          if (!common && ell < 2) fail(res, "defect smaller than 2 outside a chamber");
          HEltP pp = c.chp->mul(specialize(*c.gen, *c.chp, c.bern->map(f, sg, m1)),
                                specialize(*c.gen, *c.chp, c.bern->map(f, sg, m2)));
          HEltP want = common ? specialize(*c.gen, *c.chp, c.bern->map(f, sg, m1 + m2))
                              : c.chp->zero();
          if (!(pp == want)) fail(res, "char-p product rule failed");
        }
}

void check_prop_2_10(const Ctx& c, CheckResult& res) {
  std::mt19937_64 rng(c.check_seed(res.name));
  auto doms = dominant_upto(c, c.cfg.max_len);
  // all pairs with l <= max_len
  for (const Coord& a : doms)
    for (const Coord& b : doms) {
      if (c.grp->length(c.grp->splitting(a)) > c.cfg.max_len ||
          c.grp->length(c.grp->splitting(b)) > c.cfg.max_len)
        continue;
      ++res.instances;
      HEltP za = c.bern->central_p(*c.chp, XtCoweight{a, coord_zero()});
      HEltP zb = c.bern->central_p(*c.chp, XtCoweight{b, coord_zero()});
      if (!(c.chp->mul(za, zb) ==
            c.bern->central_p(*c.chp, XtCoweight{a + b, coord_zero()})))
        fail(res, "z_a z_b != z_{a+b} at " + coord_str(a, c.grp->datum().rank()) + " " +
                      coord_str(b, c.grp->datum().rank()));
    }
  // 20 seeded random pairs in a wider box
  std::uniform_int_distribution<int> pick(0, static_cast<int>(doms.size()) - 1);
  for (int it = 0; it < 20 && !doms.empty(); ++it) {
    Coord a = doms[pick(rng)], b = doms[pick(rng)];
    ++res.instances;
    HEltP za = c.bern->central_p(*c.chp, XtCoweight{a, coord_zero()});
    HEltP zb = c.bern->central_p(*c.chp, XtCoweight{b, coord_zero()});
    if (!(c.chp->mul(za, zb) == c.bern->central_p(*c.chp, XtCoweight{a + b, coord_zero()})))
      fail(res, "random multiplicativity pair failed");
  }
  // centrality against every generator, generic mode
  std::vector<HEltGen> gens;
  for (const Coord& t : c.grp->torus_points()) gens.push_back(c.gen->tau(c.grp->torus(t)));
  for (int i = 0; i < c.grp->aw().naff(); ++i)
    gens.push_back(c.gen->tau(c.grp->lift_affine(i)));
  for (const TildeElt& om : c.grp->omega_tilde_generators())
    gens.push_back(c.gen->tau(om));
  for (const Coord& a : doms) {
    HEltGen z = c.bern->central(a);
    for (const HEltGen& x : gens) {
      ++res.instances;
      if (!(c.gen->mul(z, x) == c.gen->mul(x, z)))
        fail(res, "central element fails to commute at " + coord_str(a, c.grp->datum().rank()));
    }
  }
  // injectivity via distinct leading supports
  for (size_t i = 0; i < doms.size(); ++i)
    for (size_t j = i + 1; j < doms.size(); ++j) {
      ++res.instances;
      if (c.bern->central(doms[i]) == c.bern->central(doms[j]))
        fail(res, "distinct dominants with equal central elements");
    }
}

void check_thm_2_14(const Ctx& c, CheckResult& res) {
  std::mt19937_64 rng(c.check_seed(res.name));
  TorusChar triv;
  HEltP e1 = idempotent(*c.chp, triv);
  auto doms = dominant_upto(c, std::min(4, c.cfg.max_len));
  // eps_1 z_lam is central and multiplicative inside eps_1 H eps_1
  for (const Coord& a : doms) {
    HEltP z = c.bern->central_p(*c.chp, XtCoweight{a, coord_zero()});
    HEltP ez = c.chp->mul(e1, z);
    for (int it = 0; it < 10; ++it) {
      TildeElt w = random_elt(c, rng, 2, 4);
      HEltP x = c.chp->mul(c.chp->mul(e1, c.chp->tau(w)), e1);
      ++res.instances;
      if (!(c.chp->mul(ez, x) == c.chp->mul(x, ez)))
        fail(res, "eps_1 z is not central in the Iwahori component");
    }
    for (const Coord& b : doms) {
      ++res.instances;
      HEltP zb = c.bern->central_p(*c.chp, XtCoweight{b, coord_zero()});
      if (!(c.chp->mul(c.chp->mul(e1, z), c.chp->mul(e1, zb)) ==
            c.chp->mul(e1, c.bern->central_p(*c.chp, XtCoweight{a + b, coord_zero()}))))
        fail(res, "eps_1-projected multiplicativity failed");
    }
  }
  // injectivity of lam -> eps_1 z_lam
  for (size_t i = 0; i < doms.size(); ++i)
    for (size_t j = i + 1; j < doms.size(); ++j) {
      ++res.instances;
      HEltP zi = c.chp->mul(e1, c.bern->central_p(*c.chp, XtCoweight{doms[i], coord_zero()}));
      HEltP zj = c.chp->mul(e1, c.bern->central_p(*c.chp, XtCoweight{doms[j], coord_zero()}));
      if (zi == zj) fail(res, "eps_1 z map is not injective on dominants");
    }
  // sampled nilpotency probes on z-polynomials
  auto small = dominant_upto(c, 4);
  std::uniform_int_distribution<int> cf(0, c.base->q() - 1);
  for (int it = 0; it < 8; ++it) {
    HEltP h = c.chp->zero();
    for (const Coord& a : small) {
      if (c.grp->length(c.grp->splitting(a)) == 0) continue;
      Fel coeff = static_cast<Fel>(cf(rng));
      h = c.chp->add(h, c.chp->scale(c.bern->central_p(*c.chp, XtCoweight{a, coord_zero()}),
                                     coeff));
    }
    if (c.chp->is_zero(h)) continue;
    ++res.instances;
    HEltP pw = h;
    for (int k = 0; k < 3; ++k) {
      pw = c.chp->mul(pw, h);
      if (c.chp->is_zero(pw)) fail(res, "nilpotent z-polynomial found");
    }
  }
}

void check_lemma_3_1(const Ctx& c, CheckResult& res) {
  for (const XtCoweight& lt : orbit_reps(c, c.cfg.max_len)) {
    HEltGen z = c.bern->central(lt);
    HEltGen iz = c.ops->iota_c(z);
    int lo = c.bern->translation_length(lt);
    auto orbit = c.bern->orbit(lt);
    for (const HEltGen* h : {&z, &iz}) {
      ++res.instances;
      std::set<TildeElt> tops;
      for (const XtCoweight& m : orbit) tops.insert(c.bern->translation(m));
      for (const TildeElt& top : tops) {
        auto it = h->find(top);
        if (it == h->end() || !it->second.is_one())
          fail(res, "orbit translation missing or with coefficient != 1");
      }
      for (const auto& [w, coeff] : *h)
        if (!tops.count(w) && c.grp->length(w) >= lo)
          fail(res, "support off the orbit with length >= l_O");
    }
  }
}

void check_prop_3_2(const Ctx& c, CheckResult& res) {
  int fixed_plain = 0, total = 0;
  for (const XtCoweight& lt : orbit_reps(c, c.cfg.max_len)) {
    HEltGen z = c.bern->central(lt);
    ++res.instances;
    ++total;
    if (!(c.ops->iota_c(z) == z)) fail(res, "iota_C does not fix a central element");
    if (c.ops->iota(z) == z) ++fixed_plain;
  }
  res.note = "plain iota fixes " + std::to_string(fixed_plain) + " of " +
             std::to_string(total) + " central elements on this range";
}

void check_lemma_3_4(const Ctx& c, CheckResult& res) {
  const RootDatum& d = c.grp->datum();
  for (const XtCoweight& lt : orbit_reps(c, c.cfg.max_len)) {
    HEltGen ref = c.bern->central(lt);
    for (Facet f : d.standard_facets())
      for (Sign sg : {Sign::Plus, Sign::Minus}) {
        ++res.instances;
        if (!(c.bern->orbit_sum(f, sg, lt) == ref))
          fail(res, "orbit sum differs at facet mask " + std::to_string(f.mask) +
                        " sign " + (sg == Sign::Plus ? std::string("+") : std::string("-")));
      }
  }
}

void check_lemma_3_8(const Ctx& c, CheckResult& res) {
  const RootDatum& d = c.grp->datum();
  std::mt19937_64 rng(c.check_seed(res.name));
  Coord t1{};
  t1[0] = c.grp->modulus() > 1 ? 1 : 0;
  for (Facet f : d.standard_facets()) {
    LeviAlgebra levi(c.grp, f);
    for (Facet fp : d.standard_facets()) {
      if ((fp.mask & ~f.mask) != 0) continue;
      int done = 0;
      for (const Coord& lam : box_coweights(d.rank(), 3)) {
        if (!c.grp->aw().coweight_f_positive(lam, f)) continue;
        if (c.grp->length(c.grp->splitting(lam)) > c.cfg.max_len + 2) continue;
        if (done >= 20) break;
        ++done;
        for (const Coord& t : {coord_zero(), t1}) {
          ++res.instances;
          XtCoweight lt{lam, t};
          HEltGen inner = levi.levi_bernstein(fp, lt);
          if (!(levi.embed_pos(inner) == c.bern->map(fp, Sign::Plus, lt)))
            fail(res, "j_F^+ of the relative map differs at lambda " +
                          coord_str(lam, d.rank()));
        }
      }
    }
  }
}

void check_eq_3_1(const Ctx& c, CheckResult& res) {
  const RootDatum& d = c.grp->datum();
  const AffineWeyl& aw = c.grp->aw();
  for (Facet f : d.standard_facets()) {
    int done = 0;
    for (const Coord& mu : box_coweights(d.rank(), 3)) {
      for (const Coord& nu : box_coweights(d.rank(), 2)) {
        if (!aw.coweight_f_positive(mu, f) || !aw.coweight_f_positive(nu, f) ||
            !aw.coweight_f_positive(mu - nu, f))
          continue;
        if (done >= 40) break;
        ++done;
        ++res.instances;
        if (!aw.length_identity_levi(mu, nu, f))
          fail(res, "Levi length identity failed at facet mask " + std::to_string(f.mask));
      }
    }
  }
}

void check_eq_5_1(const Ctx& c, CheckResult& res) {
  const AffineWeyl& aw = c.grp->aw();
  std::mt19937_64 rng(c.check_seed(res.name));
  int cap = std::min(6, c.cfg.max_len);
  for (const WElt& dd : aw.distinguished_upto(cap, std::min(default_box(c), 3))) {
    Coord t1{};
    t1[0] = c.grp->modulus() > 1 ? 1 : 0;
    for (const Coord& t : {coord_zero(), t1}) {
      ++res.instances;
      TildeElt lift = c.grp->mult(c.grp->torus(t), c.grp->lift(dd));
      int len = c.grp->length(lift);
      HEltGen rhs = c.ops->iota(c.gen->tau(lift));
      if (len % 2 != 0) rhs = c.gen->neg(rhs);
      if (!(c.bern->basis_elt(lift) == rhs))
        fail(res, "basis element differs from the involution formula at " + elt_str(c, lift));
    }
  }
  // base-change round trip on random elements
  for (int it = 0; it < 25; ++it) {
    HEltGen a;
    for (int k = 0; k < 3; ++k) {
      TildeElt w = random_elt(c, rng, 2, cap);
      c.gen->add_term(a, w, Laurent::of_int(static_cast<long long>(rng() % 7) - 3));
    }
    ++res.instances;
    if (!(c.bern->from_basis(c.bern->to_basis(a)) == a))
      fail(res, "tau <-> Bernstein basis round trip failed");
  }
}

void check_lemma_5_3(const Ctx& c, CheckResult& res) {
  auto jgens = c.bern->ideal_generators();
  int cap = std::min(6, c.cfg.max_len);
  Coord t1{};
  t1[0] = c.grp->modulus() > 1 ? 1 : 0;
  for (const WElt& w : c.grp->aw().elements_in_box(std::min(default_box(c), 3))) {
    int n = c.grp->aw().length(w);
    if (n > cap) continue;
    for (const Coord& t : {coord_zero(), t1}) {
      TildeElt lift = c.grp->mult(c.grp->torus(t), c.grp->lift(w));
      HEltP bw = c.bern->basis_elt_p(*c.chp, lift);
      for (const Coord& g : jgens) {
        ++res.instances;
        HEltP prod = c.chp->mul(c.bern->central_p(*c.chp, XtCoweight{g, coord_zero()}), bw);
        for (const auto& [x, coeff] : c.bern->to_basis_p(*c.chp, prod))
          if (c.grp->length(x) < n + 1)
            fail(res, "filtration step failed at " + elt_str(c, lift));
      }
    }
  }
}

void check_fact_iii(const Ctx& c, CheckResult& res) {
  for (const Coord& g : c.bern->ideal_generators()) {
    HEltP z = c.bern->central_p(*c.chp, XtCoweight{g, coord_zero()});
    HEltP acc = c.bern->basis_elt_p(*c.chp, c.grp->splitting(g));
    for (int m = 1; m <= 3; ++m) {
      ++res.instances;
      acc = c.chp->mul(z, acc);
      if (!(acc == c.bern->basis_elt_p(*c.chp, c.grp->splitting((m + 1) * g))))
        fail(res, "power identity failed at m = " + std::to_string(m));
    }
  }
}

void check_remark_4_2(const Ctx& c, CheckResult& res) {
  auto doms = dominant_upto(c, c.cfg.max_len);
  for (const WeightChar& chi : all_weight_chars(*c.grp)) {
    WeightModule m(c.chp, chi);
    auto one = m.generator();
    for (const Coord& lam : doms) {
      ++res.instances;
      HEltP z = c.bern->central_p(*c.chp, XtCoweight{lam, coord_zero()});
      HEltP b = specialize(*c.gen, *c.chp, c.bern->map(m.facet(), Sign::Plus, lam));
      if (!(m.act(one, z) == m.act(one, b)))
        fail(res, "Satake compatibility failed at lambda " +
                      coord_str(lam, c.grp->datum().rank()));
    }
    // T-multiplicativity on the generator
    for (const Coord& a : c.bern->ideal_generators())
      for (const Coord& b : c.bern->ideal_generators()) {
        ++res.instances;
        HEltP za = c.bern->central_p(*c.chp, XtCoweight{a, coord_zero()});
        HEltP zb = c.bern->central_p(*c.chp, XtCoweight{b, coord_zero()});
        HEltP zab = c.bern->central_p(*c.chp, XtCoweight{a + b, coord_zero()});
        if (!(m.act(m.act(one, za), zb) == m.act(one, zab)))
          fail(res, "T-multiplicativity failed on the cyclic generator");
      }
  }
}

std::vector<AffineChar> twist_chars(const Ctx& c) {
  std::vector<AffineChar> out;
  for (const AffineChar& x : c.theory->all())
    if (c.theory->is_triv_or_sign_twist(x)) out.push_back(x);
  return out;
}

// builds the 1-dimensional module attached to a twist character (sigma fixed
// by the configured scalars on free generators)
std::optional<InducedModule> twist_module(const Ctx& c, const AffineChar& x) {
  auto orb = c.theory->orbit_of(x);
  if (orb.elems.size() != 1) return std::nullopt;
  SigmaChar s;
  size_t free_used = 0;
  for (size_t j = 0; j < orb.q_gens.size(); ++j) {
    if (orb.q_orders[j] == 0) {
      s.gen_val.push_back(c.pi_scalars_mod[free_used % c.pi_scalars_mod.size()]);
      ++free_used;
    } else {
      TildeElt h = c.theory->omega_lift(orb.q_gens[j]);
      TildeElt pw = ExtendedGroup::identity();
      for (long long i = 0; i < orb.q_orders[j]; ++i) pw = c.grp->mult(pw, h);
      Fel target = c.grp->char_value(*c.modfield, x.xi, c.grp->torus_reduce(-pw.t));
      auto roots = c.modfield->roots(target, static_cast<int>(orb.q_orders[j]));
      if (roots.empty()) return std::nullopt;
      s.gen_val.push_back(roots.front());
    }
  }
  return InducedModule(c.theory, c.modfield, orb, s);
}

void check_lemma_5_12(const Ctx& c, CheckResult& res) {
  if (!c.grp->datum().irreducible()) {
    res.status = CheckResult::Status::Inconclusive;
    res.note = "needs an irreducible root system";
    return;
  }
  for (const AffineChar& x : twist_chars(c)) {
    auto m = twist_module(c, x);
    if (!m) continue;
    ++res.instances;
    std::mt19937_64 rng(c.check_seed(res.name));
    if (!m->verify_relations(rng, 12, *c.chpmod)) {
      fail(res, "twist module failed the relation suite");
      continue;
    }
    if (is_supersingular_module(*m, *c.bern, *c.chpmod))
      fail(res, "twist module is supersingular");
    bool invertible = false;
    for (const Coord& g : c.bern->ideal_generators()) {
      FMat z = m->act(*c.chpmod, c.bern->central_p(*c.chpmod, XtCoweight{g, coord_zero()}));
      if (finvertible(*c.modfield, z)) invertible = true;
    }
    if (!invertible) fail(res, "no invertible z action on a twist module");
  }
}

void check_thm_5_14(const Ctx& c, CheckResult& res) {
  if (!c.grp->datum().irreducible()) {
    res.status = CheckResult::Status::Inconclusive;
    res.note = "needs an irreducible root system";
    return;
  }
  ClassifyOptions opts;
  for (int i = 0; i < c.grp->aw().n_free(); ++i)
    opts.pi_scalars.push_back(c.pi_scalars_mod[i % c.pi_scalars_mod.size()]);
  auto mods = classify(c.theory, c.modfield, c.bern, opts);
  for (const auto& m : mods) {
    ++res.instances;
    if (!m.supersingular) fail(res, "classified module is not supersingular");
    if (!m.irreducible) fail(res, "classified module has a nontrivial commutant");
    for (const Coord& g : c.bern->ideal_generators()) {
      FMat z = m.module->act(*c.chpmod,
                             c.bern->central_p(*c.chpmod, XtCoweight{g, coord_zero()}));
      if (!z.is_zero()) fail(res, "ideal generator acts nonzero on a classified module");
    }
    // z_O with torus twists also act as zero (the full positive-length center)
    for (const XtCoweight& lt : orbit_reps(c, std::min(4, c.cfg.max_len))) {
      if (c.bern->translation_length(lt) == 0) continue;
      ++res.instances;
      FMat z = m.module->act(*c.chpmod, c.bern->central_p(*c.chpmod, lt));
      if (!z.is_zero()) fail(res, "positive-length central function acts nonzero");
    }
  }
  // converse on the twist modules
  for (const AffineChar& x : twist_chars(c)) {
    auto m = twist_module(c, x);
    if (!m) continue;
    ++res.instances;
    bool invertible = false;
    for (const Coord& g : c.bern->ideal_generators())
      if (finvertible(*c.modfield,
                      m->act(*c.chpmod, c.bern->central_p(*c.chpmod,
                                                          XtCoweight{g, coord_zero()}))))
        invertible = true;
    if (!invertible) fail(res, "twist-containing module with no invertible z");
  }
}

// --------------------------------------------------------------------------
// brute-force enumeration of simple modules of small dimension
// --------------------------------------------------------------------------

std::vector<Coord> central_lattice_basis(const Ctx& c) {
  std::vector<Coord> out;
  for (const Coord& lam : c.grp->datum().dominant_hilbert_basis())
    if (c.grp->length(c.grp->splitting(lam)) == 0 && c.grp->datum().dominant(lam)) {
      // keep one representative per +- pair
      bool have = false;
      for (const Coord& x : out)
        if (x == -lam) have = true;
      if (!have) out.push_back(lam);
    }
  std::sort(out.begin(), out.end());
  return out;
}

SimpleModuleSignature signature_of(const Ctx& c, const ClassifiedModule& m) {
  SimpleModuleSignature s;
  s.dim = m.module->dim();
  s.content = m.module->orbit().elems;
  std::sort(s.content.begin(), s.content.end());
  for (const Coord& lam : central_lattice_basis(c))
    s.omega_scalars.push_back(m.module->act_tau(c.grp->splitting(lam)).at(0, 0));
  s.supersingular = m.supersingular;
  return s;
}

// evaluates the candidate one-dimensional assignment on a basis element
struct Dim1Candidate {
  TorusChar xi;
  std::vector<Fel> letter;  // value at each n_A
  std::vector<Fel> omega;   // value at each Omega generator lift
};

Fel dim1_value(const Ctx& c, const GF& f, const Dim1Candidate& cand, const TildeElt& w) {
  auto fac = c.grp->factor(w);
  Fel r = c.grp->char_value(f, cand.xi, fac.t);
  // canonical lift of the Omega part: product of generator lifts + torus fix
  auto cls = c.grp->aw().omega_class(fac.omega.lam);
  std::vector<long long> e;
  for (int i = 0; i < c.grp->aw().n_free(); ++i) e.push_back(cls.free[i]);
  for (int i = 0; i < c.grp->aw().n_torsion(); ++i) e.push_back(cls.torsion[i]);
  TildeElt prod = ExtendedGroup::identity();
  const auto& gens = c.grp->omega_tilde_generators();
  for (size_t i = 0; i < gens.size(); ++i) {
    TildeElt step = e[i] >= 0 ? gens[i] : c.grp->inverse(gens[i]);
    for (long long k = 0; k < std::llabs(e[i]); ++k) prod = c.grp->mult(prod, step);
    r = f.mul(r, f.pow(cand.omega[i], e[i]));
  }
  TildeElt corr = c.grp->mult(fac.omega, c.grp->inverse(prod));
  if (!c.grp->is_torus(corr)) throw std::logic_error("Omega correction is not a torus element");
  r = f.mul(r, c.grp->char_value(f, cand.xi, corr.t));
  for (int i : fac.letters) r = f.mul(r, cand.letter[i]);
  return r;
}

// Uniformizer scalars used identically by both enumeration pipelines: the
// full group of (q-1)-th roots of unity inside the classification field.
std::vector<Fel> canonical_pi_scalars(const Ctx& c) {
  std::vector<Fel> out;
  long long mu = std::max(1, c.grp->modulus());
  long long stride = (c.modfield->q() - 1) / mu;
  for (long long k = 0; k < mu; ++k) out.push_back(c.modfield->gpow(k * stride));
  return out;
}

// Largest module dimension the independent enumerator covers on this datum.
int brute_force_dim_bound(const Ctx& c) {
  const ExtendedGroup& g = *c.grp;
  bool gl2_shape = g.datum().weyl().size() == 2 && g.aw().naff() == 2 &&
                   c.theory->n_omega_gens() == 1 && c.theory->omega_gen_order(0) == 0;
  return gl2_shape ? 2 : 1;
}


std::vector<SimpleModuleSignature> brute_force_dim1(const Ctx& c) {
  const GF& f = *c.modfield;
  std::mt19937_64 rng(c.check_seed("brute-dim1"));
  // sample products used for the consistency filter
  std::vector<std::pair<TildeElt, TildeElt>> pairs;
  std::vector<HEltP> products;
  for (int i = 0; i < c.grp->aw().naff(); ++i)
    for (int j = 0; j < c.grp->aw().naff(); ++j)
      pairs.push_back({c.grp->lift_affine(i), c.grp->lift_affine(j)});
  for (int it = 0; it < 40; ++it)
    pairs.push_back({random_elt(c, rng, 2, 4), random_elt(c, rng, 2, 4)});
  for (const TildeElt& om : c.grp->omega_tilde_generators()) {
    for (int i = 0; i < c.grp->aw().naff(); ++i) {
      pairs.push_back({om, c.grp->lift_affine(i)});
      pairs.push_back({c.grp->lift_affine(i), om});
    }
    // torus-versus-omega pairs pin the conjugation action of the torus
    // character even when every letter value vanishes
    for (int i = 0; i < c.grp->datum().rank(); ++i) {
      Coord e{};
      e[i] = 1;
      pairs.push_back({om, c.grp->torus(e)});
      pairs.push_back({c.grp->torus(e), om});
    }
  }
  for (auto& [a, b] : pairs) products.push_back(c.chpmod->mul(c.chpmod->tau(a), c.chpmod->tau(b)));

  std::vector<SimpleModuleSignature> out;
  int naff = c.grp->aw().naff();
  for (const TorusChar& xi : c.grp->characters()) {
    // letter candidates from the quadratic relation
    std::vector<std::vector<Fel>> lc(naff);
    for (int i = 0; i < naff; ++i) {
      Fel csum = GF::zero;
      for (const Coord& t : c.grp->subtorus(i))
        csum = f.add(csum, c.grp->char_value(f, xi, t));
      csum = f.mul(csum, f.from_int(c.grp->subtorus_scale(i)));
      lc[i] = {GF::zero};
      if (csum != GF::zero) lc[i].push_back(csum);
    }
    // omega scalar candidates: user scalars on free generators, all field
    // units of the right order on torsion generators
    std::vector<std::vector<Fel>> oc;
    for (int i = 0; i < c.theory->n_omega_gens(); ++i) {
      if (c.theory->omega_gen_order(i) == 0) {
        oc.push_back(canonical_pi_scalars(c));
      } else {
        std::vector<Fel> all;
        for (Fel x = 1; x < f.q(); ++x) all.push_back(x);
        oc.push_back(all);
      }
    }
    // iterate the product of the candidate sets
    std::vector<size_t> idx(naff + oc.size(), 0);
    while (true) {
      Dim1Candidate cand;
      cand.xi = xi;
      for (int i = 0; i < naff; ++i) cand.letter.push_back(lc[i][idx[i]]);
      for (size_t i = 0; i < oc.size(); ++i) cand.omega.push_back(oc[i][idx[naff + i]]);
      bool ok = true;
      for (size_t k = 0; k < pairs.size() && ok; ++k) {
        Fel lhs = f.mul(dim1_value(c, f, cand, pairs[k].first),
                        dim1_value(c, f, cand, pairs[k].second));
        Fel rhs = GF::zero;
        for (const auto& [w, coeff] : products[k])
          rhs = f.add(rhs, f.mul(coeff, dim1_value(c, f, cand, w)));
        ok = lhs == rhs;
      }
      if (ok) {
        SimpleModuleSignature s;
        s.dim = 1;
        AffineChar x;
        x.xi = xi;
        x.val.assign(naff, 0);
        for (int i = 0; i < naff; ++i)
          if (cand.letter[i] != GF::zero) x.val[i] = -1;
        s.content = {x};
        for (const Coord& lam : central_lattice_basis(c))
          s.omega_scalars.push_back(dim1_value(c, f, cand, c.grp->splitting(lam)));
        // supersingular: the ideal generators evaluate to zero
        s.supersingular = true;
        for (const Coord& g : c.bern->ideal_generators()) {
          Fel v = GF::zero;
          for (const auto& [w, coeff] :
               c.bern->central_p(*c.chpmod, XtCoweight{g, coord_zero()}))
            v = f.add(v, f.mul(coeff, dim1_value(c, f, cand, w)));
          if (v != GF::zero) s.supersingular = false;
        }
        out.push_back(std::move(s));
      }
      size_t k = 0;
      while (k < idx.size()) {
        size_t limit = k < static_cast<size_t>(naff) ? lc[k].size() : oc[k - naff].size();
        if (idx[k] + 1 < limit) {
          ++idx[k];
          break;
        }
        idx[k++] = 0;
      }
      if (k == idx.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Brute-force enumeration of the two-dimensional simples for the GL2 shape:
// torus action diagonal diag(xi1, xi2), one letter matrix free, the other
// determined by conjugation with the length-zero generator, the generator
// squaring to a scalar by centrality of e^{(1,1)}.
struct TermChain {
  Coord t;
  long long om_exp = 0;
  Coord corr_t;
  std::vector<int> letters;
  Fel coeff = 0;
};

std::vector<SimpleModuleSignature> brute_force_dim2(const Ctx& c) {
  const GF& f = *c.modfield;
  const ExtendedGroup& g = *c.grp;
  if (g.datum().weyl().size() != 2 || g.aw().naff() != 2 ||
      c.theory->n_omega_gens() != 1 || c.theory->omega_gen_order(0) != 0)
    return {};  // tailored to the GL2 shape
  std::mt19937_64 rng(c.check_seed("brute-dim2"));
  TildeElt om = g.omega_tilde_generators()[0];

  auto chain_of = [&](const TildeElt& w, Fel coeff) {
    TermChain tc;
    auto fac = g.factor(w);
    tc.t = fac.t;
    auto cls = g.aw().omega_class(fac.omega.lam);
    tc.om_exp = cls.free[0];
    TildeElt prod = ExtendedGroup::identity();
    TildeElt step = tc.om_exp >= 0 ? om : g.inverse(om);
    for (long long k = 0; k < std::llabs(tc.om_exp); ++k) prod = g.mult(prod, step);
    TildeElt corr = g.mult(fac.omega, g.inverse(prod));
    if (!g.is_torus(corr)) throw std::logic_error("bad Omega correction");
    tc.corr_t = corr.t;
    tc.letters = fac.letters;
    tc.coeff = coeff;
    return tc;
  };

  // sampled products with precomputed chains
  std::vector<std::pair<TildeElt, TildeElt>> pairs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) pairs.push_back({g.lift_affine(i), g.lift_affine(j)});
  for (int i = 0; i < 2; ++i) {
    pairs.push_back({om, g.lift_affine(i)});
    pairs.push_back({g.lift_affine(i), om});
  }
  for (int it = 0; it < 30; ++it)
    pairs.push_back({random_elt(c, rng, 2, 4), random_elt(c, rng, 2, 4)});
  std::vector<std::pair<TermChain, TermChain>> pair_chains;
  std::vector<std::vector<TermChain>> product_chains;
  for (auto& [a, b] : pairs) {
    pair_chains.push_back({chain_of(a, GF::one), chain_of(b, GF::one)});
    std::vector<TermChain> terms;
    for (const auto& [w, coeff] : c.chpmod->mul(c.chpmod->tau(a), c.chpmod->tau(b)))
      terms.push_back(chain_of(w, coeff));
    product_chains.push_back(std::move(terms));
  }

  // conjugation data: omega n_1 omega^{-1} = t' n_{A'}
  TildeElt conj = g.mult(g.mult(om, g.lift_affine(1)), g.inverse(om));
  AffRoot target = g.aw().act(g.aw().inverse(g.project(om)), g.aw().simple_aff(1).aff);
  int target_letter = -1;
  for (int i = 0; i < 2; ++i)
    if (g.aw().simple_aff(i).aff == target) target_letter = i;
  if (target_letter < 0) throw std::logic_error("conjugation letter not found");
  TildeElt tprime = g.mult(conj, g.inverse(g.lift_affine(target_letter)));
  if (!g.is_torus(tprime)) throw std::logic_error("conjugation residue not in torus");

  std::vector<SimpleModuleSignature> out;
  auto chars = g.characters();
  auto minv2 = [&](const FMat& w) {
    Fel det = f.sub(f.mul(w.at(0, 0), w.at(1, 1)), f.mul(w.at(0, 1), w.at(1, 0)));
    Fel di = f.inv(det);
    FMat wi(2, 2);
    wi.at(0, 0) = f.mul(w.at(1, 1), di);
    wi.at(1, 1) = f.mul(w.at(0, 0), di);
    wi.at(0, 1) = f.mul(f.neg(w.at(0, 1)), di);
    wi.at(1, 0) = f.mul(f.neg(w.at(1, 0)), di);
    return wi;
  };
  for (size_t i1 = 0; i1 < chars.size(); ++i1)
    for (size_t i2 = i1; i2 < chars.size(); ++i2) {
      const TorusChar &xi1 = chars[i1], &xi2 = chars[i2];
      int mod = std::max(1, g.modulus());
      auto letter_pattern = [&](int r, int cc, int letter) {
        const TorusChar& xr = r == 0 ? xi1 : xi2;
        const TorusChar& xc = cc == 0 ? xi1 : xi2;
        int su = g.aw().simple_aff(letter).reflection_u;
        for (int k = 0; k < g.datum().rank(); ++k) {
          Coord e{};
          e[k] = 1;
          if ((dot(xr.a, g.torus_apply(su, e)) - dot(xc.a, e)) % mod != 0) return false;
        }
        return true;
      };
      auto omega_pattern = [&](int r, int cc) {
        const TorusChar& xr = r == 0 ? xi1 : xi2;
        const TorusChar& xc = cc == 0 ? xi1 : xi2;
        for (int k = 0; k < g.datum().rank(); ++k) {
          Coord e{};
          e[k] = 1;
          if ((dot(xr.a, g.torus_apply(g.datum().weyl().inverse(om.u), e)) -
               dot(xc.a, e)) % mod != 0)
            return false;
        }
        return true;
      };
      auto torus_mat = [&](const Coord& t) {
        FMat m(2, 2);
        m.at(0, 0) = g.char_value(f, xi1, g.torus_reduce(t));
        m.at(1, 1) = g.char_value(f, xi2, g.torus_reduce(t));
        return m;
      };
      auto csum = [&](int letter, const TorusChar& xi) {
        Fel v = GF::zero;
        for (const Coord& t : g.subtorus(letter))
          v = f.add(v, g.char_value(f, xi, t));
        return f.mul(v, f.from_int(g.subtorus_scale(letter)));
      };
      // X_1 candidates: quadratic solutions respecting the torus pattern
      std::vector<FMat> x1cands;
      {
        FMat cmat(2, 2);
        cmat.at(0, 0) = csum(1, xi1);
        cmat.at(1, 1) = csum(1, xi2);
        for (Fel a = 0; a < f.q(); ++a) {
          if (a != 0 && !letter_pattern(0, 0, 1)) continue;
          for (Fel d = 0; d < f.q(); ++d) {
            if (d != 0 && !letter_pattern(1, 1, 1)) continue;
            for (Fel b = 0; b < f.q(); ++b) {
              if (b != 0 && !letter_pattern(0, 1, 1)) continue;
              for (Fel cc = 0; cc < f.q(); ++cc) {
                if (cc != 0 && !letter_pattern(1, 0, 1)) continue;
                FMat m(2, 2);
                m.at(0, 0) = a;
                m.at(0, 1) = b;
                m.at(1, 0) = cc;
                m.at(1, 1) = d;
                if (fmul(f, m, m) == fmul(f, cmat, m)) x1cands.push_back(m);
              }
            }
          }
        }
      }
      // W candidates: torus pattern, invertible, W^2 scalar (centrality of
      // the square of the length-zero generator)
      std::vector<FMat> wcands;
      for (Fel a = 0; a < f.q(); ++a) {
        if (a != 0 && !omega_pattern(0, 0)) continue;
        for (Fel d = 0; d < f.q(); ++d) {
          if (d != 0 && !omega_pattern(1, 1)) continue;
          for (Fel b = 0; b < f.q(); ++b) {
            if (b != 0 && !omega_pattern(0, 1)) continue;
            for (Fel cc = 0; cc < f.q(); ++cc) {
              if (cc != 0 && !omega_pattern(1, 0)) continue;
              FMat m(2, 2);
              m.at(0, 0) = a;
              m.at(0, 1) = b;
              m.at(1, 0) = cc;
              m.at(1, 1) = d;
              if (!finvertible(f, m)) continue;
              FMat sq = fmul(f, m, m);
              if (sq.at(0, 1) != 0 || sq.at(1, 0) != 0 || sq.at(0, 0) != sq.at(1, 1))
                continue;
              wcands.push_back(m);
            }
          }
        }
      }
      for (const FMat& x1 : x1cands)
        for (const FMat& w : wcands) {
          // the other letter is forced by conjugation:
          // W X_target W^{-1} = T_{t'} X_1  =>  X_target = W^{-1} T_{t'} X_1 W
          FMat winv = minv2(w);
          FMat xt = fmul(f, fmul(f, winv, fmul(f, torus_mat(tprime.t), x1)), w);
          FMat x0 = target_letter == 0 ? xt : x1;
          FMat x1f = target_letter == 0 ? x1 : xt;
          // quadratic check for the forced letter
          {
            FMat cmat(2, 2);
            int forced = target_letter;
            cmat.at(0, 0) = csum(forced, xi1);
            cmat.at(1, 1) = csum(forced, xi2);
            const FMat& m = forced == 0 ? x0 : x1f;
            if (!(fmul(f, m, m) == fmul(f, cmat, m))) continue;
          }
          auto eval_chain = [&](const TermChain& tc) {
            FMat r = torus_mat(tc.t);
            FMat wp = FMat::identity(f, 2);
            FMat wuse = tc.om_exp >= 0 ? w : winv;
            for (long long k = 0; k < std::llabs(tc.om_exp); ++k) wp = fmul(f, wp, wuse);
            r = fmul(f, fmul(f, r, wp), torus_mat(tc.corr_t));
            for (int i : tc.letters) r = fmul(f, r, i == 0 ? x0 : x1f);
            return r;
          };
          bool ok = true;
          for (size_t k = 0; k < pair_chains.size() && ok; ++k) {
            FMat lhs = fmul(f, eval_chain(pair_chains[k].first),
                            eval_chain(pair_chains[k].second));
            FMat rhs(2, 2);
            for (const TermChain& tc : product_chains[k])
              rhs = fadd(f, rhs, fscale(f, eval_chain(tc), tc.coeff));
            ok = lhs == rhs;
          }
          if (!ok) continue;
          std::vector<FMat> torus, letters;
          for (int k = 0; k < g.datum().rank(); ++k) {
            Coord e{};
            e[k] = 1;
            torus.push_back(torus_mat(e));
          }
          letters = {x0, x1f};
          std::vector<FMat> gens = torus;
          gens.push_back(x0);
          gens.push_back(x1f);
          gens.push_back(w);
          if (intertwiner_dim(f, gens, gens) != 1) continue;
          SimpleModuleSignature s;
          s.dim = 2;
          for (const auto& [x, mult] :
               contained_affine_characters(*c.theory, f, torus, letters))
            for (int k = 0; k < mult; ++k) s.content.push_back(x);
          std::sort(s.content.begin(), s.content.end());
          bool scalar_ok = true;
          for (const Coord& lam : central_lattice_basis(c)) {
            FMat zm = eval_chain(chain_of(g.splitting(lam), GF::one));
            if (zm.at(0, 1) != 0 || zm.at(1, 0) != 0 || zm.at(0, 0) != zm.at(1, 1)) {
              scalar_ok = false;
              break;
            }
            s.omega_scalars.push_back(zm.at(0, 0));
          }
          if (!scalar_ok) continue;
          s.supersingular = true;
          for (const Coord& gz : c.bern->ideal_generators()) {
            FMat zm(2, 2);
            for (const auto& [elt, coeff] :
                 c.bern->central_p(*c.chpmod, XtCoweight{gz, coord_zero()}))
              zm = fadd(f, zm, fscale(f, eval_chain(chain_of(elt, GF::one)), coeff));
            if (!fnilpotent(f, zm)) s.supersingular = false;
          }
          out.push_back(std::move(s));
        }
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::vector<SimpleModuleSignature>& brute_force(const Ctx& c) {
  std::lock_guard<std::mutex> lock(c.brute_mu);
  if (!c.brute_cache) {
    auto list = brute_force_dim1(c);
    auto d2 = brute_force_dim2(c);
    list.insert(list.end(), d2.begin(), d2.end());
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    c.brute_cache = std::move(list);
  }
  return *c.brute_cache;
}

void check_cor_5_16(const Ctx& c, CheckResult& res) {
  if (!c.grp->datum().irreducible()) {
    res.status = CheckResult::Status::Inconclusive;
    res.note = "needs an irreducible root system";
    return;
  }
  int bound = brute_force_dim_bound(c);
  // classification pipeline, one run per uniformizer scalar in mu_{q-1}
  std::vector<SimpleModuleSignature> classified;
  int nfree = c.grp->aw().n_free();
  std::vector<std::vector<Fel>> scalar_runs;
  if (nfree == 0) {
    scalar_runs.push_back({});
  } else {
    for (Fel s : canonical_pi_scalars(c)) scalar_runs.push_back(std::vector<Fel>(nfree, s));
  }
  bool skipped_high_dim = false;
  for (const auto& run : scalar_runs) {
    ClassifyOptions opts;
    opts.pi_scalars = run;
    for (const auto& m : classify(c.theory, c.modfield, c.bern, opts)) {
      if (m.module->dim() > bound) {
        skipped_high_dim = true;
        continue;
      }
      classified.push_back(signature_of(c, m));
    }
  }
  std::sort(classified.begin(), classified.end());
  classified.erase(std::unique(classified.begin(), classified.end()), classified.end());

  std::vector<SimpleModuleSignature> brute;
  for (const SimpleModuleSignature& s : brute_force(c)) {
    if (!s.supersingular || s.dim > bound) continue;
    brute.push_back(s);
  }
  std::sort(brute.begin(), brute.end());
  brute.erase(std::unique(brute.begin(), brute.end()), brute.end());

  res.instances = static_cast<long long>(classified.size() + brute.size());
  if (skipped_high_dim)
    res.note = "modules above dimension " + std::to_string(bound) +
               " are outside the enumeration bound on this datum";
  if (classified != brute) {
    std::ostringstream os;
    os << "pipelines disagree: classification yields " << classified.size()
       << " modules, enumeration yields " << brute.size();
    fail(res, os.str());
  }
}

struct CheckSpec {
  const char* name;
  const char* anchor;
  void (*fn)(const Ctx&, CheckResult&);
};

const CheckSpec kChecks[] = {
    {"relations", "associativity; braid products; quadratic relations per (xi, A)",
     check_relations},
    {"lemma-1.2", "det(w) = (-1)^l(w) on the affine subgroup; epsilon_C below translations",
     check_lemma_1_2},
    {"prop-1.3", "distinguished coset representatives: decomposition, lengths, trichotomy",
     check_prop_1_3},
    {"lemma-2.3", "B_F^s(lam) = tau_{e^lam} + shorter terms with integer coefficients",
     check_lemma_2_3},
    {"eq-2.1", "iota_C(B_F^+) = B_F^-", check_eq_2_1},
    {"eq-2.4", "B(mu1) B(mu2) collapses by the Weyl-chamber rule", check_eq_2_4},
    {"prop-2.10", "lam -> z_lam is multiplicative on dominants; z_lam is central",
     check_prop_2_10},
    {"thm-2.14-partial", "eps_1 z_lam is central and multiplicative in the Iwahori part",
     check_thm_2_14},
    {"lemma-3.1", "support of z_O: coefficient 1 at orbit translations, rest shorter",
     check_lemma_3_1},
    {"prop-3.2", "iota_C fixes the central Bernstein functions", check_prop_3_2},
    {"lemma-3.4", "orbit sums of B_F^s do not depend on the facet or the sign",
     check_lemma_3_4},
    {"lemma-3.8", "j_F^+ carries the relative Bernstein map to the absolute one",
     check_lemma_3_8},
    {"eq-3.1", "length defects agree between the group and its Levi", check_eq_3_1},
    {"eq-5.1", "B_{x0}^+(d) = (-1)^l(d) iota(tau_d) on distinguished elements; base change",
     check_eq_5_1},
    {"lemma-5.3", "ideal times filtration step n lands in step n+1", check_lemma_5_3},
    {"fact-iii", "B((m+1) lam) = z_lam^m B(lam)", check_fact_iii},
    {"remark-4.2", "z_lam and B_{F_chi}^+(lam) agree on the cyclic generator",
     check_remark_4_2},
    {"lemma-5.12", "trivial/sign twists are not supersingular; z acts invertibly",
     check_lemma_5_12},
    {"thm-5.14", "supersingular simples = non-twist characters; both directions",
     check_thm_5_14},
    {"cor-5.16-enumeration", "classification agrees with brute-force enumeration",
     check_cor_5_16},
};

}  // namespace

std::vector<std::string> all_check_names() {
  std::vector<std::string> out;
  for (const auto& c : kChecks) out.push_back(c.name);
  return out;
}

VerificationReport run_suite(const SuiteConfig& cfg) {
  VerificationReport report;
  report.cfg = cfg;
  auto ctx = make_ctx(cfg);
  if (!cfg.inject_fault.empty()) {
    if (cfg.inject_fault == "quadratic")
      g_fault_quadratic = 1;
    else
      throw ConfigError("unknown fault: " + cfg.inject_fault);
  }
  std::vector<const CheckSpec*> selected;
  for (const auto& spec : kChecks) {
    if (!cfg.checks.empty() &&
        std::find(cfg.checks.begin(), cfg.checks.end(), spec.name) == cfg.checks.end())
      continue;
    selected.push_back(&spec);
  }
  if (!cfg.checks.empty() && selected.size() != cfg.checks.size())
    throw ConfigError("unknown check name in the selection");

  std::vector<CheckResult> results(selected.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= selected.size()) break;
      CheckResult& res = results[i];
      res.name = selected[i]->name;
      res.anchor = selected[i]->anchor;
      auto start = std::chrono::steady_clock::now();
      try {
        selected[i]->fn(*ctx, res);
      } catch (const std::exception& ex) {
        res.status = CheckResult::Status::Fail;
        res.counterexample = std::string("exception: ") + ex.what();
      }
      res.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      if (res.status == CheckResult::Status::Fail && !res.counterexample.empty())
        res.counterexample += " [seed " + std::to_string(cfg.seed) + "]";
    }
  };
  int jobs = std::max(1, cfg.jobs);
  std::vector<std::thread> pool;
  for (int i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  g_fault_quadratic = 0;
  report.checks = results;
  return report;
}

std::string report_pretty(const VerificationReport& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    const char* status = c.status == CheckResult::Status::Pass          ? "PASS"
                         : c.status == CheckResult::Status::Inconclusive ? "INCONCLUSIVE"
                                                                         : "FAIL";
    os << "[" << status << "] " << c.name << " (" << c.instances << " instances, "
       << static_cast<long long>(c.wall_ms) << " ms) - " << c.anchor << "\n";
    if (!c.note.empty()) os << "       note: " << c.note << "\n";
    if (c.status == CheckResult::Status::Fail)
      os << "       counterexample: " << c.counterexample << "\n";
  }
  os << (r.all_pass() ? "all checks passed" : "FAILURES PRESENT") << "\n";
  return os.str();
}

std::string report_tsv(const VerificationReport& r) {
  std::ostringstream os;
  os << "check\tstatus\tinstances\tanchor\tcounterexample\n";
  for (const auto& c : r.checks) {
    const char* status = c.status == CheckResult::Status::Pass          ? "PASS"
                         : c.status == CheckResult::Status::Inconclusive ? "INCONCLUSIVE"
                                                                         : "FAIL";
    os << c.name << "\t" << status << "\t" << c.instances << "\t" << c.anchor << "\t"
       << c.counterexample << "\n";
  }
  return os.str();
}

std::string report_json(const VerificationReport& r) {
  Json j;
  j["group"] = r.cfg.group;
  j["q"] = r.cfg.q;
  j["seed"] = r.cfg.seed;
  j["max_len"] = r.cfg.max_len;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["instances"] = c.instances;
    e["status"] = c.status == CheckResult::Status::Pass          ? "PASS"
                  : c.status == CheckResult::Status::Inconclusive ? "INCONCLUSIVE"
                                                                  : "FAIL";
    if (!c.note.empty()) e["note"] = c.note;
    if (c.status == CheckResult::Status::Fail) e["counterexample"] = c.counterexample;
    checks.push_back(e);
  }
  j["checks"] = checks;
  j["all_pass"] = r.all_pass();
  return j.dump(2);
}

std::vector<std::string> emit_tables(const SuiteConfig& cfg,
                                     const std::vector<std::string>& kinds) {
  std::vector<std::string> written;
  if (kinds.empty()) return written;
  auto want = [&](const char* k) {
    return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
  };
  auto ctx = make_ctx(cfg);
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  std::string stem = cfg.group + "_q" + std::to_string(cfg.q) + "_";

  if (want("ztable")) {
    Json j = Json::array();
    for (const Coord& lam : ctx->bern->ideal_generators()) {
      Json e;
      e["lambda"] = welt_to_json(ctx->grp->aw(), ctx->grp->aw().translation(lam))["lambda"];
      e["z"] = hecke_to_json(*ctx->gen, ctx->bern->central(lam));
      j.push_back(e);
    }
    fs::path p = fs::path(cfg.out_dir) / (stem + "ztable.json");
    std::ofstream(p) << j.dump(2) << "\n";
    written.push_back(p.string());
  }
  if (want("bernstein")) {
    Json j = Json::array();
    for (const WElt& w : ctx->grp->aw().elements_in_box(2)) {
      if (ctx->grp->aw().length(w) > std::min(4, cfg.max_len)) continue;
      TildeElt lift = ctx->grp->lift(w);
      Json e;
      e["w"] = tilde_to_json(*ctx->grp, lift);
      e["basis_elt"] = hecke_to_json(*ctx->gen, ctx->bern->basis_elt(lift));
      j.push_back(e);
    }
    fs::path p = fs::path(cfg.out_dir) / (stem + "bernstein.json");
    std::ofstream(p) << j.dump(2) << "\n";
    written.push_back(p.string());
  }
  if (want("classification") && ctx->grp->datum().irreducible()) {
    ClassifyOptions opts;
    for (int i = 0; i < ctx->grp->aw().n_free(); ++i)
      opts.pi_scalars.push_back(ctx->pi_scalars_mod[i % ctx->pi_scalars_mod.size()]);
    auto mods = classify(ctx->theory, ctx->modfield, ctx->bern, opts);
    Json j = classification_to_json(*ctx->grp, *ctx->modfield, mods);
    fs::path p = fs::path(cfg.out_dir) / (stem + "classification.json");
    std::ofstream(p) << j.dump(2) << "\n";
    written.push_back(p.string());
  }
  return written;
}

}  // namespace prophecke
