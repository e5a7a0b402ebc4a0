#include "prophecke/affine_weyl.hpp"

#include <algorithm>
#include <stdexcept>

namespace prophecke {

AffineWeyl::AffineWeyl(std::shared_ptr<const RootDatum> datum)
    : datum_(std::move(datum)) {
  build_simple_aff();
  build_omega();
}

WElt AffineWeyl::mult(const WElt& a, const WElt& b) const {
  const WeylGroup& w = datum_->weyl();
  WElt r;
  r.u = w.mult(a.u, b.u);
  r.lam = w.apply(w.inverse(b.u), a.lam) + b.lam;
  return r;
}

WElt AffineWeyl::inverse(const WElt& a) const {
  const WeylGroup& w = datum_->weyl();
  WElt r;
  r.u = w.inverse(a.u);
  r.lam = -w.apply(a.u, a.lam);
  return r;
}

void AffineWeyl::build_simple_aff() {
  const RootDatum& d = *datum_;
  for (int i = 0; i < d.nsimple(); ++i) {
    SimpleAffData s;
    s.aff = AffRoot{d.root_index(d.simple_root(i)), 0};
    s.reflection_u = d.weyl().gen(i);
    s.coroot = d.simple_coroot(i);
    s.name = "s" + std::to_string(i + 1);
    simple_aff_.push_back(std::move(s));
  }
  for (int c = 0; c < d.ncomponents(); ++c) {
    int hi = d.highest_root(c);
    SimpleAffData s;
    s.aff = AffRoot{d.negate_root(hi), 1};
    s.reflection_u = d.reflection(hi);
    s.coroot = -d.pos_coroot(hi);
    s.name = c == 0 ? "s0" : "s0_" + std::to_string(c);
    simple_aff_.push_back(std::move(s));
  }
}

WElt AffineWeyl::simple_reflection(int i) const {
  const SimpleAffData& s = simple_aff_[i];
  // s_(alpha, r) = s_alpha e^{r alpha_v}
  return WElt{s.aff.r * s.coroot, s.reflection_u};
}

int AffineWeyl::aff_name_index(const std::string& name) const {
  for (int i = 0; i < naff(); ++i)
    if (simple_aff_[i].name == name) return i;
  return -1;
}

AffRoot AffineWeyl::act(const WElt& w, const AffRoot& a) const {
  const RootDatum& d = *datum_;
  int img = d.weyl().root_image(w.u, a.root);
  long long shift = d.pairing(w.lam, d.root(a.root));
  return AffRoot{img, a.r - static_cast<int>(shift)};
}

int AffineWeyl::length_over_roots(const WElt& w, const std::vector<int>& pos_idx) const {
  // number of affine roots (alpha, r) over the given directions inverted by
  // w = u e^lam: per direction max(0, <lam,alpha> + 1 - [u alpha > 0] - [alpha < 0])
  const RootDatum& d = *datum_;
  long long total = 0;
  for (int i : pos_idx) {
    for (int signed_idx : {i, d.negate_root(i)}) {
      long long pair = d.pairing(w.lam, d.root(signed_idx));
      int u_pos = d.is_positive(d.weyl().root_image(w.u, signed_idx)) ? 1 : 0;
      int neg = d.is_positive(signed_idx) ? 0 : 1;
      long long c = pair + 1 - u_pos - neg;
      if (c > 0) total += c;
    }
  }
  return static_cast<int>(total);
}

int AffineWeyl::length(const WElt& w) const {
  std::vector<int> all(datum_->npos());
  for (int i = 0; i < datum_->npos(); ++i) all[i] = i;
  return length_over_roots(w, all);
}

int AffineWeyl::length_oracle(const WElt& w) const {
  const RootDatum& d = *datum_;
  int bound = 1;
  for (int i = 0; i < d.nroots(); ++i)
    bound = std::max(bound, static_cast<int>(std::abs(d.pairing(w.lam, d.root(i)))) + 1);
  int count = 0;
  for (int i = 0; i < d.nroots(); ++i)
    for (int r = -bound; r <= bound; ++r) {
      AffRoot a{i, r};
      if (!aff_root_positive(a)) continue;
      if (!aff_root_positive(act(w, a))) ++count;
    }
  return count;
}

int AffineWeyl::descent(const WElt& w, int aff_idx) const {
  return aff_root_positive(act(w, simple_aff_[aff_idx].aff)) ? +1 : -1;
}

bool AffineWeyl::OmegaClass::trivial() const {
  for (long long x : free)
    if (x != 0) return false;
  for (long long x : torsion)
    if (x != 0) return false;
  return true;
}

void AffineWeyl::build_omega() {
  const RootDatum& d = *datum_;
  int rank = d.rank();
  IMat c(rank, d.nsimple());
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < d.nsimple(); ++j) c.at(i, j) = d.simple_coroot(j)[i];
  SmithResult snf = smith_normal_form(c);
  snf_u_ = snf.u;
  snf_div_ = snf.divisors;
  snf_rank_ = static_cast<int>(snf.divisors.size());
  for (int i = 0; i < snf_rank_; ++i)
    if (snf_div_[i] > 1) {
      torsion_rows_.push_back(i);
      torsion_div_.push_back(snf_div_[i]);
    }
  for (int i = snf_rank_; i < rank; ++i) free_rows_.push_back(i);
  nfree_ = static_cast<int>(free_rows_.size());

  // one length-zero representative per quotient generator, found by search
  auto find_rep = [&](const OmegaClass& target) -> WElt {
    for (int box = 1; box <= 4; ++box) {
      std::vector<int> idx(rank, -box);
      while (true) {
        Coord lam{};
        for (int i = 0; i < rank; ++i) lam[i] = idx[i];
        if (omega_class(lam) == target) {
          for (int u = 0; u < d.weyl().size(); ++u) {
            WElt w{lam, u};
            if (length(w) == 0) return w;
          }
        }
        int k = 0;
        while (k < rank && idx[k] == box) idx[k++] = -box;
        if (k == rank) break;
        ++idx[k];
      }
    }
    throw std::logic_error("no length-zero representative found for Omega class");
  };
  for (int g = 0; g < nfree_; ++g) {
    OmegaClass target;
    target.free.assign(nfree_, 0);
    target.torsion.assign(torsion_div_.size(), 0);
    target.free[g] = 1;
    omega_gen_rep_.push_back(find_rep(target));
  }
  for (size_t g = 0; g < torsion_div_.size(); ++g) {
    OmegaClass target;
    target.free.assign(nfree_, 0);
    target.torsion.assign(torsion_div_.size(), 0);
    target.torsion[g] = 1;
    omega_gen_rep_.push_back(find_rep(target));
  }
}

AffineWeyl::OmegaClass AffineWeyl::omega_class(const Coord& lam) const {
  const int rank = datum_->rank();
  OmegaClass c;
  c.free.assign(nfree_, 0);
  c.torsion.assign(torsion_div_.size(), 0);
  std::vector<long long> y(rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) y[i] += snf_u_.at(i, j) * lam[j];
  for (size_t g = 0; g < torsion_rows_.size(); ++g) {
    long long m = torsion_div_[g];
    long long v = y[torsion_rows_[g]] % m;
    if (v < 0) v += m;
    c.torsion[g] = v;
  }
  for (int g = 0; g < nfree_; ++g) c.free[g] = y[free_rows_[g]];
  return c;
}

WElt AffineWeyl::omega_rep(const OmegaClass& c) const {
  WElt r = identity();
  for (int g = 0; g < nfree_; ++g) {
    long long e = c.free[g];
    const WElt& gen = omega_gen_rep_[g];
    WElt step = e >= 0 ? gen : inverse(gen);
    for (long long k = 0; k < std::llabs(e); ++k) r = mult(r, step);
  }
  for (size_t g = 0; g < torsion_div_.size(); ++g) {
    const WElt& gen = omega_gen_rep_[nfree_ + g];
    for (long long k = 0; k < c.torsion[g]; ++k) r = mult(r, gen);
  }
  return r;
}

AffineWeyl::OmegaDecomposition AffineWeyl::omega_decompose(const WElt& w) const {
  OmegaDecomposition out;
  out.omega = omega_rep(omega_class(w));
  WElt x = mult(inverse(out.omega), w);
  std::vector<int> rev;
  int len = length(x);
  while (len > 0) {
    bool found = false;
    for (int i = 0; i < naff() && !found; ++i) {
      if (descent(x, i) == -1) {
        rev.push_back(i);
        x = mult(x, simple_reflection(i));
        --len;
        found = true;
      }
    }
    if (!found) throw std::logic_error("no descent on a positive length element");
  }
  if (x != identity())
    throw std::logic_error("Omega decomposition did not terminate at the identity");
  out.word.assign(rev.rbegin(), rev.rend());
  return out;
}

bool AffineWeyl::bruhat_leq(const WElt& a, const WElt& b) const {
  if (!(omega_class(a) == omega_class(b))) return false;
  WElt omega = omega_rep(omega_class(a));
  WElt x = mult(inverse(omega), a);
  WElt y = mult(inverse(omega), b);
  int lx = length(x), ly = length(y);
  while (ly > 0) {
    if (lx > ly) return false;
    int i = -1;
    for (int j = 0; j < naff(); ++j)
      if (descent(y, j) == -1) {
        i = j;
        break;
      }
    if (i < 0) throw std::logic_error("no descent on a positive length element");
    y = mult(y, simple_reflection(i));
    --ly;
    if (descent(x, i) == -1) {
      x = mult(x, simple_reflection(i));
      --lx;
    }
  }
  return lx == 0;
}

int AffineWeyl::epsilon_c(const WElt& w) const {
  int det = datum_->weyl().det(w.u);
  return (length(w) % 2 == 0) ? det : -det;
}

bool AffineWeyl::is_distinguished(const WElt& d) const {
  WElt dinv = inverse(d);
  for (int i = 0; i < datum_->nsimple(); ++i) {
    AffRoot a{datum_->root_index(datum_->simple_root(i)), 0};
    if (!aff_root_positive(act(dinv, a))) return false;
  }
  return true;
}

std::pair<Coord, int> AffineWeyl::distinguished_decompose(const WElt& d) const {
  if (!is_distinguished(d))
    throw std::invalid_argument("element is not a distinguished coset representative");
  // d = u e^mu = e^{u mu} u
  Coord lam = datum_->weyl().apply(d.u, d.lam);
  if (!datum_->dominant(lam))
    throw std::logic_error("distinguished element with non-dominant translation part");
  return {lam, d.u};
}

std::pair<int, WElt> AffineWeyl::coset_decompose(const WElt& w) const {
  WElt d = w;
  while (true) {
    WElt dinv = inverse(d);
    int i = -1;
    for (int j = 0; j < datum_->nsimple() && i < 0; ++j) {
      AffRoot a{datum_->root_index(datum_->simple_root(j)), 0};
      if (!aff_root_positive(act(dinv, a))) i = j;
    }
    if (i < 0) break;
    d = mult(finite(datum_->weyl().gen(i)), d);
  }
  WElt w0 = mult(w, inverse(d));
  if (!is_zero(w0.lam))
    throw std::logic_error("coset decomposition left a translation part");
  return {w0.u, d};
}

std::vector<WElt> AffineWeyl::distinguished_upto(int max_len, int box) const {
  std::vector<WElt> out;
  for (const WElt& w : elements_in_box(box))
    if (length(w) <= max_len && is_distinguished(w)) out.push_back(w);
  std::sort(out.begin(), out.end(), [&](const WElt& a, const WElt& b) {
    int la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    return a < b;
  });
  return out;
}

bool AffineWeyl::coweight_f_positive(const Coord& lam, Facet f) const {
  for (int i = 0; i < datum_->npos(); ++i) {
    if (datum_->pos_root_in_facet(i, f)) continue;
    if (datum_->pairing(lam, datum_->pos_root(i)) < 0) return false;
  }
  return true;
}

bool AffineWeyl::is_strongly_f_positive(const Coord& lam, Facet f) const {
  for (int i = 0; i < datum_->npos(); ++i) {
    long long v = datum_->pairing(lam, datum_->pos_root(i));
    if (datum_->pos_root_in_facet(i, f)) {
      if (v != 0) return false;
    } else {
      if (v <= 0) return false;
    }
  }
  return true;
}

bool AffineWeyl::is_f_positive(const WElt& w, Facet f) const {
  if (!datum_->in_facet_weyl(w.u, f))
    throw std::invalid_argument("finite part outside the facet Weyl group");
  WElt winv = inverse(w);
  for (int i = 0; i < datum_->npos(); ++i) {
    if (datum_->pos_root_in_facet(i, f)) continue;
    if (!aff_root_positive(act(winv, AffRoot{i, 0}))) return false;
  }
  return true;
}

int AffineWeyl::length_levi(const WElt& w, Facet f) const {
  if (!datum_->in_facet_weyl(w.u, f))
    throw std::invalid_argument("finite part outside the facet Weyl group");
  return length_over_roots(w, datum_->facet_pos_roots(f));
}

bool AffineWeyl::length_identity_levi(const Coord& mu, const Coord& nu, Facet f) const {
  Coord diff = mu - nu;
  if (!coweight_f_positive(mu, f) || !coweight_f_positive(nu, f) ||
      !coweight_f_positive(diff, f))
    throw std::invalid_argument("length identity requires F-positive inputs");
  auto lfull = [&](const Coord& x) { return length(translation(x)); };
  auto llevi = [&](const Coord& x) { return length_levi(translation(x), f); };
  long long lhs = lfull(diff) + lfull(nu) - lfull(mu);
  long long rhs = llevi(diff) + llevi(nu) - llevi(mu);
  return lhs == rhs;
}

std::vector<WElt> AffineWeyl::elements_in_box(int box) const {
  std::vector<WElt> out;
  int rank = datum_->rank();
  std::vector<int> idx(rank, -box);
  while (true) {
    Coord lam{};
    for (int i = 0; i < rank; ++i) lam[i] = idx[i];
    for (int u = 0; u < datum_->weyl().size(); ++u) out.push_back(WElt{lam, u});
    int k = 0;
    while (k < rank && idx[k] == box) idx[k++] = -box;
    if (k == rank) break;
    ++idx[k];
  }
  return out;
}

}  // namespace prophecke
