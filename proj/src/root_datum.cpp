#include "prophecke/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "prophecke/gf.hpp"

namespace prophecke {

namespace {

long long det_rec(const std::array<std::array<long long, kMaxRank>, kMaxRank>& a,
                  std::vector<int> rows, std::vector<int> cols) {
  if (rows.size() == 1) return a[rows[0]][cols[0]];
  long long det = 0;
  int sign = 1;
  for (size_t k = 0; k < cols.size(); ++k) {
    long long pivot = a[rows[0]][cols[k]];
    if (pivot != 0) {
      std::vector<int> sub_rows(rows.begin() + 1, rows.end());
      std::vector<int> sub_cols;
      for (size_t j = 0; j < cols.size(); ++j)
        if (j != k) sub_cols.push_back(cols[j]);
      det += sign * pivot * det_rec(a, sub_rows, sub_cols);
    }
    sign = -sign;
  }
  return det;
}

int matrix_det(const CMat& m, int rank) {
  std::array<std::array<long long, kMaxRank>, kMaxRank> a{};
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) a[i][j] = m.at(i, j);
  std::vector<int> all(rank);
  for (int i = 0; i < rank; ++i) all[i] = i;
  long long det = det_rec(a, all, all);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

}  // namespace

void WeylGroup::build(const RootDatum& datum) {
  int rank = datum.rank();
  ngens_ = datum.nsimple();
  mat_.clear();
  index_.clear();

  std::vector<CMat> gens(ngens_);
  for (int i = 0; i < ngens_; ++i) {
    CMat m = CMat::identity();
    const Coord& alpha = datum.simple_root(i);
    const Coord& coroot = datum.simple_coroot(i);
    for (int r = 0; r < rank; ++r)
      for (int c = 0; c < rank; ++c)
        m.at(r, c) -= static_cast<int>(alpha[c]) * coroot[r];
    gens[i] = m;
  }

  mat_.push_back(CMat::identity());
  index_[mat_[0]] = 0;
  word_.push_back({});
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int i = 0; i < ngens_; ++i) {
      CMat m = mat_[u].mul(gens[i]);
      if (index_.count(m)) continue;
      int id = static_cast<int>(mat_.size());
      index_[m] = id;
      mat_.push_back(m);
      auto w = word_[u];
      w.push_back(i);
      word_.push_back(std::move(w));
      queue.push_back(id);
      if (mat_.size() > 4096) throw std::logic_error("Weyl group too large");
    }
  }

  int n = size();
  gen_elt_.assign(ngens_, 0);
  for (int i = 0; i < ngens_; ++i) gen_elt_[i] = index_.at(gens[i]);

  mult_.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mult_[a * n + b] = index_.at(mat_[a].mul(mat_[b]));

  inv_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mult_[a * n + b] == 0) inv_[a] = b;

  // action on signed roots and inversion-count lengths
  root_perm_.assign(n, {});
  len_.assign(n, 0);
  det_.assign(n, 1);
  int npos = datum.npos();
  for (int a = 0; a < n; ++a) {
    root_perm_[a].assign(datum.nroots(), 0);
    // roots transform by the contragredient matrix (inverse transpose)
    const CMat& minv = mat_[inv_[a]];
    for (int rIdx = 0; rIdx < datum.nroots(); ++rIdx) {
      Coord alpha = datum.root(rIdx);
      Coord img{};
      for (int c = 0; c < kMaxRank; ++c) {
        long long s = 0;
        for (int r = 0; r < kMaxRank; ++r)
          s += static_cast<long long>(minv.at(r, c)) * alpha[r];
        img[c] = static_cast<int>(s);
      }
      int idx = datum.root_index(img);
      if (idx < 0) throw std::logic_error("Weyl action does not permute roots");
      root_perm_[a][rIdx] = idx;
    }
    int inv_count = 0;
    for (int i = 0; i < npos; ++i)
      if (root_perm_[a][i] >= npos) ++inv_count;
    len_[a] = inv_count;
    det_[a] = matrix_det(mat_[a], rank);
    if (static_cast<int>(word_[a].size()) != len_[a])
      throw std::logic_error("BFS word is not reduced");
  }
}

int WeylGroup::find(const CMat& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

RootDatum::RootDatum(std::string label, int q, int rank,
                     std::vector<Coord> simple_roots,
                     std::vector<Coord> simple_coroots)
    : label_(std::move(label)),
      q_(q),
      rank_(rank),
      simple_roots_(std::move(simple_roots)),
      simple_coroots_(std::move(simple_coroots)) {
  factor_prime_power(q_, p_, s_);
  if (rank_ < 1 || rank_ > kMaxRank) throw std::invalid_argument("rank out of range");
  if (simple_roots_.size() != simple_coroots_.size())
    throw std::invalid_argument("simple roots/coroots mismatch");
  for (size_t i = 0; i < simple_roots_.size(); ++i)
    if (dot(simple_coroots_[i], simple_roots_[i]) != 2)
      throw std::invalid_argument("<coroot, root> must equal 2");
  for (size_t i = 0; i < simple_roots_.size(); ++i)
    for (size_t j = 0; j < simple_roots_.size(); ++j)
      if (i != j && dot(simple_coroots_[i], simple_roots_[j]) > 0)
        throw std::invalid_argument("off-diagonal Cartan entries must be <= 0");
  close_roots();
  build_components();
  weyl_.build(*this);
  // warm the facet subgroup cache so later queries are read-only
  for (uint32_t m = 0; m < (1u << nsimple()); ++m) facet_weyl_elements(Facet{m});
  dominant_hilbert_basis();
}

void RootDatum::close_roots() {
  // reflection closure of the simple (root, coroot) pairs
  std::set<Coord> seen;
  std::vector<std::pair<Coord, Coord>> all;
  for (size_t i = 0; i < simple_roots_.size(); ++i) {
    if (seen.insert(simple_roots_[i]).second)
      all.push_back({simple_roots_[i], simple_coroots_[i]});
  }
  bool grew = true;
  while (grew) {
    grew = false;
    size_t cur = all.size();
    for (size_t k = 0; k < cur; ++k)
      for (size_t i = 0; i < simple_roots_.size(); ++i) {
        const auto& [alpha, alpha_v] = all[k];
        long long c = dot(simple_coroots_[i], alpha);
        Coord beta = alpha - static_cast<int>(c) * simple_roots_[i];
        Coord beta_v = alpha_v - static_cast<int>(dot(alpha_v, simple_roots_[i])) * simple_coroots_[i];
        if (seen.insert(beta).second) {
          all.push_back({beta, beta_v});
          grew = true;
        }
      }
    if (all.size() > 400) throw std::logic_error("root closure does not terminate");
  }

  // split positives (nonnegative expression in the simple roots)
  int ns = nsimple();
  IMat a(rank_, ns);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < ns; ++j) a.at(i, j) = simple_roots_[j][i];
  std::vector<std::tuple<int, Coord, Coord, std::vector<int>>> pos;  // height, root, coroot, expr
  for (const auto& [alpha, alpha_v] : all) {
    std::vector<long long> rhs(rank_), num;
    long long den;
    for (int i = 0; i < rank_; ++i) rhs[i] = alpha[i];
    if (!solve_rational(a, rhs, num, den))
      throw std::logic_error("root not in the span of the simple roots");
    bool nonneg = true, nonpos = true;
    for (long long x : num) {
      if (x < 0) nonneg = false;
      if (x > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) throw std::logic_error("root with mixed expression");
    if (!nonneg) continue;  // keep positives only; negatives come for free
    std::vector<int> expr(ns);
    int height = 0;
    for (int j = 0; j < ns; ++j) {
      if (num[j] % den != 0) throw std::logic_error("non-integral root expression");
      expr[j] = static_cast<int>(num[j] / den);
      height += expr[j];
    }
    pos.push_back({height, alpha, alpha_v, expr});
  }
  std::sort(pos.begin(), pos.end());
  for (auto& [h, alpha, alpha_v, expr] : pos) {
    pos_roots_.push_back(alpha);
    pos_coroots_.push_back(alpha_v);
    pos_expr_.push_back(expr);
    pos_height_.push_back(h);
  }
  for (int i = 0; i < npos(); ++i) {
    root_idx_[pos_roots_[i]] = i;
    root_idx_[-pos_roots_[i]] = i + npos();
  }
}

void RootDatum::build_components() {
  int ns = nsimple();
  comp_of_simple_.assign(ns, -1);
  ncomp_ = 0;
  for (int i = 0; i < ns; ++i) {
    if (comp_of_simple_[i] >= 0) continue;
    std::deque<int> queue{i};
    comp_of_simple_[i] = ncomp_;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < ns; ++v)
        if (comp_of_simple_[v] < 0 && dot(simple_coroots_[u], simple_roots_[v]) != 0) {
          comp_of_simple_[v] = ncomp_;
          queue.push_back(v);
        }
    }
    ++ncomp_;
  }
  comp_of_pos_.assign(npos(), -1);
  for (int i = 0; i < npos(); ++i)
    for (int j = 0; j < ns; ++j)
      if (pos_expr_[i][j] != 0) {
        comp_of_pos_[i] = comp_of_simple_[j];
        break;
      }
  // highest root per component: unique maximal height
  highest_.assign(ncomp_, -1);
  for (int i = 0; i < npos(); ++i) {
    int c = comp_of_pos_[i];
    if (highest_[c] < 0 || pos_height_[i] > pos_height_[highest_[c]]) highest_[c] = i;
  }
}

Coord RootDatum::root(int signed_idx) const {
  return signed_idx < npos() ? pos_roots_[signed_idx] : -pos_roots_[signed_idx - npos()];
}

Coord RootDatum::coroot(int signed_idx) const {
  return signed_idx < npos() ? pos_coroots_[signed_idx] : -pos_coroots_[signed_idx - npos()];
}

int RootDatum::root_index(const Coord& alpha) const {
  auto it = root_idx_.find(alpha);
  return it == root_idx_.end() ? -1 : it->second;
}

int RootDatum::reflection(int signed_root) const {
  Coord alpha = root(signed_root);
  Coord alpha_v = coroot(signed_root);
  CMat m = CMat::identity();
  for (int r = 0; r < rank_; ++r)
    for (int c = 0; c < rank_; ++c) m.at(r, c) -= alpha[c] * alpha_v[r];
  int u = weyl_.find(m);
  if (u < 0) throw std::logic_error("reflection not in Weyl group");
  return u;
}

Coord RootDatum::torus_apply(int u, const Coord& t, int modulus) const {
  Coord r = weyl_.apply(u, t);
  for (int i = 0; i < kMaxRank; ++i) {
    r[i] %= modulus;
    if (r[i] < 0) r[i] += modulus;
  }
  return r;
}

std::vector<Facet> RootDatum::standard_facets() const {
  std::vector<Facet> out;
  for (uint32_t m = 0; m < (1u << nsimple()); ++m) out.push_back(Facet{m});
  return out;
}

bool RootDatum::pos_root_in_facet(int i, Facet f) const {
  for (int j = 0; j < nsimple(); ++j)
    if (pos_expr_[i][j] != 0 && !(f.mask & (1u << j))) return false;
  return true;
}

std::vector<int> RootDatum::facet_pos_roots(Facet f) const {
  std::vector<int> out;
  for (int i = 0; i < npos(); ++i)
    if (pos_root_in_facet(i, f)) out.push_back(i);
  return out;
}

const std::vector<int>& RootDatum::facet_weyl_elements(Facet f) const {
  auto it = facet_elts_.find(f.mask);
  if (it != facet_elts_.end()) return it->second;
  // subgroup generated by the simple reflections in the facet
  std::set<int> elems{weyl_.identity()};
  std::deque<int> queue{weyl_.identity()};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int i = 0; i < nsimple(); ++i) {
      if (!(f.mask & (1u << i))) continue;
      int v = weyl_.mult(u, weyl_.gen(i));
      if (elems.insert(v).second) queue.push_back(v);
    }
  }
  std::vector<int> sorted(elems.begin(), elems.end());
  return facet_elts_.emplace(f.mask, std::move(sorted)).first->second;
}

int RootDatum::facet_longest(Facet f) const {
  const auto& elems = facet_weyl_elements(f);
  int best = weyl_.identity();
  for (int u : elems)
    if (weyl_.length(u) > weyl_.length(best)) best = u;
  return best;
}

bool RootDatum::in_facet_weyl(int u, Facet f) const {
  const auto& elems = facet_weyl_elements(f);
  return std::binary_search(elems.begin(), elems.end(), u);
}

bool RootDatum::chamber_contains(const Coord& lambda, Facet f, Sign sigma) const {
  int s = sigma == Sign::Plus ? 1 : -1;
  for (int i = 0; i < npos(); ++i) {
    long long v = s * dot(lambda, pos_roots_[i]);
    if (pos_root_in_facet(i, f)) {
      if (v > 0) return false;  // needs <lambda, alpha> >= 0 on Phi_F^-
    } else {
      if (v < 0) return false;
    }
  }
  return true;
}

Coord RootDatum::chamber_interior(Facet f, Sign sigma) const {
  if (npos() == 0) return coord_zero();
  for (int radius = 1; radius <= 6; ++radius) {
    // enumerate the box of the given radius
    std::vector<int> idx(rank_, -radius);
    while (true) {
      Coord lambda{};
      for (int i = 0; i < rank_; ++i) lambda[i] = idx[i];
      bool ok = true;
      int s = sigma == Sign::Plus ? 1 : -1;
      for (int i = 0; i < npos() && ok; ++i) {
        long long v = s * dot(lambda, pos_roots_[i]);
        ok = pos_root_in_facet(i, f) ? (v < 0) : (v > 0);
      }
      if (ok) return lambda;
      int k = 0;
      while (k < rank_ && idx[k] == radius) idx[k++] = -radius;
      if (k == rank_) break;
      ++idx[k];
    }
  }
  throw std::logic_error("no interior lattice point found for chamber");
}

std::vector<Coord> RootDatum::weyl_orbit(const Coord& lambda) const {
  std::set<Coord> orbit;
  for (int u = 0; u < weyl_.size(); ++u) orbit.insert(weyl_.apply(u, lambda));
  return {orbit.begin(), orbit.end()};
}

Coord RootDatum::dominant_rep(const Coord& lambda) const {
  Coord cur = lambda;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < nsimple(); ++i)
      if (dot(cur, simple_roots_[i]) < 0) {
        cur = weyl_.apply(weyl_.gen(i), cur);
        moved = true;
      }
  }
  return cur;
}

bool RootDatum::coroot_cone_member(const Coord& delta) const {
  int ns = nsimple();
  if (ns == 0) return is_zero(delta);
  IMat a(rank_, ns);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < ns; ++j) a.at(i, j) = simple_coroots_[j][i];
  std::vector<long long> rhs(rank_), num;
  long long den;
  for (int i = 0; i < rank_; ++i) rhs[i] = delta[i];
  if (!solve_rational(a, rhs, num, den)) return false;
  for (long long x : num)
    if (x * den < 0) return false;
  return true;
}

DomOrder RootDatum::dominance_compare(const Coord& lambda, const Coord& mu) const {
  if (!dominant(lambda) || !dominant(mu))
    throw std::invalid_argument("dominance order requires dominant coweights");
  if (lambda == mu) return DomOrder::Equal;
  if (coroot_cone_member(mu - lambda)) return DomOrder::Less;     // lambda <= mu
  if (coroot_cone_member(lambda - mu)) return DomOrder::Greater;  // mu <= lambda
  return DomOrder::Incomparable;
}

const std::vector<Coord>& RootDatum::dominant_hilbert_basis() const {
  if (!hilbert_.empty()) return hilbert_;
  if (npos() == 0) {
    // pure torus: generators are +- the standard basis
    for (int i = 0; i < rank_; ++i) {
      Coord e{};
      e[i] = 1;
      hilbert_.push_back(e);
      hilbert_.push_back(-e);
    }
    return hilbert_;
  }

  const int kGenBox = 3, kCheckBox = 5;
  // lineality directions: lattice kernel of the pairing with all roots
  std::vector<Coord> lineality;
  {
    IMat a(npos(), rank_);
    for (int i = 0; i < npos(); ++i)
      for (int j = 0; j < rank_; ++j) a.at(i, j) = pos_roots_[i][j];
    SmithResult snf = smith_normal_form(a);
    int r = static_cast<int>(snf.divisors.size());
    // kernel basis: columns of V beyond the rank
    for (int c = r; c < rank_; ++c) {
      Coord v{};
      for (int i = 0; i < rank_; ++i) v[i] = static_cast<int>(snf.v.at(i, c));
      lineality.push_back(v);
    }
  }
  std::vector<Coord> gens;
  for (const Coord& v : lineality) {
    gens.push_back(v);
    gens.push_back(-v);
  }

  // candidates sorted by translation length then descending lex, so that
  // representatives with positive leading coordinates are preferred
  std::vector<std::pair<long long, Coord>> cands;
  std::vector<int> idx(rank_, -kGenBox);
  while (true) {
    Coord lambda{};
    for (int i = 0; i < rank_; ++i) lambda[i] = idx[i];
    if (!is_zero(lambda) && dominant(lambda)) {
      long long h = 0;
      for (int i = 0; i < npos(); ++i) h += dot(lambda, pos_roots_[i]);
      h = 2 * h + sup_norm(lambda);
      cands.push_back({h, lambda});
    }
    int k = 0;
    while (k < rank_ && idx[k] == kGenBox) idx[k++] = -kGenBox;
    if (k == rank_) break;
    ++idx[k];
  }
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return b.second < a.second;
  });

  auto representable = [&](const Coord& c, const std::vector<Coord>& basis) {
    std::set<Coord> visiting;
    std::set<Coord> yes, no;
    auto rec = [&](auto&& self, const Coord& x) -> bool {
      if (is_zero(x)) return true;
      if (yes.count(x)) return true;
      if (no.count(x) || visiting.count(x)) return false;
      if (sup_norm(x) > 3 * kCheckBox) return false;
      visiting.insert(x);
      bool ok = false;
      for (const Coord& g : basis) {
        Coord rest = x - g;
        if (!dominant(rest) && !is_zero(rest)) continue;
        if (self(self, rest)) {
          ok = true;
          break;
        }
      }
      visiting.erase(x);
      (ok ? yes : no).insert(x);
      return ok;
    };
    return rec(rec, c);
  };

  for (const auto& [h, c] : cands) {
    if (!representable(c, gens)) gens.push_back(c);
  }
  // verification sweep over a larger box
  std::vector<int> idx2(rank_, -kCheckBox);
  while (true) {
    Coord lambda{};
    for (int i = 0; i < rank_; ++i) lambda[i] = idx2[i];
    if (dominant(lambda) && !representable(lambda, gens))
      throw std::logic_error("Hilbert basis fails to generate the test box");
    int k = 0;
    while (k < rank_ && idx2[k] == kCheckBox) idx2[k++] = -kCheckBox;
    if (k == rank_) break;
    ++idx2[k];
  }
  hilbert_ = gens;
  return hilbert_;
}

RootDatum::Levi RootDatum::levi(Facet f) const {
  Levi out;
  out.facet = f;
  std::vector<Coord> roots, coroots;
  for (int i = 0; i < nsimple(); ++i)
    if (f.mask & (1u << i)) {
      roots.push_back(simple_roots_[i]);
      coroots.push_back(simple_coroots_[i]);
      out.simple_to_parent.push_back(i);
    }
  auto ld = std::make_shared<RootDatum>(label_ + "/levi" + std::to_string(f.mask),
                                        q_, rank_, roots, coroots);
  out.datum = ld;
  out.u_to_parent.assign(ld->weyl().size(), -1);
  out.u_from_parent.assign(weyl_.size(), -1);
  for (int u = 0; u < ld->weyl().size(); ++u) {
    int pu = weyl_.find(ld->weyl().matrix(u));
    if (pu < 0) throw std::logic_error("Levi Weyl element missing in parent");
    out.u_to_parent[u] = pu;
    out.u_from_parent[pu] = u;
  }
  return out;
}

std::shared_ptr<const RootDatum> RootDatum::build(const std::string& label, int q) {
  auto sc = [&](const std::vector<std::vector<int>>& cartan, const char* name) {
    // simply connected realization: basis of X_* = simple coroots
    int n = static_cast<int>(cartan.size());
    std::vector<Coord> roots(n), coroots(n);
    for (int i = 0; i < n; ++i) {
      Coord e{};
      e[i] = 1;
      coroots[i] = e;
      Coord a{};
      for (int k = 0; k < n; ++k) a[k] = cartan[k][i];  // <coroot_k, root_i>
      roots[i] = a;
    }
    return std::make_shared<RootDatum>(name, q, n, roots, coroots);
  };
  auto cartan_a = [](int n) {
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
      c[i][i] = 2;
      if (i + 1 < n) c[i][i + 1] = c[i + 1][i] = -1;
    }
    return c;
  };

  if (label == "SL2" || label == "SL3" || label == "SL4") {
    int n = label[2] - '0';
    return sc(cartan_a(n - 1), label.c_str());
  }
  if (label == "GL1" || label == "GL2" || label == "GL3" || label == "GL4") {
    int n = label[2] - '0';
    std::vector<Coord> roots, coroots;
    for (int i = 0; i + 1 < n; ++i) {
      Coord a{};
      a[i] = 1;
      a[i + 1] = -1;
      roots.push_back(a);
      coroots.push_back(a);
    }
    return std::make_shared<RootDatum>(label, q, n, roots, coroots);
  }
  if (label == "PGL2" || label == "PGL3" || label == "PGL4") {
    int n = label[3] - '0';
    auto cartan = cartan_a(n - 1);
    int r = n - 1;
    // adjoint realization: basis of X_* = fundamental coweights
    std::vector<Coord> roots(r), coroots(r);
    for (int i = 0; i < r; ++i) {
      Coord a{};
      a[i] = 1;
      roots[i] = a;
      Coord cv{};
      for (int k = 0; k < r; ++k) cv[k] = cartan[i][k];
      coroots[i] = cv;
    }
    return std::make_shared<RootDatum>(label, q, r, roots, coroots);
  }
  if (label == "B2") return sc({{2, -1}, {-2, 2}}, "B2");
  if (label == "C2" || label == "Sp4") return sc({{2, -2}, {-1, 2}}, label.c_str());
  if (label == "G2") return sc({{2, -1}, {-3, 2}}, "G2");
  if (label == "SL2xSL2")
    return sc({{2, 0}, {0, 2}}, "SL2xSL2");
  throw std::invalid_argument("unsupported group label: " + label);
}

}  // namespace prophecke
