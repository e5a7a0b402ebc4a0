#include "prophecke/modules.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace prophecke {

FMat FMat::identity(const GF&, int n) {
  FMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = GF::one;
  return m;
}

FMat fmul(const GF& f, const FMat& x, const FMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  FMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      Fel v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) = f.add(r.at(i, j), f.mul(v, y.at(k, j)));
    }
  return r;
}

FMat fadd(const GF& f, const FMat& x, const FMat& y) {
  FMat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = f.add(r.a[i], y.a[i]);
  return r;
}

FMat fscale(const GF& f, const FMat& x, Fel c) {
  FMat r = x;
  for (auto& v : r.a) v = f.mul(v, c);
  return r;
}

bool fnilpotent(const GF& f, const FMat& x) {
  FMat p = x;
  for (int i = 0; i < x.rows; ++i) {
    if (p.is_zero()) return true;
    p = fmul(f, p, x);
  }
  return p.is_zero();
}

int frank(const GF& f, FMat m) {
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int piv = -1;
    for (int r = rank; r < m.rows; ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.a[piv * m.cols + j], m.a[rank * m.cols + j]);
    Fel inv = f.inv(m.at(rank, c));
    for (int j = 0; j < m.cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), inv);
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank || m.at(r, c) == 0) continue;
      Fel s = m.at(r, c);
      for (int j = 0; j < m.cols; ++j)
        m.at(r, j) = f.sub(m.at(r, j), f.mul(s, m.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

bool finvertible(const GF& f, const FMat& x) {
  return x.rows == x.cols && frank(f, x) == x.rows;
}

int fkernel_dim(const GF& f, const FMat& m) { return m.cols - frank(f, m); }

std::vector<std::vector<Fel>> fkernel_basis(const GF& f, FMat m) {
  // right kernel: vectors v with m v = 0
  int rows = m.rows, cols = m.cols;
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < cols; ++j) std::swap(m.a[piv * cols + j], m.a[rank * cols + j]);
    Fel inv = f.inv(m.at(rank, c));
    for (int j = 0; j < cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), inv);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m.at(r, c) == 0) continue;
      Fel s = m.at(r, c);
      for (int j = 0; j < cols; ++j)
        m.at(r, j) = f.sub(m.at(r, j), f.mul(s, m.at(rank, j)));
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Fel>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Fel> v(cols, 0);
    v[free] = GF::one;
    for (int r = 0; r < rank; ++r)
      v[pivot_col[r]] = f.neg(m.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

int intertwiner_dim(const GF& f, const std::vector<FMat>& as, const std::vector<FMat>& bs) {
  if (as.size() != bs.size()) throw std::invalid_argument("generator count mismatch");
  if (as.empty()) return 0;
  int n = as[0].rows, m = bs[0].rows;
  // unknowns X (n x m) flattened row major; constraints a X = X b per generator
  FMat sys(static_cast<int>(as.size()) * n * m, n * m);
  int row = 0;
  for (size_t g = 0; g < as.size(); ++g) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        // (a X - X b)_{ij} = sum_k a_{ik} X_{kj} - sum_l X_{il} b_{lj}
        for (int k = 0; k < n; ++k)
          sys.at(row, k * m + j) = f.add(sys.at(row, k * m + j), as[g].at(i, k));
        for (int l = 0; l < m; ++l)
          sys.at(row, i * m + l) = f.sub(sys.at(row, i * m + l), bs[g].at(l, j));
        ++row;
      }
  }
  return fkernel_dim(f, sys);
}

CharacterTheory::CharacterTheory(std::shared_ptr<const ExtendedGroup> grp)
    : grp_(std::move(grp)) {}

bool CharacterTheory::valid(const AffineChar& x) const {
  if (static_cast<int>(x.val.size()) != grp_->aw().naff()) return false;
  for (int i = 0; i < grp_->aw().naff(); ++i) {
    if (x.val[i] != 0 && x.val[i] != -1) return false;
    if (x.val[i] == -1 && !grp_->char_trivial_on_subtorus(x.xi, i)) return false;
  }
  return true;
}

std::vector<AffineChar> CharacterTheory::all() const {
  std::vector<AffineChar> out;
  int naff = grp_->aw().naff();
  for (const TorusChar& xi : grp_->characters()) {
    std::vector<int> free_idx;
    for (int i = 0; i < naff; ++i)
      if (grp_->char_trivial_on_subtorus(xi, i)) free_idx.push_back(i);
    for (uint32_t mask = 0; mask < (1u << free_idx.size()); ++mask) {
      AffineChar x;
      x.xi = xi;
      x.val.assign(naff, 0);
      for (size_t k = 0; k < free_idx.size(); ++k)
        if (mask & (1u << k)) x.val[free_idx[k]] = -1;
      out.push_back(std::move(x));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

AffineChar CharacterTheory::trivial_char() const {
  AffineChar x;
  x.val.assign(grp_->aw().naff(), 0);
  return x;
}

AffineChar CharacterTheory::sign_char() const {
  AffineChar x;
  x.val.assign(grp_->aw().naff(), -1);
  return x;
}

bool CharacterTheory::is_triv_or_sign_twist(const AffineChar& x) const {
  bool all0 = true, allm = true;
  for (int8_t v : x.val) {
    if (v != 0) all0 = false;
    if (v != -1) allm = false;
  }
  if (!all0 && !allm) return false;
  // the twisting character must be trivial on T_alpha for every simple alpha
  const RootDatum& d = grp_->datum();
  for (int i = 0; i < d.nsimple(); ++i)
    if (!grp_->char_trivial_on_coroot(x.xi, d.simple_coroot(i))) return false;
  return true;
}

AffineChar CharacterTheory::iota_c_twist(const AffineChar& x) const {
  AffineChar y = x;
  for (int i = 0; i < grp_->aw().naff(); ++i) {
    if (x.val[i] == -1)
      y.val[i] = 0;
    else
      y.val[i] = grp_->char_trivial_on_subtorus(x.xi, i) ? -1 : 0;
  }
  return y;
}

AffineChar CharacterTheory::act(const TildeElt& omega, const AffineChar& x) const {
  if (grp_->length(omega) != 0) throw std::invalid_argument("element has positive length");
  const AffineWeyl& aw = grp_->aw();
  const RootDatum& d = grp_->datum();
  AffineChar y;
  // new torus character: (omega.X)(tau_t) = X(tau_{u^{-1} t}), i.e. the
  // exponent tuple transforms by the transpose of the inverse action
  int uinv = d.weyl().inverse(omega.u);
  for (int i = 0; i < d.rank(); ++i) {
    Coord e{};
    e[i] = 1;
    Coord im = grp_->torus_apply(uinv, e);
    long long v = dot(x.xi.a, im) % std::max(1, grp_->modulus());
    y.xi.a[i] = static_cast<int>(v);
  }
  y.val.assign(aw.naff(), 0);
  TildeElt oinv = grp_->inverse(omega);
  for (int ap = 0; ap < aw.naff(); ++ap) {
    // tau_{omega}^{-1} tau_{n_{A'}} tau_{omega} = tau_{omega^{-1} n_{A'} omega}
    TildeElt conj = grp_->mult(grp_->mult(oinv, grp_->lift_affine(ap)), omega);
    AffRoot target = aw.act(aw.inverse(grp_->project(omega)), aw.simple_aff(ap).aff);
    int app = -1;
    for (int i = 0; i < aw.naff(); ++i)
      if (aw.simple_aff(i).aff == target) app = i;
    if (app < 0) throw std::logic_error("Omega does not normalize the simple affine roots");
    TildeElt tt = grp_->mult(conj, grp_->inverse(grp_->lift_affine(app)));
    if (!grp_->is_torus(tt)) throw std::logic_error("conjugated letter has a bad residue");
    if (x.val[app] == 0) {
      y.val[ap] = 0;
    } else {
      // value -xi(t''); a valid character needs xi(t'') = 1 here
      long long v = dot(x.xi.a, tt.t) % std::max(1, grp_->modulus());
      if (v != 0) throw std::logic_error("Omega action left the character family");
      y.val[ap] = -1;
    }
  }
  if (!valid(y)) throw std::logic_error("Omega action produced an invalid character");
  return y;
}

Fel CharacterTheory::value(const GF& f, const AffineChar& x, const TildeElt& w) const {
  auto fac = grp_->factor(w);
  if (!(fac.omega == ExtendedGroup::identity()))
    throw std::invalid_argument("element is not in the affine part");
  Fel r = grp_->char_value(f, x.xi, fac.t);
  for (int i : fac.letters) {
    if (x.val[i] == 0) return GF::zero;
    r = f.neg(r);
  }
  return r;
}

long long CharacterTheory::omega_gen_order(int i) const {
  const AffineWeyl& aw = grp_->aw();
  return i < aw.n_free() ? 0 : aw.torsion_divisor(i - aw.n_free());
}

TildeElt CharacterTheory::omega_lift(const std::vector<long long>& e) const {
  const auto& gens = grp_->omega_tilde_generators();
  TildeElt r = ExtendedGroup::identity();
  for (size_t i = 0; i < gens.size(); ++i) {
    long long k = e[i];
    TildeElt step = k >= 0 ? gens[i] : grp_->inverse(gens[i]);
    for (long long j = 0; j < std::llabs(k); ++j) r = grp_->mult(r, step);
  }
  return r;
}

namespace {

IMat lattice_image_basis(const IMat& m) {
  // basis of the lattice generated by the columns of m, as columns
  SmithResult snf = smith_normal_form(m);
  // image = U^{-1} D Z^cols: basis vectors U^{-1} (d_j e_j)
  int r = static_cast<int>(snf.divisors.size());
  // invert U by solving
  IMat uinv(m.rows, m.rows);
  for (int c = 0; c < m.rows; ++c) {
    std::vector<long long> rhs(m.rows, 0), num;
    long long den;
    rhs[c] = 1;
    if (!solve_rational(snf.u, rhs, num, den) || std::llabs(den) != 1)
      throw std::logic_error("unimodular inverse failed");
    for (int r2 = 0; r2 < m.rows; ++r2) uinv.at(r2, c) = num[r2] / den;
  }
  IMat basis(m.rows, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < m.rows; ++i)
      basis.at(i, j) = uinv.at(i, j) * snf.divisors[j];
  return basis;
}

// integer solution of A x = y, throws if none exists
std::vector<long long> integer_solve(const IMat& a, const std::vector<long long>& y) {
  SmithResult snf = smith_normal_form(a);
  // A = U^{-1} D V^{-1}: solve D z = U y, then x = V z
  std::vector<long long> uy(a.rows, 0);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.rows; ++j) uy[i] += snf.u.at(i, j) * y[j];
  std::vector<long long> z(a.cols, 0);
  int r = static_cast<int>(snf.divisors.size());
  for (int i = 0; i < a.rows; ++i) {
    long long d = (i < r) ? snf.d.at(i, i) : 0;
    if (d == 0) {
      if (uy[i] != 0) throw std::logic_error("integer system is inconsistent");
    } else {
      if (uy[i] % d != 0) throw std::logic_error("integer system has no integral solution");
      if (i < a.cols) z[i] = uy[i] / d;
    }
  }
  std::vector<long long> x(a.cols, 0);
  for (int i = 0; i < a.cols; ++i)
    for (int j = 0; j < a.cols; ++j) x[i] += snf.v.at(i, j) * z[j];
  return x;
}

}  // namespace

CharacterTheory::Orbit CharacterTheory::orbit_of(const AffineChar& x) const {
  Orbit o;
  o.base = x;
  int k = n_omega_gens();
  const auto& gens = grp_->omega_tilde_generators();

  std::map<AffineChar, std::vector<long long>> path;
  path[x] = std::vector<long long>(k, 0);
  std::vector<AffineChar> frontier{x};
  std::vector<std::vector<long long>> edges;
  while (!frontier.empty()) {
    std::vector<AffineChar> next;
    for (const AffineChar& cur : frontier) {
      for (int i = 0; i < k; ++i) {
        for (int dir : {+1, -1}) {
          if (dir < 0 && omega_gen_order(i) != 0) continue;  // torsion: forward only
          TildeElt g = dir > 0 ? gens[i] : grp_->inverse(gens[i]);
          AffineChar img = act(g, cur);
          auto p = path[cur];
          p[i] += dir;
          auto it = path.find(img);
          if (it == path.end()) {
            path[img] = p;
            next.push_back(img);
          } else {
            // closed walk: p - existing is a stabilizer vector
            std::vector<long long> e(k);
            for (int j = 0; j < k; ++j) e[j] = p[j] - it->second[j];
            edges.push_back(std::move(e));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  for (auto& [c, p] : path) {
    o.elems.push_back(c);
    o.path.push_back(p);
  }

  // stabilizer lattice S: closed walks plus the relation lattice L0
  std::vector<std::vector<long long>> l0;
  for (int i = 0; i < k; ++i)
    if (omega_gen_order(i) != 0) {
      std::vector<long long> e(k, 0);
      e[i] = omega_gen_order(i);
      l0.push_back(std::move(e));
    }
  std::vector<std::vector<long long>> sgens = edges;
  for (const auto& e : l0) sgens.push_back(e);
  if (sgens.empty()) {
    o.stab_basis.clear();
    o.q_gens.clear();
    o.q_orders.clear();
    return o;
  }
  IMat m(k, static_cast<int>(sgens.size()));
  for (size_t j = 0; j < sgens.size(); ++j)
    for (int i = 0; i < k; ++i) m.at(i, static_cast<int>(j)) = sgens[j][i];
  IMat basis = lattice_image_basis(m);
  int r = basis.cols;
  for (int j = 0; j < r; ++j) {
    std::vector<long long> b(k);
    for (int i = 0; i < k; ++i) b[i] = basis.at(i, j);
    o.stab_basis.push_back(std::move(b));
  }

  // structure of S / L0
  if (r == 0) return o;
  IMat l0_in_s(r, std::max<size_t>(1, l0.size()));
  for (size_t j = 0; j < l0.size(); ++j) {
    auto coeff = integer_solve(basis, l0[j]);
    for (int i = 0; i < r; ++i) l0_in_s.at(i, static_cast<int>(j)) = coeff[i];
  }
  SmithResult snf = smith_normal_form(l0_in_s);
  // quotient generators: B * (U^{-1} e_j), orders = divisors (0 beyond rank)
  IMat uinv(r, r);
  for (int c = 0; c < r; ++c) {
    std::vector<long long> rhs(r, 0), num;
    long long den;
    rhs[c] = 1;
    if (!solve_rational(snf.u, rhs, num, den) || std::llabs(den) != 1)
      throw std::logic_error("unimodular inverse failed");
    for (int i = 0; i < r; ++i) uinv.at(i, c) = num[i] / den;
  }
  for (int j = 0; j < r; ++j) {
    long long order = j < static_cast<int>(snf.divisors.size()) ? snf.divisors[j] : 0;
    if (order == 1) continue;  // trivial quotient direction
    std::vector<long long> g(k, 0);
    for (int i = 0; i < k; ++i)
      for (int l = 0; l < r; ++l) g[i] += basis.at(i, l) * uinv.at(l, j);
    o.q_gens.push_back(std::move(g));
    o.q_orders.push_back(order);
  }
  return o;
}

InducedModule::InducedModule(std::shared_ptr<const CharacterTheory> theory,
                             std::shared_ptr<const GF> field,
                             CharacterTheory::Orbit orbit, SigmaChar sigma)
    : theory_(std::move(theory)),
      field_(std::move(field)),
      orbit_(std::move(orbit)),
      sigma_(std::move(sigma)) {
  if (sigma_.gen_val.size() != orbit_.q_gens.size())
    throw std::invalid_argument("sigma values do not match the stabilizer generators");
  const ExtendedGroup& g = theory_->grp();
  if ((field_->q() - 1) % std::max(1, g.modulus()) != 0)
    throw std::invalid_argument("module field misses the needed roots of unity");
  for (size_t j = 0; j < orbit_.elems.size(); ++j)
    coset_rep_.push_back(g.inverse(theory_->omega_lift(orbit_.path[j])));
}

Fel InducedModule::sigma_value(const TildeElt& h) const {
  const ExtendedGroup& g = theory_->grp();
  if (g.length(h) != 0) throw std::invalid_argument("fixator element has positive length");
  int k = theory_->n_omega_gens();
  auto cls = g.aw().omega_class(h.lam);
  std::vector<long long> y(k, 0);
  for (int i = 0; i < g.aw().n_free(); ++i) y[i] = cls.free[i];
  for (int i = 0; i < g.aw().n_torsion(); ++i) y[g.aw().n_free() + i] = cls.torsion[i];

  int r = static_cast<int>(orbit_.stab_basis.size());
  std::vector<long long> z;
  if (r > 0) {
    // solve [B | L0] w = y over Z and keep the B-part
    std::vector<std::vector<long long>> l0;
    for (int i = 0; i < k; ++i)
      if (theory_->omega_gen_order(i) != 0) {
        std::vector<long long> e(k, 0);
        e[i] = theory_->omega_gen_order(i);
        l0.push_back(std::move(e));
      }
    IMat a(k, r + static_cast<int>(l0.size()));
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < k; ++i) a.at(i, j) = orbit_.stab_basis[j][i];
    for (size_t j = 0; j < l0.size(); ++j)
      for (int i = 0; i < k; ++i) a.at(i, r + static_cast<int>(j)) = l0[j][i];
    auto w = integer_solve(a, y);
    std::vector<long long> x(w.begin(), w.begin() + r);
    // exponents on the quotient generators: z with sum_j z_j q_gens[j] = B x mod L0
    IMat qa(k, static_cast<int>(orbit_.q_gens.size()) + static_cast<int>(l0.size()));
    for (size_t j = 0; j < orbit_.q_gens.size(); ++j)
      for (int i = 0; i < k; ++i) qa.at(i, static_cast<int>(j)) = orbit_.q_gens[j][i];
    for (size_t j = 0; j < l0.size(); ++j)
      for (int i = 0; i < k; ++i)
        qa.at(i, orbit_.q_gens.size() + j) = l0[j][i];
    std::vector<long long> bx(k, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < r; ++j) bx[i] += orbit_.stab_basis[j][i] * x[j];
    auto wz = integer_solve(qa, bx);
    z.assign(wz.begin(), wz.begin() + orbit_.q_gens.size());
  }

  // h = t * prod_j H_j^{z_j} with t in the torus
  const ExtendedGroup& gg = theory_->grp();
  TildeElt prod = ExtendedGroup::identity();
  Fel val = GF::one;
  for (size_t j = 0; j < orbit_.q_gens.size(); ++j) {
    TildeElt hj = theory_->omega_lift(orbit_.q_gens[j]);
    long long e = z[j];
    TildeElt step = e >= 0 ? hj : gg.inverse(hj);
    for (long long i = 0; i < std::llabs(e); ++i) prod = gg.mult(prod, step);
    val = field_->mul(val, field_->pow(sigma_.gen_val[j], e));
  }
  TildeElt t = gg.mult(h, gg.inverse(prod));
  if (!gg.is_torus(t)) throw std::logic_error("fixator decomposition failed");
  // sigma restricted to the torus is the inverse of the character
  Fel tv = gg.char_value(*field_, orbit_.base.xi, gg.torus_reduce(-t.t));
  return field_->mul(val, tv);
}

FMat InducedModule::act_torus(const Coord& t) const {
  const ExtendedGroup& g = theory_->grp();
  FMat m(dim(), dim());
  for (int j = 0; j < dim(); ++j)
    m.at(j, j) = g.char_value(*field_, orbit_.elems[j].xi, g.torus_reduce(t));
  return m;
}

FMat InducedModule::act_letter(int aff_idx) const {
  FMat m(dim(), dim());
  for (int j = 0; j < dim(); ++j)
    m.at(j, j) = orbit_.elems[j].val[aff_idx] == 0 ? GF::zero
                                                   : field_->neg(GF::one);
  return m;
}

FMat InducedModule::act_len0(const TildeElt& omega) const {
  const ExtendedGroup& g = theory_->grp();
  FMat m(dim(), dim());
  TildeElt oinv = g.inverse(omega);
  for (int j = 0; j < dim(); ++j) {
    AffineChar img = theory_->act(oinv, orbit_.elems[j]);
    auto it = std::lower_bound(orbit_.elems.begin(), orbit_.elems.end(), img);
    if (it == orbit_.elems.end() || !(*it == img))
      throw std::logic_error("length-zero action left the orbit");
    int jp = static_cast<int>(it - orbit_.elems.begin());
    TildeElt h = g.mult(g.mult(coset_rep_[j], omega), g.inverse(coset_rep_[jp]));
    m.at(j, jp) = field_->inv(sigma_value(h));
  }
  return m;
}

FMat InducedModule::act_tau(const TildeElt& w) const {
  const ExtendedGroup& g = theory_->grp();
  auto f = g.factor(w);
  FMat m = act_torus(f.t);
  m = fmul(*field_, m, act_len0(f.omega));
  for (int i : f.letters) m = fmul(*field_, m, act_letter(i));
  return m;
}

FMat InducedModule::act(const HeckeP& alg, const HEltP& a) const {
  const GF& src = *alg.ring().field;
  FMat r(dim(), dim());
  for (const auto& [w, c] : a) {
    Fel cc = field_->embed(src, c);
    r = fadd(*field_, r, fscale(*field_, act_tau(w), cc));
  }
  return r;
}

bool InducedModule::verify_relations(std::mt19937_64& rng, int samples,
                                     const HeckeP& alg) const {
  const ExtendedGroup& g = theory_->grp();
  const RootDatum& d = g.datum();
  // torus commutation and quadratic relations, deterministically
  for (int i = 0; i < g.aw().naff(); ++i) {
    TildeElt n = g.lift_affine(i);
    FMat mn = act_tau(n);
    FMat lhs = fmul(*field_, mn, mn);
    FMat rhs = act(alg, alg.mul(alg.tau(n), alg.tau(n)));
    if (!(lhs == rhs)) return false;
  }
  std::uniform_int_distribution<int> coord(-2, 2);
  std::uniform_int_distribution<int> tor(0, std::max(0, g.modulus() - 1));
  std::uniform_int_distribution<int> fin(0, d.weyl().size() - 1);
  auto rand_elt = [&]() {
    while (true) {
      TildeElt x;
      for (int i = 0; i < d.rank(); ++i) {
        x.lam[i] = coord(rng);
        x.t[i] = g.modulus() > 0 ? tor(rng) : 0;
      }
      x.u = fin(rng);
      if (g.length(x) <= 5) return x;
    }
  };
  for (int it = 0; it < samples; ++it) {
    TildeElt a = rand_elt(), b = rand_elt();
    FMat lhs = fmul(*field_, act_tau(a), act_tau(b));
    FMat rhs = act(alg, alg.mul(alg.tau(a), alg.tau(b)));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

std::shared_ptr<GF> classification_field(const ExtendedGroup& grp) {
  int q = grp.datum().q();
  int p, s;
  factor_prime_power(q, p, s);
  // x^d = v with v in mu_{q-1} needs the prime-to-p part of d only: the
  // p-power part is handled by the Frobenius, which is bijective
  long long need = std::max(1, grp.modulus());
  for (int i = 0; i < grp.aw().n_torsion(); ++i) {
    long long d = grp.aw().torsion_divisor(i);
    while (d % p == 0) d /= p;
    need = std::lcm(need, d * static_cast<long long>(std::max(1, grp.modulus())));
  }
  for (int e = 1; e <= 8; ++e) {
    long long qe = 1;
    for (int i = 0; i < e * s; ++i) qe *= p;
    if ((qe - 1) % need == 0) return std::make_shared<GF>(p, e * s);
  }
  throw std::logic_error("no suitable classification field found");
}

std::vector<ClassifiedModule> classify(std::shared_ptr<const CharacterTheory> theory,
                                       std::shared_ptr<const GF> field,
                                       std::shared_ptr<const Bernstein> bern,
                                       const ClassifyOptions& opts) {
  const ExtendedGroup& g = theory->grp();
  if (!g.datum().irreducible())
    throw std::invalid_argument(
        "classification requires an irreducible root system");

  HeckeP alg_mod(theory->grp_ptr(), RingCharP{field.get()});

  // enumerate the orbits of characters outside the trivial/sign twists
  std::set<AffineChar> seen;
  std::vector<ClassifiedModule> out;
  for (const AffineChar& x : theory->all()) {
    if (seen.count(x)) continue;
    auto orbit = theory->orbit_of(x);
    for (const AffineChar& y : orbit.elems) seen.insert(y);
    if (theory->is_triv_or_sign_twist(x)) continue;
    // canonical representative: smallest orbit element
    auto orb = theory->orbit_of(orbit.elems.front());

    // consistency: 1-dimensional sigma exists iff xi kills the commutators
    int mod = std::max(1, g.modulus());
    for (size_t i = 0; i < orb.q_gens.size(); ++i)
      for (size_t j = i + 1; j < orb.q_gens.size(); ++j) {
        TildeElt hi = theory->omega_lift(orb.q_gens[i]);
        TildeElt hj = theory->omega_lift(orb.q_gens[j]);
        TildeElt comm = g.mult(g.mult(hi, hj), g.inverse(g.mult(hj, hi)));
        if (!g.is_torus(comm)) throw std::logic_error("commutator not in the torus");
        if (dot(orb.base.xi.a, comm.t) % mod != 0)
          throw std::invalid_argument(
              "nonabelian fixator: user-supplied sigma required");
      }

    // solve sigma on each quotient generator
    std::vector<std::vector<Fel>> choices;
    size_t free_seen = 0;
    for (size_t j = 0; j < orb.q_gens.size(); ++j) {
      if (orb.q_orders[j] == 0) {
        // free generator: value fixed by the user-chosen scalars
        if (free_seen >= opts.pi_scalars.size())
          throw std::invalid_argument("missing uniformizer scalar for a free generator");
        Fel c = opts.pi_scalars[free_seen++];
        if (c == GF::zero) throw std::invalid_argument("uniformizer scalar must be nonzero");
        choices.push_back({c});
      } else {
        TildeElt h = theory->omega_lift(orb.q_gens[j]);
        TildeElt pw = ExtendedGroup::identity();
        for (long long i = 0; i < orb.q_orders[j]; ++i) pw = g.mult(pw, h);
        if (!g.is_torus(pw)) throw std::logic_error("torsion power not in the torus");
        Fel target = g.char_value(*field, orb.base.xi, g.torus_reduce(-pw.t));
        auto roots = field->roots(target, static_cast<int>(orb.q_orders[j]));
        if (roots.empty())
          throw std::logic_error("classification field misses a sigma root");
        choices.push_back(roots);
      }
    }
    // all combinations
    std::vector<SigmaChar> sigmas;
    std::vector<size_t> idx(choices.size(), 0);
    while (true) {
      SigmaChar s;
      for (size_t j = 0; j < choices.size(); ++j) s.gen_val.push_back(choices[j][idx[j]]);
      sigmas.push_back(std::move(s));
      size_t k = 0;
      while (k < choices.size() && idx[k] + 1 == choices[k].size()) idx[k++] = 0;
      if (k == choices.size()) break;
      ++idx[k];
    }
    if (choices.empty()) sigmas.assign(1, SigmaChar{});

    for (const SigmaChar& s : sigmas) {
      ClassifiedModule cm;
      cm.orbit_rep = orb.base;
      cm.sigma = s;
      cm.module = std::make_shared<InducedModule>(theory, field, orb, s);
      std::mt19937_64 rng(20240815);
      if (!cm.module->verify_relations(rng, 24, alg_mod))
        throw std::logic_error("induced module failed the relation suite");
      cm.supersingular = is_supersingular_module(*cm.module, *bern, alg_mod);
      // z-character on the length-zero part of the center
      for (const Coord& lam : g.datum().dominant_hilbert_basis()) {
        if (g.length(g.splitting(lam)) != 0) continue;
        FMat zm = cm.module->act_tau(g.splitting(lam));
        // scalar by irreducibility
        Fel sc = zm.at(0, 0);
        FMat diff = fadd(*field, zm, fscale(*field, FMat::identity(*field, zm.rows), field->neg(sc)));
        if (!diff.is_zero()) throw std::logic_error("central element acts non-scalar");
        cm.z_character[lam] = sc;
      }
      // irreducibility: the commutant is one dimensional
      std::vector<FMat> gens;
      for (int i = 0; i < g.datum().rank(); ++i) {
        Coord e{};
        e[i] = 1;
        gens.push_back(cm.module->act_torus(e));
      }
      for (int i = 0; i < g.aw().naff(); ++i) gens.push_back(cm.module->act_letter(i));
      for (const TildeElt& om : g.omega_tilde_generators())
        gens.push_back(cm.module->act_len0(om));
      cm.irreducible = intertwiner_dim(*field, gens, gens) == 1;
      out.push_back(std::move(cm));
    }
  }
  return out;
}

bool is_supersingular_module(const InducedModule& m, const Bernstein& bern,
                             const HeckeP& alg_mod) {
  const GF& f = m.field();
  for (const Coord& lam : bern.ideal_generators()) {
    HEltP z = bern.central_p(alg_mod, XtCoweight{lam, coord_zero()});
    if (!fnilpotent(f, m.act(alg_mod, z))) return false;
  }
  return true;
}

std::vector<std::pair<AffineChar, int>> contained_affine_characters(
    const CharacterTheory& theory, const GF& f,
    const std::vector<FMat>& torus_gens, const std::vector<FMat>& letter_mats) {
  const ExtendedGroup& g = theory.grp();
  int n = torus_gens.empty() ? (letter_mats.empty() ? 0 : letter_mats[0].rows)
                             : torus_gens[0].rows;
  std::vector<std::pair<AffineChar, int>> out;
  for (const AffineChar& x : theory.all()) {
    // stack (M - s I)^T blocks and compute the right kernel of the transpose:
    // we need row vectors v with v M = s v, i.e. M^T v^T = s v^T
    std::vector<FMat> blocks;
    for (int i = 0; i < g.datum().rank(); ++i) {
      Coord e{};
      e[i] = 1;
      Fel s = g.char_value(f, x.xi, e);
      FMat b(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          b.at(r, c) = f.sub(torus_gens[i].at(c, r), r == c ? s : GF::zero);
      blocks.push_back(std::move(b));
    }
    for (int i = 0; i < g.aw().naff(); ++i) {
      Fel s = x.val[i] == 0 ? GF::zero : f.neg(GF::one);
      FMat b(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          b.at(r, c) = f.sub(letter_mats[i].at(c, r), r == c ? s : GF::zero);
      blocks.push_back(std::move(b));
    }
    FMat sys(static_cast<int>(blocks.size()) * n, n);
    int row = 0;
    for (const FMat& b : blocks)
      for (int r = 0; r < n; ++r, ++row)
        for (int c = 0; c < n; ++c) sys.at(row, c) = b.at(r, c);
    int mult = fkernel_dim(f, sys);
    if (mult > 0) out.push_back({x, mult});
  }
  return out;
}

uint32_t pi_chibar_mask(const ExtendedGroup& grp, const TorusChar& chibar) {
  uint32_t mask = 0;
  for (int i = 0; i < grp.datum().nsimple(); ++i)
    if (grp.char_trivial_on_coroot(chibar, grp.datum().simple_coroot(i)))
      mask |= (1u << i);
  return mask;
}

std::vector<WeightChar> all_weight_chars(const ExtendedGroup& grp) {
  std::vector<WeightChar> out;
  for (const TorusChar& cb : grp.characters()) {
    uint32_t big = pi_chibar_mask(grp, cb);
    for (uint32_t sub = big;; sub = (sub - 1) & big) {
      out.push_back(WeightChar{cb, sub});
      if (sub == 0) break;
    }
  }
  return out;
}

WeightModule::WeightModule(std::shared_ptr<const HeckeP> alg, WeightChar chi)
    : alg_(std::move(alg)), chi_(chi) {
  uint32_t big = pi_chibar_mask(alg_->grp(), chi.chibar);
  if ((chi.pi_chi & ~big) != 0)
    throw std::invalid_argument("Pi_chi must consist of roots where chibar is trivial");
}

Fel WeightModule::chi_value(const TildeElt& w0) const {
  const ExtendedGroup& g = alg_->grp();
  const GF& f = *alg_->ring().field;
  if (!is_zero(w0.lam)) throw std::invalid_argument("element is not in the finite part");
  uint32_t big = pi_chibar_mask(g, chi_.chibar);
  // torus discrepancy against the canonical finite lift
  TildeElt canon{coord_zero(), coord_zero(), w0.u};
  TildeElt t = g.mult(w0, g.inverse(canon));
  if (!g.is_torus(t)) throw std::logic_error("finite part decomposition failed");
  Fel r = g.char_value(f, chi_.chibar, t.t);
  for (int i : g.datum().weyl().word(w0.u)) {
    bool in_big = (big >> i) & 1u;
    bool in_chi = (chi_.pi_chi >> i) & 1u;
    int8_t val = (in_big && !in_chi) ? -1 : 0;
    if (val == 0) return GF::zero;
    r = f.neg(r);
  }
  return r;
}

WeightModule::Vec WeightModule::reduce(const TildeElt& w, Fel c) const {
  const ExtendedGroup& g = alg_->grp();
  const GF& f = *alg_->ring().field;
  auto [u0, d] = g.aw().coset_decompose(g.project(w));
  TildeElt dcan = g.lift(d);
  TildeElt w0 = g.mult(w, g.inverse(dcan));
  Fel v = f.mul(c, chi_value(w0));
  Vec out;
  if (v != GF::zero) out.emplace(dcan, v);
  return out;
}

WeightModule::Vec WeightModule::generator() const {
  Vec v;
  v.emplace(ExtendedGroup::identity(), GF::one);
  return v;
}

WeightModule::Vec WeightModule::act(const Vec& v, const HEltP& h) const {
  const GF& f = *alg_->ring().field;
  Vec out;
  for (const auto& [d, c] : v) {
    HEltP prod = alg_->mul(alg_->tau(d), h);
    for (const auto& [y, cy] : prod) {
      for (const auto& [dd, val] : reduce(y, f.mul(c, cy))) {
        auto [it, fresh] = out.emplace(dd, val);
        if (!fresh) {
          it->second = f.add(it->second, val);
          if (it->second == GF::zero) out.erase(it);
        }
      }
    }
  }
  return out;
}

}  // namespace prophecke
