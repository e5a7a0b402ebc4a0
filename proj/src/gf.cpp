#include "prophecke/gf.hpp"

#include <algorithm>
#include <numeric>

namespace prophecke {

namespace {

// Polynomial arithmetic over F_p on little-endian coefficient vectors,
// used only while building the tables.
using Poly = std::vector<int>;

int poly_to_index(const Poly& f, int p, int m) {
  int idx = 0;
  for (int i = m - 1; i >= 0; --i) idx = idx * p + f[i];
  return idx;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, int p) {
  int m = static_cast<int>(mod.size()) - 1;
  std::vector<int> prod(2 * m - 1, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  // reduce: X^m = -(mod[0] + ... + mod[m-1] X^{m-1})
  for (int d = 2 * m - 2; d >= m; --d) {
    int c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < m; ++i)
      prod[d - m + i] = ((prod[d - m + i] - c * mod[i]) % p + p * p) % p;
  }
  prod.resize(m);
  return prod;
}

bool is_irreducible(const Poly& f, int p) {
  int m = static_cast<int>(f.size()) - 1;
  // trial division by all monic polynomials of degree <= m/2
  for (int d = 1; 2 * d <= m; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      long long c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      // remainder of f mod g
      Poly r = f;
      for (int k = m; k >= d; --k) {
        int lead = r[k] % p;
        if (lead == 0) continue;
        for (int i = 0; i <= d; ++i)
          r[k - d + i] = ((r[k - d + i] - lead * g[i]) % p + p * p) % p;
      }
      bool zero = true;
      for (int i = 0; i < d; ++i)
        if (r[i] % p != 0) zero = false;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

void factor_prime_power(int q, int& p, int& s) {
  if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
  int n = q;
  p = 0;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = n;
  s = 0;
  while (n > 1) {
    if (n % p != 0) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    n /= p;
    ++s;
  }
}

GF::GF(int p, int m) : p_(p), m_(m) {
  if (p < 2 || m < 1 || m > 12) throw std::invalid_argument("bad field parameters");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("characteristic must be prime");
  long long q = 1;
  for (int i = 0; i < m; ++i) {
    q *= p;
    if (q > (1 << 20)) throw std::invalid_argument("field too large");
  }
  q_ = static_cast<int>(q);

  // find an irreducible modulus, then a primitive element
  Poly mod(m + 1, 0);
  mod[m] = 1;
  if (m == 1) {
    mod[0] = 0;
  } else {
    bool found = false;
    long long count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    for (long long code = 1; code < count && !found; ++code) {
      long long c = code;
      for (int i = 0; i < m; ++i) {
        mod[i] = static_cast<int>(c % p);
        c /= p;
      }
      if (is_irreducible(mod, p)) found = true;
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");
  }

  // exponent table for a primitive element, searched among small polynomials
  std::vector<int> idx_to_log(q_, -1);
  std::vector<int> exp_idx;
  bool have_gen = false;
  for (long long cand = 1; cand < q_ && !have_gen; ++cand) {
    if (m == 1 && cand == 1 && p > 2) continue;  // 1 is not a generator
    Poly g(m, 0);
    long long c = cand;
    for (int i = 0; i < m; ++i) {
      g[i] = static_cast<int>(c % p);
      c /= p;
    }
    Poly one_p(m, 0);
    one_p[0] = 1;
    exp_idx.assign(1, poly_to_index(one_p, p, m));
    Poly cur = one_p;
    bool primitive = true;
    for (int e = 1; e < q_ - 1; ++e) {
      cur = poly_mul_mod(cur, g, mod, p);
      int idx = poly_to_index(cur, p, m);
      if (idx == exp_idx[0]) {
        primitive = false;
        break;
      }
      exp_idx.push_back(idx);
    }
    if (!primitive || static_cast<int>(exp_idx.size()) != q_ - 1) continue;
    cur = poly_mul_mod(cur, g, mod, p);
    if (poly_to_index(cur, p, m) != exp_idx[0]) continue;  // g^{q-1} != 1
    for (int e = 0; e < q_ - 1; ++e) idx_to_log[exp_idx[e]] = e;
    have_gen = true;
  }
  if (!have_gen) throw std::logic_error("no primitive element found");

  // Zech logarithms: zech_[i] = dlog(1 + g^i)
  zech_.assign(q_ - 1, -1);
  for (int i = 0; i < q_ - 1; ++i) {
    // add 1 to the polynomial with index exp_idx[i]
    int idx = exp_idx[i];
    int c0 = idx % p;
    int idx1 = idx - c0 + (c0 + 1) % p;
    zech_[i] = (idx1 == 0) ? -1 : idx_to_log[idx1];
  }
  dlog_minus1_ = (p == 2) ? 0 : (q_ - 1) / 2;

  fp_embed_.assign(p, 0);
  fp_embed_[0] = 0;
  for (int n = 1; n < p; ++n) {
    Poly f(m, 0);
    f[0] = n;
    fp_embed_[n] = 1 + idx_to_log[poly_to_index(f, p, m)];
  }
}

Fel GF::from_int(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return fp_embed_[static_cast<int>(r)];
}

Fel GF::gpow(long long e) const {
  long long r = e % (q_ - 1);
  if (r < 0) r += q_ - 1;
  return 1 + static_cast<Fel>(r);
}

int GF::dlog(Fel a) const {
  if (a == 0) throw std::domain_error("dlog of zero");
  return a - 1;
}

Fel GF::mul(Fel a, Fel b) const {
  if (a == 0 || b == 0) return 0;
  return gpow(static_cast<long long>(a - 1) + (b - 1));
}

Fel GF::neg(Fel a) const {
  if (a == 0) return 0;
  return gpow(static_cast<long long>(a - 1) + dlog_minus1_);
}

Fel GF::add(Fel a, Fel b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  int i = a - 1, j = b - 1;
  int d = j - i;
  if (d < 0) d += q_ - 1;
  int z = zech_[d];
  if (z < 0) return 0;  // b = -a
  return gpow(static_cast<long long>(i) + z);
}

Fel GF::inv(Fel a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return gpow(-static_cast<long long>(a - 1));
}

Fel GF::pow(Fel a, long long e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("inverse of zero");
    return e == 0 ? one : 0;
  }
  return gpow(static_cast<long long>(a - 1) * e);
}

int GF::order(Fel a) const {
  if (a == 0) throw std::domain_error("order of zero");
  int n = q_ - 1;
  return n / std::gcd(n, a - 1 == 0 ? n : a - 1);
}

std::vector<Fel> GF::roots(Fel a, int d) const {
  std::vector<Fel> out;
  if (d <= 0) throw std::invalid_argument("root degree must be positive");
  if (a == 0) {
    out.push_back(0);
    return out;
  }
  long long n = q_ - 1;
  long long la = a - 1;
  // solve d*x = la mod n
  long long g = std::gcd(static_cast<long long>(d), n);
  if (la % g != 0) return out;
  long long dd = d / g, ll = la / g, nn = n / g;
  // modular inverse of dd mod nn by extended gcd
  long long t0 = 0, t1 = 1, r0 = nn, r1 = dd % nn;
  if (nn == 1) {
    t1 = 0;
    r1 = 0;
  }
  while (r1 != 0) {
    long long qq = r0 / r1;
    long long r2 = r0 - qq * r1;
    long long t2 = t0 - qq * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  long long x0 = ((t0 % nn) + nn) % nn * (ll % nn) % nn;
  for (long long k = 0; k < g; ++k) out.push_back(gpow(x0 + k * nn));
  std::sort(out.begin(), out.end());
  return out;
}

Fel GF::embed(const GF& sub, Fel a) const {
  if (sub.p() != p_ || m_ % sub.m() != 0)
    throw std::invalid_argument("not a subfield");
  if (a == 0) return 0;
  long long stride = static_cast<long long>(q_ - 1) / (sub.q() - 1);
  return gpow(stride * (a - 1));
}

std::string GF::to_string(Fel a) const {
  if (a == 0) return "0";
  if (m_ == 1) {
    // print the value in 0..p-1
    for (int n = 1; n < p_; ++n)
      if (fp_embed_[n] == a) return std::to_string(n);
  }
  if (a == 1) return "1";
  return "g^" + std::to_string(a - 1);
}

}  // namespace prophecke
