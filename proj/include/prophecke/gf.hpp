#ifndef PROPHECKE_GF_HPP
#define PROPHECKE_GF_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace prophecke {

// Element of a small finite field, encoded as 0 (zero) or 1 + dlog(x).
using Fel = int32_t;

// GF(p^m) with exponential / Zech-logarithm tables.  Elements are plain
// integers relative to a field object; all arithmetic goes through the field.
class GF {
 public:
  GF(int p, int m);

  int p() const { return p_; }
  int m() const { return m_; }
  int q() const { return q_; }

  static constexpr Fel zero = 0;
  static constexpr Fel one = 1;  // g^0

  bool is_zero(Fel a) const { return a == 0; }

  Fel from_int(long long n) const;   // image of n under Z -> F_p -> F
  Fel gen() const { return 2; }      // a fixed multiplicative generator g
  Fel gpow(long long e) const;       // g^e
  int dlog(Fel a) const;             // a = g^dlog, a != 0

  Fel add(Fel a, Fel b) const;
  Fel neg(Fel a) const;
  Fel sub(Fel a, Fel b) const { return add(a, neg(b)); }
  Fel mul(Fel a, Fel b) const;
  Fel inv(Fel a) const;
  Fel pow(Fel a, long long e) const;

  // Multiplicative order of a nonzero element.
  int order(Fel a) const;

  // x with x^d = a, all of them (empty if none exist in this field).
  std::vector<Fel> roots(Fel a, int d) const;

  // Embedding of GF(p^m0) into this field, m0 | m; maps sub.gen() onto
  // gen()^((q-1)/(q0-1)).
  Fel embed(const GF& sub, Fel a) const;

  std::string to_string(Fel a) const;

 private:
  int p_, m_, q_;
  std::vector<int32_t> zech_;   // zech_[i] = dlog(1 + g^i), or -1 if 1 + g^i = 0
  int dlog_minus1_;             // dlog(-1)
  std::vector<Fel> fp_embed_;   // images of 0..p-1
};

// q = p^s with p prime; throws on non prime powers.
void factor_prime_power(int q, int& p, int& s);

}  // namespace prophecke

#endif
