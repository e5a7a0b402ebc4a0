#ifndef PROPHECKE_LAURENT_HPP
#define PROPHECKE_LAURENT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace prophecke {

// Integer Laurent polynomial in the formal variable v, with v^2 playing the
// role of the parameter q.  Stored sparsely as (exponent, coefficient) pairs
// sorted by exponent; no zero coefficients are kept.
class Laurent {
 public:
  Laurent() = default;
  static Laurent of_int(long long n);
  static Laurent q_power(int k) { return v_power(2 * k); }  // q^k = v^{2k}
  static Laurent v_power(int e);
  static Laurent monomial(int e, long long c);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool operator==(const Laurent& o) const { return terms_ == o.terms_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  Laurent shifted(int e) const;  // multiply by v^e
  Laurent scaled(long long c) const;

  // True when the polynomial lies in Z[q] = Z[v^2] with no negative powers.
  bool is_q_polynomial() const;
  // Coefficient of v^e.
  long long coeff(int e) const;
  // Constant term; combined with is_q_polynomial this is the image under
  // the specialization v -> 0 followed by reduction mod p.
  long long constant_term() const { return coeff(0); }

  int min_exp() const;
  int max_exp() const;

  // Renders "-1 + 2*q - q^2" style strings; odd powers of v, if any, are
  // printed as v^e.
  std::string to_string() const;

  const std::vector<std::pair<int, long long>>& terms() const { return terms_; }

 private:
  void normalize();
  std::vector<std::pair<int, long long>> terms_;
};

}  // namespace prophecke

#endif
