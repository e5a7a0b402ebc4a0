#include "prophecke/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace prophecke {

Laurent Laurent::of_int(long long n) { return monomial(0, n); }

Laurent Laurent::v_power(int e) { return monomial(e, 1); }

Laurent Laurent::monomial(int e, long long c) {
  Laurent r;
  if (c != 0) r.terms_.push_back({e, c});
  return r;
}

bool Laurent::is_one() const {
  return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

void Laurent::normalize() {
  std::sort(terms_.begin(), terms_.end());
  std::vector<std::pair<int, long long>> out;
  for (const auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(t);
    if (!out.empty() && out.back().second == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j >= o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i >= terms_.size() || o.terms_[j].first < terms_[i].first) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      long long c = terms_[i].second + o.terms_[j].second;
      if (c != 0) r.terms_.push_back({terms_[i].first, c});
      ++i;
      ++j;
    }
  }
  return r;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      r.terms_.push_back({a.first + b.first, a.second * b.second});
  r.normalize();
  return r;
}

Laurent Laurent::shifted(int e) const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.first += e;
  return r;
}

Laurent Laurent::scaled(long long c) const {
  Laurent r;
  if (c == 0) return r;
  r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

bool Laurent::is_q_polynomial() const {
  for (const auto& t : terms_)
    if (t.first < 0 || t.first % 2 != 0) return false;
  return true;
}

long long Laurent::coeff(int e) const {
  for (const auto& t : terms_)
    if (t.first == e) return t.second;
  return 0;
}

int Laurent::min_exp() const {
  if (terms_.empty()) throw std::domain_error("min_exp of zero");
  return terms_.front().first;
}

int Laurent::max_exp() const {
  if (terms_.empty()) throw std::domain_error("max_exp of zero");
  return terms_.back().first;
}

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    long long a = c;
    if (first) {
      if (a < 0) {
        s += "-";
        a = -a;
      }
    } else {
      s += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    first = false;
    std::string var;
    if (e != 0) {
      if (e % 2 == 0) {
        int k = e / 2;
        var = (k == 1) ? "q" : "q^" + std::to_string(k);
      } else {
        var = (e == 1) ? "v" : "v^" + std::to_string(e);
      }
    }
    if (var.empty()) {
      s += std::to_string(a);
    } else if (a == 1) {
      s += var;
    } else {
      s += std::to_string(a) + "*" + var;
    }
  }
  return s;
}

}  // namespace prophecke
