#pragma once

// Integer-coefficient Laurent polynomials in one variable q, stored as a
// contiguous coefficient block.  Coefficients stay well inside int64 for
// every group this library enumerates.

#include <cstdint>
#include <string>
#include <vector>

#include "wallcross/errors.hpp"

namespace wallcross {

class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::int64_t c) { if (c != 0) { lo_ = 0; c_ = {c}; } }

  static LaurentPoly q_power(int e, std::int64_t c = 1) {
    LaurentPoly p;
    if (c != 0) { p.lo_ = e; p.c_ = {c}; }
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int min_exp() const { check_usage(!is_zero(), "min_exp of zero polynomial"); return lo_; }
  int max_exp() const { check_usage(!is_zero(), "max_exp of zero polynomial"); return lo_ + int(c_.size()) - 1; }
  int degree() const { return max_exp(); }

  std::int64_t coeff(int e) const {
    if (c_.empty() || e < lo_ || e > max_exp()) return 0;
    return c_[e - lo_];
  }

  void set_coeff(int e, std::int64_t v) {
    if (v == 0 && (c_.empty() || e < lo_ || e > max_exp())) return;
    if (c_.empty()) { lo_ = e; c_ = {v}; trim(); return; }
    if (e < lo_) {
      c_.insert(c_.begin(), size_t(lo_ - e), 0);
      lo_ = e;
    } else if (e > max_exp()) {
      c_.resize(size_t(e - lo_) + 1, 0);
    }
    c_[e - lo_] = v;
    trim();
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (size_t i = 0; i < o.c_.size(); ++i)
      set_coeff(o.lo_ + int(i), coeff(o.lo_ + int(i)) + o.c_[i]);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (size_t i = 0; i < o.c_.size(); ++i)
      set_coeff(o.lo_ + int(i), coeff(o.lo_ + int(i)) - o.c_[i]);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { a += b; return a; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { a -= b; return a; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.lo_ = a.lo_ + b.lo_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }

  bool operator==(const LaurentPoly& o) const { return lo_ == o.lo_ && c_ == o.c_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  std::int64_t eval_at_one() const {
    std::int64_t s = 0;
    for (auto c : c_) s += c;
    return s;
  }

  /// q -> 1/q
  LaurentPoly bar() const {
    LaurentPoly r;
    if (is_zero()) return r;
    r.lo_ = -max_exp();
    r.c_.assign(c_.rbegin(), c_.rend());
    return r;
  }

  bool has_negative_coeff() const {
    for (auto c : c_) if (c < 0) return true;
    return false;
  }

  std::string str(const std::string& var = "q") const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
      std::int64_t c = c_[i];
      if (c == 0) continue;
      int e = lo_ + int(i);
      if (!s.empty()) s += c >= 0 ? "+" : "-";
      else if (c < 0) s += "-";
      std::int64_t ac = c >= 0 ? c : -c;
      if (e == 0) { s += std::to_string(ac); continue; }
      s += std::to_string(ac) + "*" + var;
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  void trim() {
    size_t b = 0, e = c_.size();
    while (b < e && c_[b] == 0) ++b;
    while (e > b && c_[e - 1] == 0) --e;
    if (b == e) { c_.clear(); lo_ = 0; return; }
    if (b > 0 || e < c_.size()) {
      c_ = std::vector<std::int64_t>(c_.begin() + b, c_.begin() + e);
      lo_ += int(b);
    }
  }

  int lo_ = 0;
  std::vector<std::int64_t> c_;
};

}  // namespace wallcross
