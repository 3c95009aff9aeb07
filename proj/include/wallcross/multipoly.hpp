#pragma once

// Rational-coefficient polynomials in at most kMaxRank variables, in
// canonical sorted monomial form.  Coordinates are the fundamental
// coweights of the ambient root system; see coinv.hpp for how the Weyl
// group acts.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wallcross/cartan.hpp"
#include "wallcross/errors.hpp"
#include "wallcross/rational.hpp"

namespace wallcross {

struct Mono {
  std::array<std::uint8_t, kMaxRank> e{};

  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool operator==(const Mono& o) const { return e == o.e; }
  // graded lexicographic
  bool operator<(const Mono& o) const {
    int d = degree(), od = o.degree();
    if (d != od) return d < od;
    return e < o.e;
  }
};

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(const Rational& c) {
    if (c != 0) terms_.emplace(Mono{}, c);
  }

  static MultiPoly variable(int i, const Rational& c = Rational(1)) {
    MultiPoly p;
    Mono m;
    m.e[i] = 1;
    if (c != 0) p.terms_.emplace(m, c);
    return p;
  }

  static MultiPoly monomial(const Mono& m, const Rational& c) {
    MultiPoly p;
    if (c != 0) p.terms_.emplace(m, c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Mono, Rational>& terms() const { return terms_; }

  Rational coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool is_homogeneous(int* deg_out = nullptr) const {
    int deg = -1;
    for (const auto& [m, c] : terms_) {
      if (deg < 0) deg = m.degree();
      else if (deg != m.degree()) return false;
    }
    if (deg_out) *deg_out = deg < 0 ? 0 : deg;
    return true;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  void add_term(const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { a += b; return a; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { a -= b; return a; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Mono m;
        for (size_t i = 0; i < m.e.size(); ++i) m.e[i] = std::uint8_t(ma.e[i] + mb.e[i]);
        r.add_term(m, ca * cb);
      }
    return r;
  }

  MultiPoly& operator*=(const Rational& c) {
    if (c == 0) { terms_.clear(); return *this; }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }

  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

  /// Substitute variable i -> the linear form `forms[i]` simultaneously.
  MultiPoly substitute_linear(const std::vector<MultiPoly>& forms) const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
      MultiPoly t(c);
      for (size_t i = 0; i < m.e.size(); ++i)
        for (int k = 0; k < m.e[i]; ++k) t = t * forms[i];
      r += t;
    }
    return r;
  }

  /// Exact division by a linear form with a nonzero coefficient on
  /// variable `pivot`; the remainder must vanish.
  MultiPoly divide_by_linear(const MultiPoly& linear, int pivot) const {
    Mono pm;
    pm.e[pivot] = 1;
    Rational lead = linear.coeff(pm);
    check_usage(lead != 0, "divide_by_linear: pivot coefficient vanishes");
    MultiPoly rem = *this, quot;
    while (true) {
      // highest power of the pivot variable present
      int top = 0;
      for (const auto& [m, c] : rem.terms_) top = std::max(top, int(m.e[pivot]));
      if (top == 0) break;
      MultiPoly t;
      for (const auto& [m, c] : rem.terms_) {
        if (m.e[pivot] != top) continue;
        Mono mm = m;
        mm.e[pivot] = std::uint8_t(top - 1);
        t.add_term(mm, c / lead);
      }
      quot += t;
      rem -= linear * t;
    }
    check_consistent(rem.is_zero(), "divide_by_linear: division is not exact");
    return quot;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      std::string t = c.get_str();
      bool neg = !t.empty() && t[0] == '-';
      if (!s.empty()) { s += neg ? " - " : " + "; if (neg) t = t.substr(1); }
      s += t;
      for (size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        s += "*x" + std::to_string(i + 1);
        if (m.e[i] > 1) s += "^" + std::to_string(int(m.e[i]));
      }
    }
    return s;
  }

 private:
  std::map<Mono, Rational> terms_;
};

/// All monomials of the given total degree, in canonical order.
inline std::vector<Mono> monomials_of_degree(int rank, int degree) {
  std::vector<Mono> out;
  Mono m;
  auto rec = [&](auto&& self, int var, int rest) -> void {
    if (var == rank - 1) {
      m.e[var] = std::uint8_t(rest);
      out.push_back(m);
      return;
    }
    for (int k = rest; k >= 0; --k) {
      m.e[var] = std::uint8_t(k);
      self(self, var + 1, rest - k);
    }
  };
  if (rank == 0) {
    if (degree == 0) out.push_back(m);
    return out;
  }
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wallcross
