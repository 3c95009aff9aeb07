#pragma once

// Iwahori-Hecke algebra in the standard basis {T_w} with the quadratic
// relation T_s^2 = (q-1) T_s + q T_e, R-polynomials, and the
// Kazhdan-Lusztig table.
//
// Normalization: the KL basis is taken integrally, b_w = sum_{x<=w}
// P_{x,w}(q) T_x, so b_e = T_e and b_s = T_s + T_e and no fractional powers
// of q ever appear.  Every downstream use happens at q = 1 where this
// normalization matches the classical one.

#include <cstdint>
#include <map>
#include <vector>

#include "wallcross/errors.hpp"
#include "wallcross/laurent.hpp"
#include "wallcross/weyl.hpp"

namespace wallcross {

struct HeckeElement {
  const WeylGroup* group = nullptr;
  std::map<int, LaurentPoly> terms;  // element index -> coefficient, no zero terms

  void add_term(int w, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
};

inline HeckeElement hecke_unit(const WeylGroup& g) {
  HeckeElement h;
  h.group = &g;
  h.terms.emplace(g.identity(), LaurentPoly(1));
  return h;
}

inline HeckeElement hecke_T(const WeylGroup& g, int w) {
  HeckeElement h;
  h.group = &g;
  h.terms.emplace(w, LaurentPoly(1));
  return h;
}

/// Left multiplication by T_s.
inline HeckeElement hecke_Ts_times(const WeylGroup& g, int s, const HeckeElement& h) {
  HeckeElement r;
  r.group = &g;
  const LaurentPoly q = LaurentPoly::q_power(1);
  const LaurentPoly qm1 = q - LaurentPoly(1);
  for (const auto& [x, c] : h.terms) {
    int sx = g.left_mult(s, x);
    if (g.length(sx) > g.length(x)) {
      r.add_term(sx, c);
    } else {
      r.add_term(x, qm1 * c);
      r.add_term(sx, q * c);
    }
  }
  return r;
}

inline HeckeElement hecke_multiply(const HeckeElement& a, const HeckeElement& b) {
  check_usage(a.group && a.group == b.group, "hecke_multiply: mismatched groups");
  const WeylGroup& g = *a.group;
  HeckeElement r;
  r.group = &g;
  for (const auto& [w, cw] : a.terms) {
    // T_w b, peeling the word of w from the right
    HeckeElement acc = b;
    const auto& word = g.word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      acc = hecke_Ts_times(g, *it, acc);
    for (const auto& [x, cx] : acc.terms) r.add_term(x, cw * cx);
  }
  return r;
}

/// Ring map q -> 1 onto the integral group ring, as a coefficient vector
/// over the whole group.
inline std::vector<std::int64_t> specialize_q1(const HeckeElement& h) {
  check_usage(h.group != nullptr, "specialize_q1: element has no group");
  std::vector<std::int64_t> v(h.group->order(), 0);
  for (const auto& [w, c] : h.terms) v[w] = c.eval_at_one();
  return v;
}

// ---------------------------------------------------------------------------
// R-polynomials.  R_{x,y} = 0 unless x <= y, R_{x,x} = 1, and for a right
// descent s of y:
//   R_{x,y} = R_{xs,ys}                      if xs < x
//   R_{x,y} = (q-1) R_{x,ys} + q R_{xs,ys}   otherwise.

class RTable {
 public:
  explicit RTable(const WeylGroup& g) : g_(&g) {
    int n = g.order();
    r_.assign(size_t(n) * n, LaurentPoly());
    std::vector<int> by_len(n);
    std::iota(by_len.begin(), by_len.end(), 0);
    // element order is already sorted by length
    for (int y = 0; y < n; ++y) {
      if (g.length(y) == 0) { at(y, y) = LaurentPoly(1); continue; }
      int s = g.word(y).back();
      int ys = g.right_mult(y, s);
      const LaurentPoly q = LaurentPoly::q_power(1);
      const LaurentPoly qm1 = q - LaurentPoly(1);
      for (int x = 0; x < n; ++x) {
        if (!g.bruhat_leq(x, y)) continue;
        int xs = g.right_mult(x, s);
        if (g.length(xs) < g.length(x))
          at(x, y) = at(xs, ys);
        else
          at(x, y) = qm1 * at(x, ys) + q * at(xs, ys);
      }
    }
  }

  const WeylGroup& group() const { return *g_; }
  const LaurentPoly& operator()(int x, int y) const { return r_[size_t(x) * g_->order() + y]; }

 private:
  LaurentPoly& at(int x, int y) { return r_[size_t(x) * g_->order() + y]; }
  const WeylGroup* g_;
  std::vector<LaurentPoly> r_;
};

// ---------------------------------------------------------------------------
// Kazhdan-Lusztig table, built by the multiplication recursion
//   b_s b_w = b_{sw} + sum_{z : sz < z} mu(z,w) q^{(l(w)+1-l(z))/2} b_z
// for sw > w, where mu(z,w) is the top-degree coefficient of P_{z,w}.

class KLTable {
 public:
  explicit KLTable(const WeylGroup& g) : g_(&g) {
    const int n = g.order();
    p_.assign(size_t(n) * n, LaurentPoly());
    mu_.assign(size_t(n) * n, 0);
    for (int y = 0; y < n; ++y) {
      if (g.length(y) == 0) { at(y, y) = LaurentPoly(1); continue; }
      int s = g.word(y)[0];
      int w = g.left_mult(s, y);  // sw = y, length drops
      // b_s b_w in the T basis
      std::vector<LaurentPoly> col(n);
      const LaurentPoly q = LaurentPoly::q_power(1);
      const LaurentPoly qm1 = q - LaurentPoly(1);
      for (int x = 0; x < n; ++x) {
        const LaurentPoly& c = at(x, w);
        if (c.is_zero()) continue;
        col[x] += c;  // T_e part of b_s
        int sx = g.left_mult(s, x);
        if (g.length(sx) > g.length(x)) {
          col[sx] += c;
        } else {
          col[x] += qm1 * c;
          col[sx] += q * c;
        }
      }
      // subtract mu-corrections
      for (int z = 0; z < n; ++z) {
        if (z == w || !g.bruhat_leq(z, w)) continue;
        if (mu(z, w) == 0) continue;
        if (g.length(g.left_mult(s, z)) > g.length(z)) continue;  // need sz < z
        int e = (g.length(w) + 1 - g.length(z)) / 2;
        LaurentPoly f = LaurentPoly::q_power(e, mu(z, w));
        for (int x = 0; x < n; ++x) {
          const LaurentPoly& c = at(x, z);
          if (!c.is_zero()) col[x] -= f * c;
        }
      }
      for (int x = 0; x < n; ++x) {
        if (col[x].is_zero()) continue;
        check_consistent(g.bruhat_leq(x, y), "KL: support escapes the Bruhat interval");
        at(x, y) = col[x];
        validate_entry(x, y);
      }
      check_consistent(!at(y, y).is_zero() && at(y, y) == LaurentPoly(1),
                       "KL: P_{y,y} != 1");
    }
  }

  const WeylGroup& group() const { return *g_; }

  const LaurentPoly& operator()(int x, int y) const { return p_[size_t(x) * g_->order() + y]; }

  /// Top-degree coefficient for l(y)-l(x) odd; 0 otherwise.
  std::int64_t mu(int x, int y) const { return mu_[size_t(x) * g_->order() + y]; }

 private:
  LaurentPoly& at(int x, int y) { return p_[size_t(x) * g_->order() + y]; }

  void validate_entry(int x, int y) {
    const LaurentPoly& p = at(x, y);
    if (x == y) return;
    int bound = (g_->length(y) - g_->length(x) - 1) / 2;
    check_consistent(p.coeff(0) == 1 && p.min_exp() == 0, "KL: constant term != 1");
    check_consistent(p.degree() <= bound, "KL: degree bound violated");
    if ((g_->length(y) - g_->length(x)) % 2 == 1)
      mu_[size_t(x) * g_->order() + y] = p.coeff(bound);
  }

  const WeylGroup* g_;
  std::vector<LaurentPoly> p_;
  std::vector<std::int64_t> mu_;
};

/// b_w = sum_{x <= w} P_{x,w} T_x.
inline HeckeElement kl_basis(const KLTable& kl, int w) {
  const WeylGroup& g = kl.group();
  HeckeElement h;
  h.group = &g;
  for (int x = 0; x < g.order(); ++x)
    if (g.bruhat_leq(x, w)) h.add_term(x, kl(x, w));
  return h;
}

}  // namespace wallcross
