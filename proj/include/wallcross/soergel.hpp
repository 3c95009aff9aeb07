#pragma once

// Bott-Samelson modules over the coinvariant algebra: iterated extension
// of scalars through the rank-1 invariant subalgebras, starting from the
// one-dimensional module.  These are the module-level shadows of iterated
// wall-crossing applied to the dominant Verma, and exact Hom computations
// between them realize the Structure-theorem checks.
//
// Modules are left C-modules presented by graded dimensions plus the
// action of the degree-1 generators; gradings carry no shifts and all Hom
// counts are total (ungraded).  A linear map commuting with the degree-1
// generators commutes with all of C, so the commutant systems below only
// constrain against the generators; the full-algebra comparison lives in
// the test suite.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "wallcross/coinv.hpp"
#include "wallcross/errors.hpp"
#include "wallcross/linalg.hpp"

namespace wallcross {

using BSWord = std::vector<int>;

struct GradedModule {
  const CoinvariantAlgebra* C = nullptr;
  std::vector<int> dims;                 // dims[d] = dim M_d
  std::vector<std::vector<Mat>> act;     // act[j][d] : M_d -> M_{d+1}

  int top() const { return int(dims.size()) - 1; }
  int dim_at(int d) const { return d < 0 || d >= int(dims.size()) ? 0 : dims[d]; }
  int total_dim() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
  }
  const Mat& action(int j, int d) const { return act[j][d]; }
};

inline GradedModule unit_module(const CoinvariantAlgebra& C) {
  GradedModule m;
  m.C = &C;
  m.dims = {1};
  m.act.assign(C.rank(), std::vector<Mat>{Mat(0, 1)});
  return m;
}

/// Action of a monomial x^e on M starting at degree d.
inline Mat monomial_action(const GradedModule& m, const Mono& mono, int d) {
  Mat r = Mat::identity(m.dim_at(d));
  int cur = d;
  for (size_t j = 0; j < mono.e.size(); ++j)
    for (int k = 0; k < mono.e[j]; ++k) {
      if (m.dim_at(cur) == 0) return Mat(0, m.dim_at(d));
      Mat step = cur <= m.top() ? m.action(int(j), cur) : Mat(0, m.dim_at(cur));
      r = step * r;
      ++cur;
    }
  return r;
}

/// Action of a polynomial (a class representative) on M from degree d.
inline Mat poly_action(const GradedModule& m, const MultiPoly& f, int d) {
  int deg = 0;
  check_usage(f.is_homogeneous(&deg), "poly_action: polynomial not homogeneous");
  Mat r(m.dim_at(d + deg), m.dim_at(d));
  for (const auto& [mono, c] : f.terms()) {
    Mat t = monomial_action(m, mono, d);
    if (t.rows() != r.rows()) t = Mat(r.rows(), r.cols());
    t *= c;
    r = r + t;
  }
  return r;
}

namespace detail {

/// Data for extension of scalars through C^s: the decomposition
/// x_j x_s = u_j + v_j x_s with u_j, v_j invariant under s.
struct WallSplit {
  std::vector<MultiPoly> u;  // u[j]: degree-2 invariant representative
  std::vector<MultiPoly> v;  // v[j]: degree-1 invariant representative
};

inline const WallSplit& wall_split(const CoinvariantAlgebra& C, int s) {
  static std::map<std::pair<const CoinvariantAlgebra*, int>, WallSplit> cache;
  auto key = std::make_pair(&C, s);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const WeylGroup& g = C.group();
  const int r = g.rank();
  WallSplit ws;
  ws.u.resize(r);
  ws.v.resize(r);
  InvariantSubalgebra inv = C.invariant_subalgebra(parabolic_from_generators(g, {s}));

  // columns: basis of (C^s)_2, then classes of x_k x_s for k != s
  int n2 = C.graded_dim(2);
  std::vector<int> others;
  for (int k = 0; k < r; ++k)
    if (k != s) others.push_back(k);
  int cols = inv.basis[2].cols() + int(others.size());
  Mat sys(n2, cols);
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < inv.basis[2].cols(); ++j) sys(i, j) = inv.basis[2](i, j);
  for (size_t k = 0; k < others.size(); ++k) {
    auto [dd, sc] =
        C.coords(MultiPoly::variable(others[k]) * MultiPoly::variable(s));
    for (int i = 0; i < n2; ++i) sys(i, inv.basis[2].cols() + int(k)) = sc[i];
  }
  check_consistent(cols == n2, "C is not free of rank 2 over C^s in degree 2");

  for (int j = 0; j < r; ++j) {
    auto [dd, target] = C.coords(MultiPoly::variable(j) * MultiPoly::variable(s));
    auto [ok, x] = solve(sys, target);
    check_consistent(ok, "failed to split x_j x_s over C^s");
    // u_j: invariant degree-2 part, lifted to a polynomial representative
    MultiPoly u;
    for (int c = 0; c < inv.basis[2].cols(); ++c) {
      if (x[c] == 0) continue;
      for (int i = 0; i < n2; ++i) {
        if (inv.basis[2](i, c) == 0) continue;
        MultiPoly t = C.schubert_poly(C.basis_elements(2)[i]);
        t *= x[c] * inv.basis[2](i, c);
        u += t;
      }
    }
    ws.u[j] = std::move(u);
    MultiPoly v;
    for (size_t k = 0; k < others.size(); ++k) {
      const Rational& c = x[inv.basis[2].cols() + int(k)];
      if (c != 0) v += MultiPoly::variable(others[k], c);
    }
    ws.v[j] = std::move(v);
  }
  return cache.emplace(key, std::move(ws)).first->second;
}

}  // namespace detail

/// Extension of scalars C (x)_{C^s} M, with free basis {1, x_s} of C over
/// C^s.  Degree-d part is M_d (+) M_{d-1}; total dimension doubles.
inline GradedModule apply_wall(int s, const GradedModule& m) {
  check_usage(m.C != nullptr, "apply_wall: module has no algebra");
  const CoinvariantAlgebra& C = *m.C;
  check_usage(s >= 0 && s < C.rank(), "apply_wall: generator out of range");
  const auto& ws = detail::wall_split(C, s);
  const int r = C.rank();

  GradedModule n;
  n.C = &C;
  int ntop = m.top() + 1;
  n.dims.resize(ntop + 1);
  for (int d = 0; d <= ntop; ++d) n.dims[d] = m.dim_at(d) + m.dim_at(d - 1);
  n.act.assign(r, {});
  for (int j = 0; j < r; ++j) {
    n.act[j].resize(ntop + 1);
    for (int d = 0; d <= ntop; ++d) {
      int rows = n.dim_at(d + 1), cols = n.dim_at(d);
      Mat a(rows, cols);
      int m_d = m.dim_at(d), m_d1 = m.dim_at(d - 1);
      // block (1 (x) M_{d+1}) <- (1 (x) M_d)
      if (j != s && d <= m.top()) {
        const Mat& x = m.action(j, d);
        for (int i = 0; i < x.rows(); ++i)
          for (int c = 0; c < m_d; ++c) a(i, c) = x(i, c);
      }
      // block (x_s (x) M_d) <- (1 (x) M_d): identity when j == s
      if (j == s)
        for (int c = 0; c < m_d; ++c) a(m.dim_at(d + 1) + c, c) = 1;
      // blocks from (x_s (x) M_{d-1})
      if (m_d1 > 0) {
        Mat u = poly_action(m, ws.u[j], d - 1);  // M_{d-1} -> M_{d+1}
        for (int i = 0; i < u.rows(); ++i)
          for (int c = 0; c < m_d1; ++c) a(i, m_d + c) = u(i, c);
        Mat v = poly_action(m, ws.v[j], d - 1);  // M_{d-1} -> M_d
        for (int i = 0; i < v.rows(); ++i)
          for (int c = 0; c < m_d1; ++c) a(m.dim_at(d + 1) + i, m_d + c) = v(i, c);
      }
      n.act[j][d] = std::move(a);
    }
  }

  // cheap factor-through-C smoke check; the exhaustive version runs in the
  // test suite on small words
  if (n.total_dim() <= 16) {
    for (int e = 1; e <= n.top(); ++e)
      for (const auto& inv : C.invariants(e))
        for (int d = 0; d + e <= n.top(); ++d)
          check_consistent(poly_action(n, inv, d).is_zero(),
                           "positive-degree invariant acts non-trivially");
  } else {
    for (const auto& inv : C.invariants(2))
      check_consistent(poly_action(n, inv, 0).is_zero(),
                       "positive-degree invariant acts non-trivially");
  }
  return n;
}

inline GradedModule bott_samelson(const CoinvariantAlgebra& C, const BSWord& word) {
  GradedModule m = unit_module(C);
  for (int s : word) m = apply_wall(s, m);
  return m;
}

// ---------------------------------------------------------------------------
// Hom spaces.

struct HomMap {
  int shift = 0;
  std::vector<Mat> blocks;  // blocks[i] : M_i -> N_{i+shift}; index i over M degrees

  /// Flattened square matrix when M == N (for endomorphism arithmetic).
  Mat flatten(const GradedModule& m, const GradedModule& n) const {
    int dm = m.total_dim(), dn = n.total_dim();
    std::vector<int> moff(m.dims.size() + 1, 0), noff(n.dims.size() + 1, 0);
    for (size_t d = 0; d < m.dims.size(); ++d) moff[d + 1] = moff[d] + m.dims[d];
    for (size_t d = 0; d < n.dims.size(); ++d) noff[d + 1] = noff[d] + n.dims[d];
    Mat f(dn, dm);
    for (size_t i = 0; i < blocks.size(); ++i) {
      int tgt = int(i) + shift;
      if (tgt < 0 || tgt >= int(n.dims.size())) continue;
      for (int a = 0; a < blocks[i].rows(); ++a)
        for (int b = 0; b < blocks[i].cols(); ++b)
          f(noff[tgt] + a, moff[i] + b) = blocks[i](a, b);
    }
    return f;
  }
};

struct HomSpace {
  int dim = 0;
  std::vector<HomMap> basis;
};

/// All module maps M -> N commuting with the generator actions, computed
/// exactly, one graded shift at a time (an ungraded commuting map is the
/// sum of its shift components, and the constraint preserves shifts).
inline HomSpace hom_space(const GradedModule& m, const GradedModule& n) {
  check_usage(m.C != nullptr && m.C == n.C, "hom_space: modules over different algebras");
  const int r = m.C->rank();
  HomSpace out;
  for (int shift = -m.top(); shift <= n.top(); ++shift) {
    // unknowns: f_i : M_i -> N_{i+shift}
    std::vector<int> offset(m.dims.size() + 1, 0);
    for (size_t i = 0; i < m.dims.size(); ++i)
      offset[i + 1] = offset[i] + m.dims[i] * n.dim_at(int(i) + shift);
    int unknowns = offset[m.dims.size()];
    if (unknowns == 0) continue;
    SparseSystem sys(unknowns);
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i <= m.top(); ++i) {
        int rows_n = n.dim_at(i + 1 + shift), cols_m = m.dims[i];
        if (rows_n == 0 || cols_m == 0) continue;
        const Mat& xm = m.action(j, i);
        for (int a = 0; a < rows_n; ++a)
          for (int b = 0; b < cols_m; ++b) {
            std::vector<std::pair<int, Rational>> row;
            // + f_{i+1}[a][c] * X^M[c][b]
            if (i + 1 <= m.top() && n.dim_at(i + 1 + shift) > 0)
              for (int c = 0; c < m.dim_at(i + 1); ++c)
                if (xm(c, b) != 0)
                  row.emplace_back(offset[i + 1] + a * m.dim_at(i + 1) + c, xm(c, b));
            // - X^N[a][c] * f_i[c][b]
            if (n.dim_at(i + shift) > 0 && i + shift >= 0 && i + shift <= n.top()) {
              const Mat& xn = n.action(j, i + shift);
              for (int c = 0; c < n.dim_at(i + shift); ++c)
                if (xn(a, c) != 0)
                  row.emplace_back(offset[i] + c * m.dims[i] + b, -xn(a, c));
            }
            if (!row.empty()) sys.add_row(std::move(row));
          }
      }
    }
    for (const auto& v : sys.kernel()) {
      HomMap h;
      h.shift = shift;
      h.blocks.resize(m.dims.size());
      for (size_t i = 0; i < m.dims.size(); ++i) {
        int rows = n.dim_at(int(i) + shift);
        Mat b(rows, m.dims[i]);
        for (int a = 0; a < rows; ++a)
          for (int c = 0; c < m.dims[i]; ++c) b(a, c) = v[offset[i] + a * m.dims[i] + c];
        h.blocks[i] = std::move(b);
      }
      out.basis.push_back(std::move(h));
    }
  }
  out.dim = int(out.basis.size());
  return out;
}

// ---------------------------------------------------------------------------
// Splitting into indecomposable summands.

struct SplitResult {
  std::vector<GradedModule> summands;
  bool complete = true;  // false when a non-rational eigenvalue blocked a split
};

namespace detail {

inline GradedModule restrict_module(const GradedModule& m,
                                    const std::vector<Mat>& subspace) {
  GradedModule out;
  out.C = m.C;
  out.dims.resize(m.dims.size());
  for (size_t d = 0; d < m.dims.size(); ++d) out.dims[d] = subspace[d].cols();
  while (out.dims.size() > 1 && out.dims.back() == 0) out.dims.pop_back();
  int r = m.C->rank();
  out.act.assign(r, {});
  for (int j = 0; j < r; ++j) {
    out.act[j].resize(out.dims.size());
    for (int d = 0; d < int(out.dims.size()); ++d) {
      int rows = d + 1 < int(out.dims.size()) ? out.dims[d + 1] : 0;
      Mat a(rows, out.dims[d]);
      if (rows > 0 && out.dims[d] > 0) {
        Mat img = m.action(j, d) * subspace[d];  // ambient coords of images
        // express in the subspace basis of degree d+1
        for (int c = 0; c < out.dims[d]; ++c) {
          std::vector<Rational> rhs(img.rows());
          for (int i = 0; i < img.rows(); ++i) rhs[i] = img(i, c);
          auto [ok, x] = solve(subspace[d + 1], rhs);
          check_consistent(ok, "restrict_module: subspace not action-stable");
          for (int i = 0; i < rows; ++i) a(i, c) = x[i];
        }
      }
      out.act[j][d] = std::move(a);
    }
  }
  return out;
}

/// Minimal polynomial of a degree-0 endomorphism given by per-degree blocks.
inline std::vector<Rational> min_poly(const std::vector<Mat>& blocks, int total_dim) {
  // Krylov on the flattened operator: find the first dependence among
  // vec(a^0), vec(a^1), ...
  std::vector<std::vector<Rational>> powers;
  std::vector<Mat> cur;
  for (const auto& b : blocks) cur.push_back(Mat::identity(b.rows()));
  auto flatten = [&](const std::vector<Mat>& mm) {
    std::vector<Rational> v;
    for (const auto& b : mm)
      for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) v.push_back(b(i, j));
    return v;
  };
  for (int k = 0; k <= total_dim; ++k) {
    powers.push_back(flatten(cur));
    // dependence test
    int n = int(powers[0].size());
    Mat sys(n, int(powers.size()));
    for (size_t c = 0; c < powers.size(); ++c)
      for (int i = 0; i < n; ++i) sys(i, int(c)) = powers[c][i];
    auto ker = kernel_basis(sys);
    if (!ker.empty()) {
      // the kernel vector with highest power normalized gives the min poly
      std::vector<Rational> coeffs = ker.front();
      while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
      Rational lead = coeffs.back();
      for (auto& c : coeffs) c /= lead;
      return coeffs;  // sum coeffs[k] a^k = 0, monic
    }
    for (size_t d = 0; d < cur.size(); ++d) cur[d] = blocks[d] * cur[d];
  }
  throw ConsistencyError("min_poly: no dependence found");
}

/// Rational roots of a monic rational polynomial, with multiplicities
/// removed from `poly` (synthetic division).  Returns false if divisor
/// enumeration blew up (avoided at our sizes).
inline bool rational_roots(std::vector<Rational> poly, std::vector<Rational>* roots,
                           int* residual_degree) {
  roots->clear();
  // clear denominators -> primitive integer polynomial
  BigInt den = 1;
  for (const auto& c : poly) den = den * c.get_den() / gcd(BigInt(den), BigInt(c.get_den()));
  std::vector<BigInt> ip;
  for (const auto& c : poly) ip.push_back(BigInt(c * Rational(den)));
  auto divisors = [](BigInt v) {
    std::vector<BigInt> out;
    v = abs(v);
    if (v == 0) return out;
    for (BigInt k = 1; k * k <= v && k < 100000; ++k)
      if (v % k == 0) {
        out.push_back(k);
        out.push_back(v / k);
      }
    return out;
  };
  while (ip.size() > 1) {
    if (ip.front() == 0) {  // root 0
      roots->push_back(Rational(0));
      ip.erase(ip.begin());
      continue;
    }
    bool found = false;
    for (const BigInt& p : divisors(ip.front())) {
      for (const BigInt& q : divisors(ip.back())) {
        for (int sign = 1; sign >= -1 && !found; sign -= 2) {
          Rational cand(sign * p, q);
          cand.canonicalize();
          // evaluate
          Rational val = 0, pw = 1;
          for (const auto& c : ip) {
            val += Rational(c) * pw;
            pw *= cand;
          }
          if (val == 0) {
            roots->push_back(cand);
            // synthetic division by (t - cand) over the rationals
            std::vector<Rational> rp(ip.begin(), ip.end());
            std::vector<Rational> quot(rp.size() - 1);
            Rational carry = 0;
            for (int k = int(rp.size()) - 1; k >= 1; --k) {
              quot[k - 1] = rp[k] + carry;
              carry = quot[k - 1] * cand;
            }
            // re-clear denominators
            BigInt dd = 1;
            for (const auto& c : quot) dd = dd * c.get_den() / gcd(BigInt(dd), BigInt(c.get_den()));
            ip.clear();
            for (const auto& c : quot) ip.push_back(BigInt(c * Rational(dd)));
            found = true;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  *residual_degree = int(ip.size()) - 1;
  std::sort(roots->begin(), roots->end());
  roots->erase(std::unique(roots->begin(), roots->end()), roots->end());
  return true;
}

}  // namespace detail

constexpr unsigned kSplitSeed = 123456789;

/// Exact decomposition into indecomposable graded summands, driven by the
/// degree-0 endomorphism algebra.  Uses generalized eigenspaces of seeded
/// random endomorphisms; non-rational eigenvalues are reported, never
/// approximated.
inline SplitResult split_idempotents(const GradedModule& m) {
  SplitResult out;
  std::mt19937 rng(kSplitSeed);
  std::vector<GradedModule> stack{m};
  while (!stack.empty()) {
    GradedModule cur = std::move(stack.back());
    stack.pop_back();
    if (cur.total_dim() == 0) continue;
    HomSpace end = hom_space(cur, cur);
    std::vector<const HomMap*> deg0;
    for (const auto& h : end.basis)
      if (h.shift == 0) deg0.push_back(&h);
    if (deg0.size() <= 1) {
      out.summands.push_back(std::move(cur));
      continue;
    }
    // local endomorphism ring => indecomposable: check via the trace form
    // radical of the degree-0 part
    {
      int k = int(deg0.size());
      Mat gram(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          Rational t = 0;
          for (size_t d = 0; d < cur.dims.size(); ++d)
            t += (deg0[i]->blocks[d] * deg0[j]->blocks[d]).trace();
          gram(i, j) = t;
        }
      if (int(kernel_basis(gram).size()) == k - 1) {
        out.summands.push_back(std::move(cur));
        continue;
      }
    }
    bool split_done = false;
    for (int attempt = 0; attempt < 40 && !split_done; ++attempt) {
      std::uniform_int_distribution<int> coeff(-4, 4);
      std::vector<Mat> a;
      for (size_t d = 0; d < cur.dims.size(); ++d) a.push_back(Mat(cur.dims[d], cur.dims[d]));
      for (const HomMap* h : deg0) {
        int c = coeff(rng);
        if (c == 0) continue;
        for (size_t d = 0; d < cur.dims.size(); ++d) {
          Mat t = h->blocks[d];
          t *= Rational(c);
          a[d] = a[d] + t;
        }
      }
      auto mp = detail::min_poly(a, cur.total_dim());
      std::vector<Rational> roots;
      int residual = 0;
      detail::rational_roots(mp, &roots, &residual);
      if (roots.empty() || (roots.size() == 1 && residual == 0)) continue;
      // split off the generalized eigenspace of the first root
      const Rational& c0 = roots.front();
      int power = cur.total_dim();
      std::vector<Mat> eig(cur.dims.size()), rest(cur.dims.size());
      bool ok = true;
      for (size_t d = 0; d < cur.dims.size(); ++d) {
        Mat shifted = a[d];
        for (int i = 0; i < shifted.rows(); ++i) shifted(i, i) -= c0;
        Mat pw = Mat::identity(shifted.rows());
        for (int k = 0; k < power; ++k) pw = shifted * pw;
        auto kb = kernel_basis(pw);       // generalized eigenspace
        Mat kercols(cur.dims[d], int(kb.size()));
        for (size_t c = 0; c < kb.size(); ++c)
          for (int i = 0; i < cur.dims[d]; ++i) kercols(i, int(c)) = kb[c][i];
        eig[d] = std::move(kercols);
        // complement: column space of pw
        Mat img = pw.transposed();
        auto piv = rref(img);
        Mat imgcols(cur.dims[d], int(piv.size()));
        for (size_t kk = 0; kk < piv.size(); ++kk)
          for (int i = 0; i < cur.dims[d]; ++i) imgcols(i, int(kk)) = img(int(kk), i);
        rest[d] = std::move(imgcols);
        if (eig[d].cols() + rest[d].cols() != cur.dims[d]) ok = false;
      }
      int eig_total = 0, rest_total = 0;
      for (size_t d = 0; d < cur.dims.size(); ++d) {
        eig_total += eig[d].cols();
        rest_total += rest[d].cols();
      }
      if (!ok || eig_total == 0 || rest_total == 0) continue;
      stack.push_back(detail::restrict_module(cur, eig));
      stack.push_back(detail::restrict_module(cur, rest));
      split_done = true;
    }
    if (!split_done) {
      out.complete = false;
      out.summands.push_back(std::move(cur));
    }
  }
  std::sort(out.summands.begin(), out.summands.end(),
            [](const GradedModule& x, const GradedModule& y) {
              if (x.total_dim() != y.total_dim()) return x.total_dim() > y.total_dim();
              return x.dims > y.dims;
            });
  return out;
}

}  // namespace wallcross
