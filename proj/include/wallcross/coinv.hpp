#pragma once

// The coinvariant algebra C = polynomials on the Cartan dual modulo the
// ideal generated by positive-degree invariants, with its Weyl group
// action, Demazure operators and Schubert basis {X_w}, deg X_w = l(w).
//
// Coordinates are centered so that the dot-action becomes the linear
// reflection action; concretely the variables are the fundamental
// coweights, the reflection s_i sends x_i to x_i minus the i-th simple
// coroot and fixes the other variables, and the Demazure operator divides
// by the simple coroot.  Normal forms modulo the invariant ideal are
// computed degree by degree with plain rational row reduction; no Groebner
// machinery at these sizes.

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "wallcross/errors.hpp"
#include "wallcross/linalg.hpp"
#include "wallcross/multipoly.hpp"
#include "wallcross/weyl.hpp"

namespace wallcross {

/// i-th simple coroot as a linear form in the fundamental-coweight
/// variables.
inline MultiPoly simple_coroot_form(const CartanDatum& d, int i) {
  MultiPoly f;
  for (int j = 0; j < d.rank; ++j)
    if (d.cartan[i][j] != 0) f += MultiPoly::variable(j, Rational(d.cartan[i][j]));
  return f;
}

inline std::vector<MultiPoly> reflection_substitution(const CartanDatum& d, int i) {
  std::vector<MultiPoly> forms;
  for (int j = 0; j < d.rank; ++j) forms.push_back(MultiPoly::variable(j));
  forms[i] -= simple_coroot_form(d, i);
  return forms;
}

/// Action of w on polynomials, composed along the reduced word.
inline MultiPoly w_act(const WeylGroup& g, int w, const MultiPoly& f) {
  MultiPoly r = f;
  const auto& word = g.word(w);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    r = r.substitute_linear(reflection_substitution(g.datum(), *it));
  return r;
}

/// Demazure operator (f - s_i f) / coroot_i.
inline MultiPoly demazure(const CartanDatum& d, int i, const MultiPoly& f) {
  check_usage(i >= 0 && i < d.rank, "demazure: generator index out of range");
  MultiPoly num = f - f.substitute_linear(reflection_substitution(d, i));
  if (num.is_zero()) return num;
  return num.divide_by_linear(simple_coroot_form(d, i), i);
}

struct InvariantSubalgebra {
  std::vector<Mat> basis;      // basis[d]: columns = fixed vectors in Schubert coords
  std::vector<long> hilbert;   // graded dimensions
  int dim = 0;
};

class CoinvariantAlgebra {
 public:
  explicit CoinvariantAlgebra(const WeylGroup& g, bool tamper_normalization = false)
      : g_(&g) {
    check_usage(g.order() <= 48, "coinvariant algebra supported for |W| <= 48");
    build(tamper_normalization);
  }

  const WeylGroup& group() const { return *g_; }
  int rank() const { return g_->rank(); }
  int top_degree() const { return top_; }
  int dim() const { return g_->order(); }

  std::vector<long> hilbert() const {
    std::vector<long> h(top_ + 1);
    for (int d = 0; d <= top_; ++d) h[d] = long(basis_elems_[d].size());
    return h;
  }

  /// Elements w with l(w) = d, in index order; X_w for these form the
  /// degree-d basis.
  const std::vector<int>& basis_elements(int d) const { return basis_elems_[d]; }

  int graded_dim(int d) const {
    return d < 0 || d > top_ ? 0 : int(basis_elems_[d].size());
  }

  const MultiPoly& schubert_poly(int w) const { return schubert_[w]; }

  /// Schubert coordinates of a homogeneous polynomial's class.
  std::pair<int, std::vector<Rational>> coords(const MultiPoly& f) const {
    int deg = 0;
    check_usage(f.is_homogeneous(&deg), "coords: polynomial not homogeneous");
    if (deg > top_) return {deg, std::vector<Rational>()};
    std::vector<Rational> std_coords(std_monos_[deg].size());
    for (const auto& [m, c] : f.terms()) {
      const auto& red = reduce_[deg];
      int col = mono_index_[deg].at(m);
      for (int i = 0; i < red.rows(); ++i)
        if (red(i, col) != 0) std_coords[i] += c * red(i, col);
    }
    return {deg, std_to_schubert_[deg].apply(std_coords)};
  }

  /// Class of a polynomial, per degree, in Schubert coordinates.
  /// Index d of the result holds the degree-d component (may be empty).
  std::vector<std::vector<Rational>> coords_all_degrees(const MultiPoly& f) const {
    std::vector<std::vector<Rational>> out(top_ + 1);
    for (int d = 0; d <= top_; ++d) out[d].assign(graded_dim(d), Rational(0));
    for (const auto& [m, c] : f.terms()) {
      int deg = m.degree();
      if (deg > top_) continue;
      const auto& red = reduce_[deg];
      int col = mono_index_[deg].at(m);
      std::vector<Rational> std_coords(std_monos_[deg].size());
      for (int i = 0; i < red.rows(); ++i) std_coords[i] = c * red(i, col);
      auto sc = std_to_schubert_[deg].apply(std_coords);
      for (size_t i = 0; i < sc.size(); ++i) out[deg][i] += sc[i];
    }
    return out;
  }

  /// Multiplication by the degree-1 generator x_j: C_d -> C_{d+1},
  /// Schubert coordinates.  Zero-size matrix above the top degree.
  const Mat& mult_by_var(int j, int d) const { return mult_var_[j][d]; }

  /// Action of the simple reflection s_i on C_d, Schubert coordinates.
  const Mat& gen_action(int i, int d) const { return gen_action_[i][d]; }

  Mat action(int w, int d) const {
    Mat m = Mat::identity(graded_dim(d));
    const auto& word = g_->word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it) m = gen_action_[*it][d] * m;
    return m;
  }

  Rational trace_on_C(int w) const {
    Rational t = 0;
    for (int d = 0; d <= top_; ++d) t += action(w, d).trace();
    return t;
  }

  /// Product of classes given in Schubert coordinates.
  std::vector<Rational> product(int deg_a, const std::vector<Rational>& a, int deg_b,
                                const std::vector<Rational>& b) const {
    int deg = deg_a + deg_b;
    if (deg > top_) return {};
    MultiPoly f;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j) {
        if (b[j] == 0) continue;
        MultiPoly t = schubert_[basis_elems_[deg_a][i]] * schubert_[basis_elems_[deg_b][j]];
        t *= a[i] * b[j];
        f += t;
      }
    }
    if (f.is_zero()) return std::vector<Rational>(graded_dim(deg));
    return coords(f).second;
  }

  /// Structure constants of X_u X_v over the Schubert basis.
  std::vector<std::pair<int, Rational>> structure_constants(int u, int v) const {
    int deg = g_->length(u) + g_->length(v);
    std::vector<std::pair<int, Rational>> out;
    if (deg > top_) return out;
    auto [dd, sc] = coords(schubert_[u] * schubert_[v]);
    for (size_t i = 0; i < sc.size(); ++i)
      if (sc[i] != 0) out.emplace_back(basis_elems_[deg][i], sc[i]);
    return out;
  }

  /// Fixed subalgebra of a subgroup (Reynolds projector per degree).
  /// Checks closure under multiplication and the index formula.
  InvariantSubalgebra invariant_subalgebra(const ParabolicData& sub) const {
    InvariantSubalgebra out;
    out.basis.resize(top_ + 1);
    out.hilbert.assign(top_ + 1, 0);
    for (int d = 0; d <= top_; ++d) {
      int n = graded_dim(d);
      Mat proj(n, n);
      for (int w : sub.elements) proj = proj + action(w, d);
      // image of the projector = fixed space
      Mat cols = proj.transposed();
      std::vector<int> pivots = rref(cols);
      Mat basis(n, int(pivots.size()));
      for (size_t k = 0; k < pivots.size(); ++k)
        for (int i = 0; i < n; ++i) basis(i, int(k)) = cols(int(k), i);
      out.basis[d] = std::move(basis);
      out.hilbert[d] = long(pivots.size());
      out.dim += int(pivots.size());
    }
    check_consistent(out.dim * int(sub.elements.size()) == g_->order(),
                     "invariant subalgebra dimension != |W|/|W'|");
    verify_closure(out);
    return out;
  }

 private:
  void verify_closure(const InvariantSubalgebra& s) const {
    for (int da = 0; da <= top_; ++da)
      for (int db = da; da + db <= top_; ++db) {
        int n = graded_dim(da + db);
        const Mat& target = s.basis[da + db];
        for (int a = 0; a < s.basis[da].cols(); ++a)
          for (int b = 0; b < s.basis[db].cols(); ++b) {
            std::vector<Rational> va(graded_dim(da)), vb(graded_dim(db));
            for (int i = 0; i < graded_dim(da); ++i) va[i] = s.basis[da](i, a);
            for (int i = 0; i < graded_dim(db); ++i) vb[i] = s.basis[db](i, b);
            auto prod = product(da, va, db, vb);
            if (prod.empty()) prod.assign(n, Rational(0));
            Mat sys(n, target.cols());
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < target.cols(); ++j) sys(i, j) = target(i, j);
            auto [ok, x] = solve(sys, prod);
            check_consistent(ok, "invariant subalgebra not closed under product");
          }
      }
  }

  void build(bool tamper_normalization) {
    const CartanDatum& dat = g_->datum();
    const int r = dat.rank;
    top_ = int(dat.positive_roots.size());

    mono_list_.resize(top_ + 2);
    mono_index_.resize(top_ + 2);
    for (int d = 0; d <= top_ + 1; ++d) {
      mono_list_[d] = monomials_of_degree(r, d);
      for (size_t i = 0; i < mono_list_[d].size(); ++i) mono_index_[d][mono_list_[d][i]] = int(i);
    }

    // generator substitution matrices on raw monomials, per degree
    std::vector<std::vector<Mat>> genpoly(r);
    for (int i = 0; i < r; ++i) {
      genpoly[i].resize(top_ + 1);
      auto forms = reflection_substitution(dat, i);
      for (int d = 0; d <= top_; ++d) {
        int n = int(mono_list_[d].size());
        Mat m(n, n);
        for (int col = 0; col < n; ++col) {
          MultiPoly img = MultiPoly::monomial(mono_list_[d][col], Rational(1))
                              .substitute_linear(forms);
          for (const auto& [mm, c] : img.terms()) m(mono_index_[d].at(mm), col) = c;
        }
        genpoly[i][d] = std::move(m);
      }
    }

    // invariants of each positive degree = joint fixed space of the generators
    std::vector<std::vector<MultiPoly>> inv_basis(top_ + 1);
    for (int d = 1; d <= top_; ++d) {
      int n = int(mono_list_[d].size());
      Mat sys(r * n, n);
      for (int i = 0; i < r; ++i)
        for (int row = 0; row < n; ++row)
          for (int col = 0; col < n; ++col)
            sys(i * n + row, col) = genpoly[i][d](row, col) - (row == col ? 1 : 0);
      for (const auto& v : kernel_basis(std::move(sys))) {
        MultiPoly p;
        for (int k = 0; k < n; ++k)
          if (v[k] != 0) p.add_term(mono_list_[d][k], v[k]);
        inv_basis[d].push_back(std::move(p));
      }
    }

    // ideal pieces and normal forms
    std_monos_.resize(top_ + 1);
    reduce_.resize(top_ + 1);
    for (int d = 0; d <= top_; ++d) {
      int n = int(mono_list_[d].size());
      std::vector<std::vector<Rational>> rows;
      for (int e = 1; e <= d; ++e)
        for (const auto& gpoly : inv_basis[e])
          for (const auto& m2 : mono_list_[d - e]) {
            MultiPoly p = gpoly * MultiPoly::monomial(m2, Rational(1));
            std::vector<Rational> row(n);
            for (const auto& [mm, c] : p.terms()) row[mono_index_[d].at(mm)] = c;
            rows.push_back(std::move(row));
          }
      Mat ideal(int(rows.size()), n);
      for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < n; ++j) ideal(int(i), j) = rows[i][j];
      std::vector<int> pivots = rref(ideal);
      std::vector<bool> is_pivot(n, false);
      for (int p : pivots) is_pivot[p] = true;
      std::vector<int> std_cols;
      for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) std_cols.push_back(j);
      for (int j : std_cols) std_monos_[d].push_back(mono_list_[d][j]);
      // reduction: pivot monomial -> minus tail over standard monomials
      Mat red(int(std_cols.size()), n);
      for (size_t k = 0; k < std_cols.size(); ++k) red(int(k), std_cols[k]) = 1;
      for (size_t prow = 0; prow < pivots.size(); ++prow)
        for (size_t k = 0; k < std_cols.size(); ++k)
          red(int(k), pivots[prow]) = -ideal(int(prow), std_cols[k]);
      reduce_[d] = std::move(red);
    }

    basis_elems_.assign(top_ + 1, {});
    for (int w = 0; w < g_->order(); ++w) basis_elems_[g_->length(w)].push_back(w);
    for (int d = 0; d <= top_; ++d)
      check_consistent(std_monos_[d].size() == basis_elems_[d].size(),
                       "graded dimension of the quotient disagrees with length counts");

    // Schubert polynomials: top class is the positive-coroot product scaled
    // by 1/|W|, the rest are Demazure descents.
    MultiPoly topf(Rational(1));
    for (const auto& root : dat.positive_roots) {
      MultiPoly form;
      for (int j = 0; j < r; ++j) {
        Rational c = 0;
        for (int k = 0; k < r; ++k) c += Rational(root.coroot_sc[k] * dat.cartan[k][j]);
        if (c != 0) form += MultiPoly::variable(j, c);
      }
      topf = topf * form;
    }
    if (!tamper_normalization) topf *= Rational(1, g_->order());
    schubert_.assign(g_->order(), MultiPoly());
    schubert_[g_->longest()] = topf;
    for (int d = top_ - 1; d >= 0; --d)
      for (int w : basis_elems_[d]) {
        int s = -1;
        for (int i = 0; i < r; ++i)
          if (g_->length(g_->right_mult(w, i)) > g_->length(w)) { s = i; break; }
        schubert_[w] = demazure(dat, s, schubert_[g_->right_mult(w, s)]);
      }
    check_consistent(schubert_[g_->identity()] == MultiPoly(Rational(1)),
                     "Schubert normalization: X_e != 1");

    // standard-monomial coordinates of the Schubert classes, per degree
    std_to_schubert_.resize(top_ + 1);
    for (int d = 0; d <= top_; ++d) {
      int n = graded_dim(d);
      Mat s(n, n);
      for (int col = 0; col < n; ++col) {
        std::vector<Rational> v(n);
        for (const auto& [m, c] : schubert_[basis_elems_[d][col]].terms()) {
          const auto& red = reduce_[d];
          int mc = mono_index_[d].at(m);
          for (int i = 0; i < n; ++i)
            if (red(i, mc) != 0) v[i] += c * red(i, mc);
        }
        for (int i = 0; i < n; ++i) s(i, col) = v[i];
      }
      std_to_schubert_[d] = inverse(s);  // throws if degenerate
    }

    mult_var_.assign(r, {});
    gen_action_.assign(r, {});
    for (int j = 0; j < r; ++j) {
      mult_var_[j].resize(top_ + 1);
      gen_action_[j].resize(top_ + 1);
      for (int d = 0; d <= top_; ++d) {
        int n = graded_dim(d);
        int n1 = graded_dim(d + 1);
        Mat mv(n1, n);
        for (int col = 0; col < n; ++col) {
          if (d + 1 > top_) break;
          MultiPoly p = MultiPoly::variable(j) * schubert_[basis_elems_[d][col]];
          auto [dd, sc] = coords(p);
          for (int i = 0; i < n1; ++i) mv(i, col) = sc[i];
        }
        mult_var_[j][d] = std::move(mv);
        Mat ga(n, n);
        for (int col = 0; col < n; ++col) {
          MultiPoly p = schubert_[basis_elems_[d][col]].substitute_linear(
              reflection_substitution(dat, j));
          auto [dd, sc] = coords(p);
          for (int i = 0; i < n; ++i) ga(i, col) = sc[i];
        }
        gen_action_[j][d] = std::move(ga);
      }
    }
  }

  const WeylGroup* g_;
  int top_ = 0;
  std::vector<std::vector<Mono>> mono_list_;
  std::vector<std::map<Mono, int>> mono_index_;
  std::vector<std::vector<Mono>> std_monos_;
  std::vector<Mat> reduce_;
  std::vector<std::vector<int>> basis_elems_;
  std::vector<MultiPoly> schubert_;
  std::vector<Mat> std_to_schubert_;
  std::vector<std::vector<Mat>> mult_var_;
  std::vector<std::vector<Mat>> gen_action_;
};

/// Truncated Hilbert series of the tensor square of the polynomial ring
/// over its invariants: prod_i (1 - t^{d_i}) / (1 - t)^{2r}.
inline std::vector<long> structure_algebra_hilbert_series(const CartanDatum& d, int upto) {
  check_usage(upto >= 0, "truncation degree must be non-negative");
  std::vector<long> num(upto + 1, 0);
  num[0] = 1;
  for (int deg : d.degrees) {
    std::vector<long> next(upto + 1, 0);
    for (int i = 0; i <= upto; ++i) {
      next[i] += num[i];
      if (i + deg <= upto) next[i + deg] -= num[i];
    }
    num = std::move(next);
  }
  // divide by (1-t)^{2r}: 2r prefix sums
  for (int k = 0; k < 2 * d.rank; ++k)
    for (int i = 1; i <= upto; ++i) num[i] += num[i - 1];
  for (long c : num) check_consistent(c >= 0, "series expansion went negative");
  return num;
}

}  // namespace wallcross
