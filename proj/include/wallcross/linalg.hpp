#pragma once

// Exact rational linear algebra: dense matrices for the small systems that
// dominate the library (coinvariant graded pieces, module actions) and a
// sparse kernel solver for the larger commutant systems built by hom_space.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "wallcross/errors.hpp"
#include "wallcross/rational.hpp"

namespace wallcross {

class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x == 0; });
  }

  Mat operator*(const Mat& o) const {
    check_usage(cols_ == o.rows_, "Mat: dimension mismatch in product");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rational& x = (*this)(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols_; ++j)
          if (o(k, j) != 0) r(i, j) += x * o(k, j);
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    check_usage(rows_ == o.rows_ && cols_ == o.cols_, "Mat: dimension mismatch in sum");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  Mat operator-(const Mat& o) const {
    check_usage(rows_ == o.rows_ && cols_ == o.cols_, "Mat: dimension mismatch in difference");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  Mat& operator*=(const Rational& c) {
    for (auto& x : a_) x *= c;
    return *this;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    check_usage(int(v.size()) == cols_, "Mat: vector length mismatch");
    std::vector<Rational> r(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Mat transposed() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Rational trace() const {
    Rational t = 0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pr = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(pr, j));
    Rational inv = 1 / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(Mat m) { return int(rref(m).size()); }

/// Basis of the right kernel {v : m v = 0}, one column vector per basis element.
inline std::vector<std::vector<Rational>> kernel_basis(Mat m) {
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(int(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves m x = b; ok=false when the system is inconsistent.  Free unknowns
/// are set to zero.
inline std::pair<bool, std::vector<Rational>> solve(const Mat& m,
                                                    const std::vector<Rational>& b) {
  check_usage(int(b.size()) == m.rows(), "solve: rhs length mismatch");
  Mat aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return {false, {}};
  std::vector<Rational> x(m.cols());
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(int(r), m.cols());
  return {true, std::move(x)};
}

inline Mat inverse(const Mat& m) {
  check_usage(m.rows() == m.cols(), "inverse: matrix not square");
  int n = m.rows();
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<int> pivots = rref(aug);
  check_usage(int(pivots.size()) == n && pivots[n - 1] == n - 1, "inverse: singular matrix");
  Mat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

// ---------------------------------------------------------------------------
// Sparse kernel solver.  The commutant systems solved by hom_space are block
// bidiagonal with a handful of nonzeros per row; ordering unknowns by degree
// keeps elimination local, so plain left-to-right elimination on sparse rows
// is fast enough at desk scale.

struct SparseRow {
  // sorted by column index
  std::vector<std::pair<int, Rational>> nz;
};

class SparseSystem {
 public:
  explicit SparseSystem(int cols) : cols_(cols) {}

  void add_row(std::vector<std::pair<int, Rational>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow r;
    for (auto& [c, v] : entries) {
      if (v == 0) continue;
      if (!r.nz.empty() && r.nz.back().first == c)
        r.nz.back().second += v;
      else
        r.nz.emplace_back(c, v);
    }
    r.nz.erase(std::remove_if(r.nz.begin(), r.nz.end(),
                              [](const auto& e) { return e.second == 0; }),
               r.nz.end());
    if (!r.nz.empty()) rows_.push_back(std::move(r));
  }

  int cols() const { return cols_; }

  /// Right kernel basis.  Destroys the stored rows.
  std::vector<std::vector<Rational>> kernel() {
    // bucket rows by leading column, eliminate column by column
    std::vector<std::vector<int>> by_lead(cols_);
    for (int i = 0; i < int(rows_.size()); ++i)
      by_lead[rows_[i].nz.front().first].push_back(i);

    std::vector<int> pivot_row_of_col(cols_, -1);
    std::vector<int> pivot_cols;
    for (int col = 0; col < cols_; ++col) {
      auto& bucket = by_lead[col];
      while (!bucket.empty()) {
        // densest rows last: pick the sparsest as pivot to limit fill-in
        int best = 0;
        for (int k = 1; k < int(bucket.size()); ++k)
          if (rows_[bucket[k]].nz.size() < rows_[bucket[best]].nz.size()) best = k;
        int pr = bucket[best];
        bucket.erase(bucket.begin() + best);
        if (pivot_row_of_col[col] < 0) {
          normalize(rows_[pr]);
          pivot_row_of_col[col] = pr;
          pivot_cols.push_back(col);
          continue;
        }
        eliminate(rows_[pr], rows_[pivot_row_of_col[col]], col);
        if (!rows_[pr].nz.empty()) by_lead[rows_[pr].nz.front().first].push_back(pr);
      }
    }

    // back-substitute to full reduced form
    for (int k = int(pivot_cols.size()) - 1; k >= 0; --k) {
      int col = pivot_cols[k];
      SparseRow& prow = rows_[pivot_row_of_col[col]];
      for (size_t t = 1; t < prow.nz.size();) {
        int c2 = prow.nz[t].first;
        if (pivot_row_of_col[c2] >= 0) {
          eliminate(prow, rows_[pivot_row_of_col[c2]], c2);
          // restart scan past the leading entry; eliminate() keeps sorting
          t = 1;
        } else {
          ++t;
        }
      }
    }

    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Rational> v(cols_);
      v[free] = 1;
      for (int c : pivot_cols) {
        const SparseRow& prow = rows_[pivot_row_of_col[c]];
        for (const auto& [cc, val] : prow.nz)
          if (cc == free) { v[c] = -val; break; }
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  static void normalize(SparseRow& r) {
    Rational inv = 1 / r.nz.front().second;
    for (auto& [c, v] : r.nz) v *= inv;
  }

  // r -= r[col] * pivot  (pivot normalized with leading 1 at col)
  static void eliminate(SparseRow& r, const SparseRow& pivot, int col) {
    Rational f;
    for (auto& [c, v] : r.nz)
      if (c == col) { f = v; break; }
    if (f == 0) return;
    std::vector<std::pair<int, Rational>> out;
    out.reserve(r.nz.size() + pivot.nz.size());
    size_t i = 0, j = 0;
    while (i < r.nz.size() || j < pivot.nz.size()) {
      if (j == pivot.nz.size() || (i < r.nz.size() && r.nz[i].first < pivot.nz[j].first)) {
        out.push_back(r.nz[i++]);
      } else if (i == r.nz.size() || pivot.nz[j].first < r.nz[i].first) {
        out.emplace_back(pivot.nz[j].first, -f * pivot.nz[j].second);
        ++j;
      } else {
        Rational v = r.nz[i].second - f * pivot.nz[j].second;
        if (v != 0) out.emplace_back(r.nz[i].first, std::move(v));
        ++i, ++j;
      }
    }
    r.nz = std::move(out);
  }

  int cols_;
  std::vector<SparseRow> rows_;
};

// Small dense integer matrices carry the K-group functor calculus.
class IMat {
 public:
  IMat() = default;
  IMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}

  static IMat identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  std::int64_t operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
  bool operator==(const IMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  IMat operator*(const IMat& o) const {
    check_usage(cols_ == o.rows_, "IMat: dimension mismatch in product");
    IMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        std::int64_t x = (*this)(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }

  IMat operator-(const IMat& o) const {
    check_usage(rows_ == o.rows_ && cols_ == o.cols_, "IMat: dimension mismatch");
    IMat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  IMat operator+(const IMat& o) const {
    check_usage(rows_ == o.rows_ && cols_ == o.cols_, "IMat: dimension mismatch");
    IMat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  IMat scaled(std::int64_t c) const {
    IMat r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
  }

  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const {
    check_usage(int(v.size()) == cols_, "IMat: vector length mismatch");
    std::vector<std::int64_t> r(rows_, 0);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  IMat transposed() const {
    IMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::int64_t x) { return x == 0; });
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> a_;
};

/// Inverse of a unitriangular-up-to-permutation integer matrix.  Exact over
/// the integers; throws if the inverse is not integral.
inline IMat integer_inverse(const IMat& m) {
  check_usage(m.rows() == m.cols(), "integer_inverse: matrix not square");
  int n = m.rows();
  Mat a(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = Rational(long(m(i, j)));
    a(i, n + i) = 1;
  }
  std::vector<int> pivots = rref(a);
  check_usage(int(pivots.size()) == n && pivots[n - 1] == n - 1,
              "integer_inverse: singular matrix");
  IMat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      check_consistent(is_integer(a(i, n + j)), "integer_inverse: non-integer entry");
      r(i, j) = to_long(a(i, n + j));
    }
  return r;
}

}  // namespace wallcross
