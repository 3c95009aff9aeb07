#pragma once

// Finite root system data for the supported series (A1-A4, B2-B4, C2-C4,
// D4, F4, G2).  Weights live in fundamental-weight coordinates throughout,
// so pairing against a simple coroot is a coordinate read-off and integral
// weights are exactly the integer vectors.

#include <array>
#include <string>
#include <vector>

#include "wallcross/errors.hpp"
#include "wallcross/rational.hpp"

namespace wallcross {

constexpr int kMaxRank = 4;

struct Weight {
  std::vector<Rational> fw;  // coordinates in the fundamental-weight basis

  int rank() const { return int(fw.size()); }
  bool operator==(const Weight& o) const { return fw == o.fw; }

  Weight operator+(const Weight& o) const {
    check_usage(fw.size() == o.fw.size(), "Weight: rank mismatch");
    Weight r = *this;
    for (size_t i = 0; i < fw.size(); ++i) r.fw[i] += o.fw[i];
    return r;
  }
  Weight operator-(const Weight& o) const {
    check_usage(fw.size() == o.fw.size(), "Weight: rank mismatch");
    Weight r = *this;
    for (size_t i = 0; i < fw.size(); ++i) r.fw[i] -= o.fw[i];
    return r;
  }
  Weight operator-() const {
    Weight r = *this;
    for (auto& c : r.fw) c = -c;
    return r;
  }
};

inline Weight integer_weight(const std::vector<long>& v) {
  Weight w;
  for (long c : v) w.fw.push_back(Rational(c));
  return w;
}

/// One root together with its coroot.  `root_sr` holds the expansion in
/// simple roots, `root_fw` the fundamental-weight coordinates, `coroot_sc`
/// the expansion of the coroot in simple coroots.
struct RootDatum {
  std::vector<int> root_sr;
  std::vector<int> root_fw;
  std::vector<int> coroot_sc;
};

struct CartanDatum {
  char series = 'A';
  int rank = 0;
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_j, coroot_i>
  std::vector<Weight> simple_roots;
  std::vector<std::vector<int>> simple_coroots;  // basis vectors in coroot coords
  std::vector<RootDatum> positive_roots;
  Weight rho;
  std::vector<int> degrees;  // fundamental invariant degrees

  long weyl_order() const {
    long n = 1;
    for (int d : degrees) n *= d;
    return n;
  }

  /// <lambda, coroot> for a positive (co)root given in simple-coroot coords.
  Rational pair(const Weight& lambda, const std::vector<int>& coroot_sc) const {
    Rational s = 0;
    for (int k = 0; k < rank; ++k)
      if (coroot_sc[k] != 0) s += Rational(coroot_sc[k]) * lambda.fw[k];
    return s;
  }

  std::string name() const { return std::string(1, series) + std::to_string(rank); }
};

namespace detail {

inline std::vector<std::vector<int>> cartan_matrix(char series, int rank) {
  std::vector<std::vector<int>> a(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) a[i][i] = 2;
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) a[i][i + 1] = a[i + 1][i] = -1;
  };
  switch (series) {
    case 'A':
      chain(rank);
      break;
    case 'B':  // last simple root short
      chain(rank);
      a[rank - 1][rank - 2] = -2;
      break;
    case 'C':  // last simple root long
      chain(rank);
      a[rank - 2][rank - 1] = -2;
      break;
    case 'D':
      chain(rank - 1);
      a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1;
      break;
    case 'G':
      a[0][1] = -1;
      a[1][0] = -3;
      break;
    case 'F':
      chain(rank);
      a[1][2] = -2;
      a[2][1] = -1;
      break;
    default:
      throw ConfigError("unsupported series");
  }
  return a;
}

inline std::vector<int> invariant_degrees(char series, int rank) {
  std::vector<int> d;
  switch (series) {
    case 'A':
      for (int i = 0; i < rank; ++i) d.push_back(i + 2);
      break;
    case 'B':
    case 'C':
      for (int i = 0; i < rank; ++i) d.push_back(2 * (i + 1));
      break;
    case 'D':
      for (int i = 0; i + 1 < rank; ++i) d.push_back(2 * (i + 1));
      d.push_back(rank);
      break;
    case 'G':
      d = {2, 6};
      break;
    case 'F':
      d = {2, 6, 8, 12};
      break;
  }
  return d;
}

}  // namespace detail

inline CartanDatum build_root_system(char series, int rank) {
  const bool ok = (series == 'A' && rank >= 1 && rank <= 4) ||
                  ((series == 'B' || series == 'C') && rank >= 2 && rank <= 4) ||
                  (series == 'D' && rank == 4) || (series == 'F' && rank == 4) ||
                  (series == 'G' && rank == 2);
  if (!ok)
    throw ConfigError("unsupported type " + std::string(1, series) + std::to_string(rank));

  CartanDatum d;
  d.series = series;
  d.rank = rank;
  d.cartan = detail::cartan_matrix(series, rank);
  d.degrees = detail::invariant_degrees(series, rank);

  for (int j = 0; j < rank; ++j) {
    Weight r;
    for (int i = 0; i < rank; ++i) r.fw.push_back(Rational(d.cartan[i][j]));
    d.simple_roots.push_back(std::move(r));
    std::vector<int> c(rank, 0);
    c[j] = 1;
    d.simple_coroots.push_back(std::move(c));
  }

  d.rho.fw.assign(rank, Rational(1));

  // Close the simple roots under all simple reflections; roots and coroots
  // transform in tandem.  A root is positive iff its simple-root expansion
  // is non-negative.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> all;  // (root_sr, coroot_sc)
  for (int j = 0; j < rank; ++j) {
    std::vector<int> m(rank, 0), c(rank, 0);
    m[j] = 1;
    c[j] = 1;
    all.emplace_back(m, c);
  }
  auto pairing_with_coroot_i = [&](const std::vector<int>& m, int i) {
    int s = 0;
    for (int j = 0; j < rank; ++j) s += d.cartan[i][j] * m[j];
    return s;  // <root, coroot_i>
  };
  auto pairing_root_i_with = [&](const std::vector<int>& c, int i) {
    int s = 0;
    for (int k = 0; k < rank; ++k) s += d.cartan[k][i] * c[k];
    return s;  // <alpha_i, coroot>
  };
  for (size_t head = 0; head < all.size(); ++head) {
    for (int i = 0; i < rank; ++i) {
      auto [m, c] = all[head];
      int vi = pairing_with_coroot_i(m, i);
      int ui = pairing_root_i_with(c, i);
      m[i] -= vi;
      c[i] -= ui;
      bool seen = false;
      for (auto& [mm, cc] : all)
        if (mm == m) { seen = true; break; }
      if (!seen) all.emplace_back(std::move(m), std::move(c));
    }
  }
  for (auto& [m, c] : all) {
    bool pos = true;
    for (int x : m) pos = pos && x >= 0;
    if (!pos) continue;
    RootDatum rd;
    rd.root_sr = m;
    rd.coroot_sc = c;
    rd.root_fw.assign(rank, 0);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) rd.root_fw[i] += d.cartan[i][j] * m[j];
    d.positive_roots.push_back(std::move(rd));
  }

  int expected = 0;
  for (int deg : d.degrees) expected += deg - 1;
  check_consistent(int(d.positive_roots.size()) == expected,
                   "positive root count disagrees with invariant degrees");
  return d;
}

struct WeightClass {
  bool integral = false;
  bool regular = false;
  bool rho_dominant = false;
};

inline WeightClass classify_weight(const CartanDatum& d, const Weight& lambda) {
  check_usage(lambda.rank() == d.rank, "classify_weight: rank mismatch");
  WeightClass c;
  c.integral = true;
  for (const auto& x : lambda.fw) c.integral = c.integral && is_integer(x);
  c.regular = true;
  c.rho_dominant = true;
  for (const auto& r : d.positive_roots) {
    Rational p = d.pair(lambda + d.rho, r.coroot_sc);
    if (p == 0) c.regular = false;
    if (p < 0) c.rho_dominant = false;
  }
  return c;
}

}  // namespace wallcross
