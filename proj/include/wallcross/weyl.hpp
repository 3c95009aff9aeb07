#pragma once

// Weyl group enumeration and Coxeter combinatorics.  Elements are indexed
// 0..|W|-1 in shortlex order of their canonical reduced words (index 0 is
// the identity, the last index is w0).  Equality during enumeration is
// decided by the action on the weight lattice.
//
// Everything is fully materialized: multiplication table, Bruhat order,
// canonical words.  Immutable after construction.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "wallcross/cartan.hpp"
#include "wallcross/errors.hpp"

namespace wallcross {

struct WeylElem {
  std::vector<int> word;  // canonical shortlex-least reduced word, 0-based letters
  int length = 0;
};

class WeylGroup {
 public:
  explicit WeylGroup(CartanDatum datum) : datum_(std::move(datum)) { enumerate(); }

  const CartanDatum& datum() const { return datum_; }
  int rank() const { return datum_.rank; }
  int order() const { return int(words_.size()); }
  int identity() const { return 0; }
  int longest() const { return order() - 1; }
  int length(int w) const { return int(words_[w].size()); }
  const std::vector<int>& word(int w) const { return words_[w]; }

  WeylElem element(int w) const { return WeylElem{words_[w], length(w)}; }

  int right_mult(int w, int s) const { return rmult_[w][s]; }
  int left_mult(int s, int w) const { return lmult_[w][s]; }
  int inverse(int w) const { return inv_[w]; }
  int mult(int x, int y) const { return mult_[size_t(x) * order() + y]; }

  int from_word(const std::vector<int>& word) const {
    int w = identity();
    for (int s : word) {
      check_usage(s >= 0 && s < rank(), "from_word: generator index out of range");
      w = right_mult(w, s);
    }
    return w;
  }

  bool bruhat_leq(int x, int y) const {
    return (bruhat_[size_t(y) * blocks_ + size_t(x) / 64] >> (x % 64)) & 1;
  }

  std::vector<int> right_descents(int w) const {
    std::vector<int> d;
    for (int s = 0; s < rank(); ++s)
      if (length(right_mult(w, s)) < length(w)) d.push_back(s);
    return d;
  }

  std::vector<int> left_descents(int w) const {
    std::vector<int> d;
    for (int s = 0; s < rank(); ++s)
      if (length(left_mult(s, w)) < length(w)) d.push_back(s);
    return d;
  }

  /// Element index of the reflection attached to positive root #k.
  int reflection(int k) const { return reflections_[k]; }

  /// Linear action on fundamental-weight coordinates.
  Weight act(int w, const Weight& v) const {
    check_usage(v.rank() == rank(), "act: rank mismatch");
    const auto& m = action_[w];
    Weight r;
    r.fw.assign(rank(), Rational(0));
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j)
        if (m[i * rank() + j] != 0) r.fw[i] += Rational(m[i * rank() + j]) * v.fw[j];
    return r;
  }

  /// Dot action w.lambda = w(lambda + rho) - rho.
  Weight dot(int w, const Weight& lambda) const {
    return act(w, lambda + datum_.rho) - datum_.rho;
  }

  const std::vector<int>& action_matrix(int w) const { return action_[w]; }

  std::string word_str(int w) const {
    if (w == identity()) return "e";
    std::string s;
    for (int g : words_[w]) {
      if (!s.empty()) s += ".";
      s += "s" + std::to_string(g + 1);
    }
    return s;
  }

 private:
  using Key = std::vector<int>;

  std::vector<int> generator_matrix(int i) const {
    int r = datum_.rank;
    std::vector<int> m(r * r, 0);
    for (int k = 0; k < r; ++k) m[k * r + k] = 1;
    for (int k = 0; k < r; ++k) m[k * r + i] -= datum_.cartan[k][i];
    return m;
  }

  static std::vector<int> mat_mult(const std::vector<int>& a, const std::vector<int>& b, int r) {
    std::vector<int> c(r * r, 0);
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < r; ++k)
        if (a[i * r + k] != 0)
          for (int j = 0; j < r; ++j) c[i * r + j] += a[i * r + k] * b[k * r + j];
    return c;
  }

  void enumerate() {
    const int r = datum_.rank;
    std::vector<std::vector<int>> gen(r);
    for (int i = 0; i < r; ++i) gen[i] = generator_matrix(i);

    // breadth-first closure under right multiplication
    std::vector<std::vector<int>> mats;
    std::vector<int> lengths;
    std::map<Key, int> index;
    std::vector<int> ident(r * r, 0);
    for (int i = 0; i < r; ++i) ident[i * r + i] = 1;
    mats.push_back(ident);
    lengths.push_back(0);
    index[ident] = 0;
    std::vector<std::array<int, kMaxRank>> rm;
    rm.push_back({});
    for (size_t head = 0; head < mats.size(); ++head) {
      for (int s = 0; s < r; ++s) {
        auto m = mat_mult(mats[head], gen[s], r);
        auto it = index.find(m);
        int id;
        if (it == index.end()) {
          id = int(mats.size());
          index.emplace(m, id);
          mats.push_back(std::move(m));
          lengths.push_back(lengths[head] + 1);
          rm.push_back({});
        } else {
          id = it->second;
        }
        rm[head][s] = id;
      }
    }
    const int n = int(mats.size());
    check_consistent(long(n) == datum_.weyl_order(),
                     "group order disagrees with invariant degrees");

    // canonical words in BFS indexing: take the least left descent first
    std::vector<std::array<int, kMaxRank>> lm(n);
    for (int w = 0; w < n; ++w)
      for (int s = 0; s < r; ++s) {
        auto m = mat_mult(gen[s], mats[w], r);
        lm[w][s] = index.at(m);
      }
    std::vector<std::vector<int>> cwords(n);
    std::vector<int> by_len(n);
    std::iota(by_len.begin(), by_len.end(), 0);
    std::stable_sort(by_len.begin(), by_len.end(),
                     [&](int a, int b) { return lengths[a] < lengths[b]; });
    for (int w : by_len) {
      if (lengths[w] == 0) continue;
      for (int s = 0; s < r; ++s) {
        int sw = lm[w][s];
        if (lengths[sw] < lengths[w]) {
          cwords[w] = cwords[sw];
          cwords[w].insert(cwords[w].begin(), s);
          break;
        }
      }
    }

    // remap everything to shortlex order
    std::vector<int> perm(n);  // shortlex position -> BFS id
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
      if (lengths[a] != lengths[b]) return lengths[a] < lengths[b];
      return cwords[a] < cwords[b];
    });
    std::vector<int> pos(n);  // BFS id -> shortlex position
    for (int i = 0; i < n; ++i) pos[perm[i]] = i;

    words_.resize(n);
    action_.resize(n);
    rmult_.resize(n);
    lmult_.resize(n);
    for (int i = 0; i < n; ++i) {
      int b = perm[i];
      words_[i] = cwords[b];
      action_[i] = mats[b];
      for (int s = 0; s < r; ++s) {
        rmult_[i][s] = pos[rm[b][s]];
        lmult_[i][s] = pos[lm[b][s]];
      }
    }

    inv_.resize(n);
    for (int i = 0; i < n; ++i) {
      int w = identity();
      for (auto it = words_[i].rbegin(); it != words_[i].rend(); ++it)
        w = right_mult(w, *it);
      inv_[i] = w;
    }

    mult_.assign(size_t(n) * n, 0);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        int w = x;
        for (int s : words_[y]) w = rmult_[w][s];
        mult_[size_t(x) * n + y] = w;
      }
    }

    // Bruhat order by the greedy subword test on canonical words:
    // x <= s.y'  iff  (sx < x ? sx <= y' : x <= y').
    blocks_ = (size_t(n) + 63) / 64;
    bruhat_.assign(size_t(n) * blocks_, 0);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        int xx = x, yy = y;
        while (length(yy) > 0 && xx != identity()) {
          int s = words_[yy][0];
          if (length(lmult_[xx][s]) < length(xx)) xx = lmult_[xx][s];
          yy = lmult_[yy][s];
        }
        if (xx == identity())
          bruhat_[size_t(y) * blocks_ + size_t(x) / 64] |= 1ull << (x % 64);
      }
    }

    reflections_.resize(datum_.positive_roots.size());
    for (size_t k = 0; k < datum_.positive_roots.size(); ++k) {
      const auto& rd = datum_.positive_roots[k];
      std::vector<int> m(r * r, 0);
      for (int i = 0; i < r; ++i) m[i * r + i] = 1;
      // t(v) = v - <v, coroot> root
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m[i * r + j] -= rd.root_fw[i] * rd.coroot_sc[j];
      int id = -1;
      for (int w = 0; w < n; ++w)
        if (action_[w] == m) { id = w; break; }
      check_consistent(id >= 0, "reflection not found in enumerated group");
      reflections_[k] = id;
    }
  }

  CartanDatum datum_;
  std::vector<std::vector<int>> words_;
  std::vector<std::vector<int>> action_;
  std::vector<std::array<int, kMaxRank>> rmult_, lmult_;
  std::vector<int> inv_;
  std::vector<int> mult_;
  std::vector<std::uint64_t> bruhat_;
  size_t blocks_ = 0;
  std::vector<int> reflections_;
};

// ---------------------------------------------------------------------------
// Parabolic subgroups and coset representatives.

enum class CosetSide { Left, Right };        // Left: cosets w W', Right: W' w
enum class CosetExtremal { Shortest, Longest };

struct ParabolicData {
  std::vector<int> elements;              // sorted element indices, closed under mult
  std::vector<int> min_reps, max_reps;    // one per left coset w W', aligned
  std::vector<int> coset_of;              // element index -> coset number
};

inline std::vector<int> close_under_mult(const WeylGroup& g, std::vector<int> seed) {
  std::vector<bool> in(g.order(), false);
  std::vector<int> out;
  seed.push_back(g.identity());
  for (int x : seed)
    if (!in[x]) { in[x] = true; out.push_back(x); }
  for (size_t head = 0; head < out.size(); ++head)
    for (size_t k = 0; k < out.size(); ++k) {
      int p = g.mult(out[head], out[k]);
      if (!in[p]) { in[p] = true; out.push_back(p); }
      p = g.mult(out[k], out[head]);
      if (!in[p]) { in[p] = true; out.push_back(p); }
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Representatives of cosets of `sub` (which must be closed under
/// multiplication).  Cosets are numbered by first appearance in element
/// order, so the output is deterministic.
inline std::vector<std::vector<int>> cosets(const WeylGroup& g, const std::vector<int>& sub,
                                            CosetSide side) {
  std::vector<int> coset_of(g.order(), -1);
  std::vector<std::vector<int>> out;
  for (int w = 0; w < g.order(); ++w) {
    if (coset_of[w] >= 0) continue;
    std::vector<int> cs;
    for (int v : sub)
      cs.push_back(side == CosetSide::Left ? g.mult(w, v) : g.mult(v, w));
    std::sort(cs.begin(), cs.end());
    for (int x : cs) coset_of[x] = int(out.size());
    out.push_back(std::move(cs));
  }
  return out;
}

inline int extremal_rep(const WeylGroup& g, const std::vector<int>& coset,
                        CosetExtremal extremal) {
  int best = coset.front();
  for (int x : coset) {
    bool better = extremal == CosetExtremal::Shortest ? g.length(x) < g.length(best)
                                                      : g.length(x) > g.length(best);
    if (better) best = x;
  }
  for (int x : coset)
    check_consistent(x == best || g.length(x) != g.length(best),
                     "coset has no unique extremal representative");
  return best;
}

inline std::vector<int> coset_reps(const WeylGroup& g, const std::vector<int>& sub,
                                   CosetSide side, CosetExtremal extremal) {
  std::vector<int> reps;
  for (const auto& cs : cosets(g, sub, side)) reps.push_back(extremal_rep(g, cs, extremal));
  return reps;
}

inline ParabolicData make_parabolic(const WeylGroup& g, std::vector<int> elements) {
  ParabolicData p;
  p.elements = close_under_mult(g, std::move(elements));
  p.coset_of.assign(g.order(), -1);
  auto cs = cosets(g, p.elements, CosetSide::Left);
  for (size_t k = 0; k < cs.size(); ++k) {
    p.min_reps.push_back(extremal_rep(g, cs[k], CosetExtremal::Shortest));
    p.max_reps.push_back(extremal_rep(g, cs[k], CosetExtremal::Longest));
    for (int x : cs[k]) p.coset_of[x] = int(k);
  }
  return p;
}

inline ParabolicData parabolic_from_generators(const WeylGroup& g,
                                               const std::vector<int>& gens) {
  std::vector<int> seed;
  for (int s : gens) {
    check_usage(s >= 0 && s < g.rank(), "parabolic generator out of range");
    seed.push_back(g.from_word({s}));
  }
  return make_parabolic(g, seed);
}

/// Dot-action stabilizer of lambda, as a parabolic datum.
inline ParabolicData stabilizer_dot(const WeylGroup& g, const Weight& lambda) {
  std::vector<int> fix;
  for (int w = 0; w < g.order(); ++w)
    if (g.dot(w, lambda) == lambda) fix.push_back(w);
  return make_parabolic(g, std::move(fix));
}

}  // namespace wallcross
