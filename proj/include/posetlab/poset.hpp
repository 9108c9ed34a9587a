#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "posetlab/core.hpp"

namespace posetlab {

/// Finite poset stored as its Hasse diagram plus the cached strict order.
///
/// Elements are addressed by index in the order they were given. Covers are
/// kept transitively reduced and sorted by (lower, upper) index, so two posets
/// with the same labels and the same order compare equal.
class Poset {
 public:
  using Cover = std::pair<int, int>;

  Poset() = default;

  /// Builds a poset from labelled cover pairs. Redundant pairs are dropped.
  static Poset from_covers(std::vector<std::string> elements,
                           const std::vector<std::pair<std::string, std::string>>& covers) {
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
      if (!index.emplace(elements[i], i).second)
        throw DuplicateLabel("duplicate poset label '" + elements[i] + "'");
    }
    std::vector<Cover> idx;
    idx.reserve(covers.size());
    for (const auto& [lo, hi] : covers) {
      auto a = index.find(lo);
      auto b = index.find(hi);
      if (a == index.end() || b == index.end())
        throw InvalidParam("cover (" + lo + ", " + hi + ") names an unknown element");
      idx.emplace_back(a->second, b->second);
    }
    return from_indexed(std::move(elements), idx);
  }

  /// Same as from_covers but with covers given as element indices.
  static Poset from_indexed(std::vector<std::string> elements, std::span<const Cover> covers) {
    const int k = static_cast<int>(elements.size());
    if (k == 0) throw InvalidParam("poset must have at least one element");
    if (k > kMaxPosetSize)
      throw InvalidParam("poset has " + std::to_string(k) + " elements; the limit is 64");
    {
      std::vector<std::string> sorted = elements;
      std::sort(sorted.begin(), sorted.end());
      auto dup = std::adjacent_find(sorted.begin(), sorted.end());
      if (dup != sorted.end()) throw DuplicateLabel("duplicate poset label '" + *dup + "'");
    }

    std::vector<std::vector<int>> succ(k);
    std::vector<int> indeg(k, 0);
    for (auto [a, b] : covers) {
      if (a < 0 || b < 0 || a >= k || b >= k) throw InvalidParam("cover index out of range");
      if (a == b) throw CycleError("element '" + elements[a] + "' is above itself");
      succ[a].push_back(b);
      ++indeg[b];
    }

    // Kahn's algorithm; leftover elements sit on a cycle.
    std::vector<int> topo;
    topo.reserve(k);
    for (int i = 0; i < k; ++i)
      if (indeg[i] == 0) topo.push_back(i);
    for (std::size_t head = 0; head < topo.size(); ++head)
      for (int b : succ[topo[head]])
        if (--indeg[b] == 0) topo.push_back(b);
    if (static_cast<int>(topo.size()) != k)
      throw CycleError("cover relation contains a cycle");

    Poset p;
    p.labels_ = std::move(elements);
    p.above_.assign(k, 0);
    p.below_.assign(k, 0);
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const int x = *it;
      for (int y : succ[x]) p.above_[x] |= bit(y) | p.above_[y];
    }
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y)
        if (p.above_[x] & bit(y)) p.below_[y] |= bit(x);

    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y)
        if ((p.above_[x] & bit(y)) && (p.above_[x] & p.below_[y]) == 0) p.covers_.emplace_back(x, y);
    return p;
  }

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(int x) const { return labels_.at(x); }
  const std::vector<Cover>& covers() const noexcept { return covers_; }

  std::optional<int> index_of(std::string_view label) const {
    for (int i = 0; i < size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  /// Strict order x < y.
  bool less(int x, int y) const noexcept { return (above_[x] >> y) & 1U; }
  bool leq(int x, int y) const noexcept { return x == y || less(x, y); }
  bool comparable(int x, int y) const noexcept { return leq(x, y) || leq(y, x); }

  /// Bitset of elements strictly above / below x.
  std::uint64_t above(int x) const noexcept { return above_[x]; }
  std::uint64_t below(int x) const noexcept { return below_[x]; }

  bool is_minimal(int x) const noexcept { return below_[x] == 0; }
  bool is_maximal(int x) const noexcept { return above_[x] == 0; }

  /// Number of Hasse-diagram neighbours of x.
  int hasse_degree(int x) const noexcept {
    int d = 0;
    for (auto [a, b] : covers_) d += (a == x) + (b == x);
    return d;
  }

  /// Covers as label pairs, sorted lexicographically by label.
  std::vector<std::pair<std::string, std::string>> labelled_covers() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(covers_.size());
    for (auto [a, b] : covers_) out.emplace_back(labels_[a], labels_[b]);
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.labels_ == b.labels_ && a.covers_ == b.covers_;
  }

  static constexpr std::uint64_t bit(int i) noexcept { return std::uint64_t{1} << i; }

 private:
  std::vector<std::string> labels_;
  std::vector<Cover> covers_;
  std::vector<std::uint64_t> above_;
  std::vector<std::uint64_t> below_;
};

inline Poset poset_from_covers(std::vector<std::string> elements,
                               const std::vector<std::pair<std::string, std::string>>& covers) {
  return Poset::from_covers(std::move(elements), covers);
}

/// Same ground set, reversed order.
inline Poset dual(const Poset& p) {
  std::vector<Poset::Cover> rev;
  rev.reserve(p.covers().size());
  for (auto [a, b] : p.covers()) rev.emplace_back(b, a);
  return Poset::from_indexed(p.labels(), rev);
}

struct RankAssignment {
  std::vector<int> rank;
  bool graded = true;

  int max_rank() const { return rank.empty() ? -1 : *std::max_element(rank.begin(), rank.end()); }
};

/// Rank of x is the number of edges on the longest chain ending at x. The
/// poset counts as graded when every cover raises the rank by exactly one.
inline RankAssignment rank_assignment(const Poset& p) {
  const int k = p.size();
  RankAssignment ra;
  ra.rank.assign(k, 0);
  // Elements with fewer predecessors come first in any linear extension.
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::popcount(p.below(a)) < std::popcount(p.below(b));
  });
  for (int y : order)
    for (auto [a, b] : p.covers())
      if (b == y) ra.rank[y] = std::max(ra.rank[y], ra.rank[a] + 1);
  for (auto [a, b] : p.covers())
    if (ra.rank[b] != ra.rank[a] + 1) ra.graded = false;
  return ra;
}

/// Number of levels, i.e. the element count of a longest chain.
inline int height(const Poset& p) { return rank_assignment(p).max_rank() + 1; }

/// Colour per element; every colour class must be an antichain.
struct Coloring {
  std::vector<int> color;

  int num_colors() const {
    return color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + 1;
  }
};

inline void validate_coloring(const Poset& p, const Coloring& c) {
  if (static_cast<int>(c.color.size()) != p.size())
    throw InvalidColoring("coloring has " + std::to_string(c.color.size()) + " entries for " +
                          std::to_string(p.size()) + " elements");
  for (int x = 0; x < p.size(); ++x) {
    if (c.color[x] < 0) throw InvalidColoring("negative color on '" + p.label(x) + "'");
    for (int y = x + 1; y < p.size(); ++y)
      if (c.color[x] == c.color[y] && p.comparable(x, y))
        throw InvalidColoring("'" + p.label(x) + "' and '" + p.label(y) +
                              "' share a color but are comparable");
  }
}

/// Colour classes = rank levels. Requires a graded poset.
inline Coloring rank_coloring(const Poset& p) {
  auto ra = rank_assignment(p);
  if (!ra.graded) throw NotGraded("poset is not graded");
  return Coloring{ra.rank};
}

// Named posets.

inline Poset chain(int k) {
  if (k < 1) throw InvalidParam("chain(k) needs k >= 1");
  std::vector<std::string> el;
  std::vector<Poset::Cover> cov;
  for (int i = 0; i < k; ++i) {
    el.push_back("c" + std::to_string(i + 1));
    if (i > 0) cov.emplace_back(i - 1, i);
  }
  return Poset::from_indexed(std::move(el), cov);
}

inline Poset antichain(int k) {
  if (k < 1) throw InvalidParam("antichain(k) needs k >= 1");
  std::vector<std::string> el;
  for (int i = 0; i < k; ++i) el.push_back("a" + std::to_string(i + 1));
  return Poset::from_indexed(std::move(el), {});
}

/// x1 < ... < xh < y1, ..., ys with the y's pairwise incomparable.
inline Poset y_poset(int h, int s) {
  if (h < 1 || s < 1) throw InvalidParam("y(h,s) needs h, s >= 1");
  std::vector<std::string> el;
  std::vector<Poset::Cover> cov;
  for (int i = 0; i < h; ++i) {
    el.push_back("x" + std::to_string(i + 1));
    if (i > 0) cov.emplace_back(i - 1, i);
  }
  for (int j = 0; j < s; ++j) {
    el.push_back("y" + std::to_string(j + 1));
    cov.emplace_back(h - 1, h + j);
  }
  return Poset::from_indexed(std::move(el), cov);
}

inline Poset y_prime_poset(int h, int s) { return dual(y_poset(h, s)); }

/// How "every non-leaf has degree r" is read when building T_{r,3}.
enum class TreeDegreeReading {
  hasse_degree,  ///< root has r children, each middle element r-1 children
  child_count,   ///< root and each middle element have r children
};

/// Height-3 monotone increasing tree: one root, a middle level, and leaves.
inline Poset t_r3(int r, TreeDegreeReading reading = TreeDegreeReading::hasse_degree) {
  const int kids = reading == TreeDegreeReading::hasse_degree ? r - 1 : r;
  if (r < 1 || kids < 1) throw InvalidParam("t_r3(r) needs r >= 2 under the Hasse-degree reading");
  std::vector<std::string> el{"root"};
  std::vector<Poset::Cover> cov;
  for (int m = 0; m < r; ++m) {
    const int mid = static_cast<int>(el.size());
    el.push_back("m" + std::to_string(m + 1));
    cov.emplace_back(0, mid);
    for (int l = 0; l < kids; ++l) {
      cov.emplace_back(mid, static_cast<int>(el.size()));
      el.push_back("l" + std::to_string(m + 1) + "_" + std::to_string(l + 1));
    }
  }
  return Poset::from_indexed(std::move(el), cov);
}

/// Levels of the given sizes; every element of a level is below every element
/// of all higher levels.
inline Poset complete_multilevel(std::span<const int> sizes) {
  if (sizes.empty()) throw InvalidParam("complete_multilevel needs at least one level");
  std::vector<std::string> el;
  std::vector<Poset::Cover> cov;
  int prev_begin = 0, prev_end = 0;
  for (std::size_t lv = 0; lv < sizes.size(); ++lv) {
    if (sizes[lv] < 1) throw InvalidParam("complete_multilevel level sizes must be positive");
    const int begin = static_cast<int>(el.size());
    for (int j = 0; j < sizes[lv]; ++j)
      el.push_back("l" + std::to_string(lv + 1) + "_" + std::to_string(j + 1));
    const int end = static_cast<int>(el.size());
    for (int a = prev_begin; a < prev_end; ++a)
      for (int b = begin; b < end; ++b) cov.emplace_back(a, b);
    prev_begin = begin;
    prev_end = end;
  }
  return Poset::from_indexed(std::move(el), cov);
}

/// Dispatch by name: chain, antichain, y, y_prime, t_r3, complete_multilevel.
inline Poset gen_named(std::string_view kind, std::span<const int> params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw InvalidParam(std::string(kind) + " takes " + std::to_string(n) + " parameter(s)");
  };
  if (kind == "chain") return need(1), chain(params[0]);
  if (kind == "antichain") return need(1), antichain(params[0]);
  if (kind == "y") return need(2), y_poset(params[0], params[1]);
  if (kind == "y_prime") return need(2), y_prime_poset(params[0], params[1]);
  if (kind == "t_r3") return need(1), t_r3(params[0]);
  if (kind == "complete_multilevel") return complete_multilevel(params);
  throw InvalidParam("unknown poset kind '" + std::string(kind) + "'");
}

enum class TreeClass { not_tree, tree, monotone_increasing, monotone_decreasing };

inline std::string_view to_string(TreeClass c) {
  switch (c) {
    case TreeClass::not_tree: return "not_tree";
    case TreeClass::tree: return "tree";
    case TreeClass::monotone_increasing: return "monotone_increasing";
    case TreeClass::monotone_decreasing: return "monotone_decreasing";
  }
  return "?";
}

/// A poset is a tree when its Hasse diagram is connected and acyclic. A unique
/// minimal element makes it monotone increasing; this takes precedence when
/// the tree is a chain and both extremes are unique.
inline TreeClass classify_tree(const Poset& p) {
  const int k = p.size();
  if (static_cast<int>(p.covers().size()) != k - 1) return TreeClass::not_tree;
  std::vector<int> parent(k);
  for (int i = 0; i < k; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : p.covers()) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return TreeClass::not_tree;
    parent[ra] = rb;
  }
  int minimal = 0, maximal = 0;
  for (int x = 0; x < k; ++x) {
    minimal += p.is_minimal(x);
    maximal += p.is_maximal(x);
  }
  if (minimal == 1) return TreeClass::monotone_increasing;
  if (maximal == 1) return TreeClass::monotone_decreasing;
  return TreeClass::tree;
}

}  // namespace posetlab
