#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posetlab/core.hpp"
#include "posetlab/family.hpp"
#include "posetlab/poset.hpp"

namespace posetlab {

enum class CopyKind { weak, induced, rank_preserving, colored };

inline std::string_view to_string(CopyKind k) {
  switch (k) {
    case CopyKind::weak: return "weak";
    case CopyKind::induced: return "induced";
    case CopyKind::rank_preserving: return "rank_preserving";
    case CopyKind::colored: return "colored";
  }
  return "?";
}

/// Which notion of "contains a copy of P" is in force.
struct FreenessMode {
  CopyKind kind = CopyKind::weak;
  std::optional<Coloring> coloring;  // only for CopyKind::colored

  static FreenessMode weak() { return {CopyKind::weak, std::nullopt}; }
  static FreenessMode induced() { return {CopyKind::induced, std::nullopt}; }
  static FreenessMode rank_preserving() { return {CopyKind::rank_preserving, std::nullopt}; }
  static FreenessMode colored(Coloring c) { return {CopyKind::colored, std::move(c)}; }

  std::string_view name() const { return to_string(kind); }
};

/// Image of each poset element (indexed like the poset) in the family.
struct Embedding {
  std::vector<Mask> image;
  FreenessMode mode;

  bool uses(Mask s) const { return std::find(image.begin(), image.end(), s) != image.end(); }
};

/// Checks every condition the mode imposes on an image assignment. Does not
/// look at family membership; see is_copy_in.
inline bool is_copy(const Poset& p, const FreenessMode& mode, std::span<const Mask> image) {
  const int k = p.size();
  if (static_cast<int>(image.size()) != k) return false;
  std::optional<std::vector<int>> cls;
  if (mode.kind == CopyKind::rank_preserving) {
    auto ra = rank_assignment(p);
    if (!ra.graded) return false;
    cls = ra.rank;
  } else if (mode.kind == CopyKind::colored) {
    if (!mode.coloring || static_cast<int>(mode.coloring->color.size()) != k) return false;
    cls = mode.coloring->color;
  }
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      if (x == y) continue;
      if (image[x] == image[y]) return false;
      if (p.less(x, y) && !subset_of(image[x], image[y])) return false;
      if (mode.kind == CopyKind::induced && subset_of(image[x], image[y]) && !p.less(x, y))
        return false;
      if (cls && (*cls)[x] == (*cls)[y] && popcount(image[x]) != popcount(image[y])) return false;
    }
  }
  return true;
}

inline bool is_copy_in(const SetFamily& f, const Poset& p, const FreenessMode& mode,
                       std::span<const Mask> image) {
  for (Mask m : image)
    if (!f.contains(m)) return false;
  return is_copy(p, mode, image);
}

/// Backtracking copy finder for one poset under one mode.
///
/// Sized modes (rank-preserving, colored) first fix a set size per colour
/// class and only then place elements, drawing candidates from the matching
/// size bucket. Candidates are tried in canonical order and sizes ascending,
/// so the returned witness is deterministic.
class CopyDetector {
 public:
  CopyDetector(const Poset& p, FreenessMode mode) : poset_(p), mode_(std::move(mode)) {
    const int k = p.size();
    if (mode_.kind == CopyKind::rank_preserving) {
      auto ra = rank_assignment(p);
      if (!ra.graded) throw NotGraded("rank-preserving copies need a graded poset");
      cls_ = ra.rank;
    } else if (mode_.kind == CopyKind::colored) {
      if (!mode_.coloring) throw InvalidColoring("colored mode without a coloring");
      validate_coloring(p, *mode_.coloring);
      cls_ = mode_.coloring->color;
    }
    if (!cls_.empty()) {
      num_classes_ = *std::max_element(cls_.begin(), cls_.end()) + 1;
      class_members_.assign(num_classes_, 0);
      for (int x = 0; x < k; ++x) ++class_members_[cls_[x]];
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
          if (p.less(x, y)) {
            const std::pair<int, int> c{cls_[x], cls_[y]};
            if (std::find(class_less_.begin(), class_less_.end(), c) == class_less_.end())
              class_less_.push_back(c);
          }
    }
    free_plan_ = make_plan(-1);
    for (int x = 0; x < k; ++x) pinned_plans_.push_back(make_plan(x));
  }

  const Poset& poset() const noexcept { return poset_; }
  const FreenessMode& mode() const noexcept { return mode_; }

  /// Members must be distinct subsets of [n]; any order.
  std::optional<Embedding> find(std::span<const Mask> members, int n) const {
    if (static_cast<int>(members.size()) < poset_.size()) return std::nullopt;
    Run run(*this, members, n, std::nullopt);
    if (run.solve(free_plan_)) return Embedding{run.image, mode_};
    return std::nullopt;
  }

  /// Looks for a copy in members + {s} whose image contains s. The caller
  /// guarantees s is not among members.
  std::optional<Embedding> find_through(std::span<const Mask> members, int n, Mask s) const {
    if (static_cast<int>(members.size()) + 1 < poset_.size()) return std::nullopt;
    Run run(*this, members, n, s);
    for (int x = 0; x < poset_.size(); ++x)
      if (run.solve(pinned_plans_[x])) return Embedding{run.image, mode_};
    return std::nullopt;
  }

 private:
  // Placement order plus, for each step, the already-placed elements that
  // constrain it.
  struct Step {
    int element;
    std::vector<int> lower;         // placed, strictly below element
    std::vector<int> upper;         // placed, strictly above element
    std::vector<int> incomparable;  // placed, incomparable (induced mode only)
    std::vector<int> placed;        // everything placed before
  };
  struct Plan {
    int pinned = -1;
    std::vector<Step> steps;
  };

  Plan make_plan(int pinned) const {
    const int k = poset_.size();
    Plan plan;
    plan.pinned = pinned;
    std::vector<char> done(k, 0);
    std::uint64_t placed_bits = 0;
    for (int pos = 0; pos < k; ++pos) {
      int best = -1, best_score = -1;
      if (pos == 0 && pinned >= 0) {
        best = pinned;
      } else {
        // Most comparabilities with placed elements first; ties by index.
        for (int x = 0; x < k; ++x) {
          if (done[x]) continue;
          const int score = std::popcount((poset_.above(x) | poset_.below(x)) & placed_bits);
          if (score > best_score) best = x, best_score = score;
        }
      }
      Step st;
      st.element = best;
      for (const Step& prev : plan.steps) {
        const int y = prev.element;
        st.placed.push_back(y);
        if (poset_.less(y, best)) st.lower.push_back(y);
        else if (poset_.less(best, y)) st.upper.push_back(y);
        else if (mode_.kind == CopyKind::induced) st.incomparable.push_back(y);
      }
      done[best] = 1;
      placed_bits |= Poset::bit(best);
      plan.steps.push_back(std::move(st));
    }
    return plan;
  }

  struct Run {
    const CopyDetector& d;
    int n;
    std::optional<Mask> pinned_set;
    std::vector<std::vector<Mask>> buckets;  // members by size, canonical order
    std::vector<Mask> all;                   // members, canonical order
    std::vector<int> class_size;
    std::vector<int> bucket_load;
    std::vector<Mask> image;

    Run(const CopyDetector& det, std::span<const Mask> members, int ground, std::optional<Mask> s)
        : d(det), n(ground), pinned_set(s), buckets(ground + 1),
          all(members.begin(), members.end()) {
      std::sort(all.begin(), all.end(), canonical_less);
      for (Mask m : all) buckets[popcount(m)].push_back(m);
      image.assign(d.poset_.size(), 0);
    }

    bool solve(const Plan& plan) {
      if (d.num_classes_ == 0) return place(plan, 0);
      class_size.assign(d.num_classes_, -1);
      bucket_load.assign(n + 1, 0);
      if (plan.pinned >= 0) {
        const int c = d.cls_[plan.pinned];
        class_size[c] = popcount(*pinned_set);
        // The pinned element occupies s, which is not a member.
        bucket_load[class_size[c]] += d.class_members_[c] - 1;
        if (bucket_load[class_size[c]] > static_cast<int>(buckets[class_size[c]].size()))
          return false;
        if (!classes_consistent(c)) return false;
      }
      return size_classes(plan, 0);
    }

    bool classes_consistent(int c) const {
      for (auto [a, b] : d.class_less_) {
        if (a != c && b != c) continue;
        if (class_size[a] >= 0 && class_size[b] >= 0 && class_size[a] >= class_size[b])
          return false;
      }
      return true;
    }

    bool size_classes(const Plan& plan, int c) {
      if (c == d.num_classes_) return place(plan, 0);
      if (class_size[c] >= 0) return size_classes(plan, c + 1);
      for (int sz = 0; sz <= n; ++sz) {
        if (bucket_load[sz] + d.class_members_[c] > static_cast<int>(buckets[sz].size())) continue;
        class_size[c] = sz;
        if (classes_consistent(c)) {
          bucket_load[sz] += d.class_members_[c];
          if (size_classes(plan, c + 1)) return true;
          bucket_load[sz] -= d.class_members_[c];
        }
        class_size[c] = -1;
      }
      return false;
    }

    bool fits(const Step& st, Mask m) const {
      for (int y : st.placed)
        if (image[y] == m) return false;
      for (int y : st.lower)
        if (!subset_of(image[y], m)) return false;
      for (int y : st.upper)
        if (!subset_of(m, image[y])) return false;
      for (int y : st.incomparable)
        if (subset_of(m, image[y]) || subset_of(image[y], m)) return false;
      return true;
    }

    bool place(const Plan& plan, std::size_t pos) {
      if (pos == plan.steps.size()) return true;
      const Step& st = plan.steps[pos];
      if (pos == 0 && plan.pinned >= 0) {
        image[st.element] = *pinned_set;
        return place(plan, 1);
      }
      const std::vector<Mask>& pool =
          d.num_classes_ ? buckets[class_size[d.cls_[st.element]]] : all;
      for (Mask m : pool) {
        if (!fits(st, m)) continue;
        image[st.element] = m;
        if (place(plan, pos + 1)) return true;
      }
      return false;
    }
  };

  Poset poset_;
  FreenessMode mode_;
  std::vector<int> cls_;
  int num_classes_ = 0;
  std::vector<int> class_members_;
  std::vector<std::pair<int, int>> class_less_;
  Plan free_plan_;
  std::vector<Plan> pinned_plans_;
};

inline std::optional<Embedding> find_copy(const SetFamily& f, const Poset& p,
                                          const FreenessMode& mode) {
  return CopyDetector(p, mode).find(f.members(), f.n());
}

inline std::optional<Embedding> find_colored_copy(const SetFamily& f, const Poset& p,
                                                  const Coloring& c) {
  return find_copy(f, p, FreenessMode::colored(c));
}

/// A copy in F + {s} that uses s, if one exists.
inline std::optional<Embedding> creates_copy_through(const SetFamily& f, const Poset& p,
                                                     const FreenessMode& mode, Mask s) {
  if ((s & ~full_mask(f.n())) != 0) throw ElementOutOfRange("set is not a subset of the ground set");
  if (f.contains(s)) throw AlreadyMember("set is already in the family");
  return CopyDetector(p, mode).find_through(f.members(), f.n(), s);
}

/// Bipartite graph on two families with edges for proper inclusions.
/// Vertex ids: left side first (0..L-1), then right side (L..L+R-1).
struct InclusionBigraph {
  std::vector<Mask> left;
  std::vector<Mask> right;
  std::vector<std::vector<int>> adj;

  int num_left() const noexcept { return static_cast<int>(left.size()); }
  int num_vertices() const noexcept { return static_cast<int>(left.size() + right.size()); }
  bool is_left(int v) const noexcept { return v < num_left(); }
  Mask mask(int v) const { return is_left(v) ? left[v] : right[v - num_left()]; }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  bool empty() const noexcept { return num_vertices() == 0; }

  std::size_t num_edges() const {
    std::size_t e = 0;
    for (int v = 0; v < num_left(); ++v) e += adj[v].size();
    return e;
  }

  int min_degree() const {
    int d = num_vertices() ? degree(0) : 0;
    for (int v = 1; v < num_vertices(); ++v) d = std::min(d, degree(v));
    return d;
  }
};

inline InclusionBigraph build_inclusion_bigraph(const SetFamily& f, int i, int j) {
  if (i >= j) throw InvalidParam("build_inclusion_bigraph needs i < j");
  InclusionBigraph g;
  for (Mask m : f) {
    if (popcount(m) == i) g.left.push_back(m);
    if (popcount(m) == j) g.right.push_back(m);
  }
  g.adj.resize(g.num_vertices());
  for (int a = 0; a < g.num_left(); ++a)
    for (int b = 0; b < static_cast<int>(g.right.size()); ++b)
      if (subset_of(g.left[a], g.right[b])) {
        g.adj[a].push_back(g.num_left() + b);
        g.adj[g.num_left() + b].push_back(a);
      }
  return g;
}

/// Largest subgraph with minimum degree >= d, found by repeatedly deleting
/// the lowest-indexed vertex of minimum degree.
inline InclusionBigraph min_degree_subgraph(const InclusionBigraph& g, int d) {
  if (d < 1) throw InvalidParam("min_degree_subgraph needs d >= 1");
  const int v_count = g.num_vertices();
  std::vector<char> alive(v_count, 1);
  std::vector<int> deg(v_count);
  for (int v = 0; v < v_count; ++v) deg[v] = g.degree(v);
  for (int remaining = v_count; remaining > 0; --remaining) {
    int victim = -1;
    for (int v = 0; v < v_count; ++v)
      if (alive[v] && (victim < 0 || deg[v] < deg[victim])) victim = v;
    if (deg[victim] >= d) break;
    alive[victim] = 0;
    for (int u : g.adj[victim])
      if (alive[u]) --deg[u];
  }

  InclusionBigraph out;
  std::vector<int> remap(v_count, -1);
  for (int v = 0; v < g.num_left(); ++v)
    if (alive[v]) remap[v] = static_cast<int>(out.left.size()), out.left.push_back(g.left[v]);
  for (int v = g.num_left(); v < v_count; ++v)
    if (alive[v]) out.right.push_back(g.mask(v));
  int next_right = static_cast<int>(out.left.size());
  for (int v = g.num_left(); v < v_count; ++v)
    if (alive[v]) remap[v] = next_right++;
  out.adj.resize(out.num_vertices());
  for (int v = 0; v < v_count; ++v) {
    if (!alive[v]) continue;
    for (int u : g.adj[v])
      if (alive[u]) out.adj[remap[v]].push_back(remap[u]);
  }
  return out;
}

/// Places a height-2 tree poset into the bigraph: minimal elements on the
/// left, maximal ones on the right, Hasse edges onto graph edges. Each tree
/// vertex after the root takes the first free neighbour of its parent's
/// image. Succeeds whenever the minimum degree is at least |T| - 1.
inline Embedding greedy_tree_embed(const InclusionBigraph& g, const Poset& t) {
  const int k = t.size();
  if (k < 2 || classify_tree(t) == TreeClass::not_tree || height(t) != 2)
    throw InvalidParam("greedy_tree_embed needs a tree poset of height 2");

  // BFS order over the Hasse diagram from element 0.
  std::vector<int> order{0}, parent(k, -1);
  std::vector<char> seen(k, 0);
  seen[0] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int u = order[head];
    for (auto [a, b] : t.covers()) {
      const int v = a == u ? b : b == u ? a : -1;
      if (v >= 0 && !seen[v]) seen[v] = 1, parent[v] = u, order.push_back(v);
    }
  }

  const bool root_left = t.is_minimal(0);
  int stuck = 0;
  for (int r = 0; r < g.num_vertices(); ++r) {
    if (g.is_left(r) != root_left) continue;
    std::vector<int> img(k, -1);
    std::vector<char> used(g.num_vertices(), 0);
    img[0] = r;
    used[r] = 1;
    bool ok = true;
    for (std::size_t i = 1; i < order.size() && ok; ++i) {
      const int v = order[i];
      int pick = -1;
      for (int u : g.adj[img[parent[v]]])
        if (!used[u]) { pick = u; break; }
      if (pick < 0) {
        ok = false;
        stuck = v;
      } else {
        img[v] = pick;
        used[pick] = 1;
      }
    }
    if (ok) {
      Embedding e{std::vector<Mask>(k), FreenessMode::rank_preserving()};
      for (int x = 0; x < k; ++x) e.image[x] = g.mask(img[x]);
      return e;
    }
  }
  throw EmbedFailed(stuck, "greedy embedding got stuck at tree element '" + t.label(stuck) + "'");
}

}  // namespace posetlab
