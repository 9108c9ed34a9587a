#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "posetlab/core.hpp"
#include "posetlab/embed.hpp"
#include "posetlab/family.hpp"
#include "posetlab/poset.hpp"

namespace posetlab {

struct FreenessReport {
  bool free = true;
  std::optional<std::size_t> poset_index;  // which forbidden poset was found
  std::optional<Embedding> witness;
};

/// True iff no forbidden poset has a copy in F under mode.
inline FreenessReport verify_free(const SetFamily& f, const std::vector<Poset>& forbidden,
                                  const FreenessMode& mode) {
  for (std::size_t i = 0; i < forbidden.size(); ++i)
    if (auto e = find_copy(f, forbidden[i], mode)) return {false, i, std::move(e)};
  return {};
}

struct SearchConfig {
  std::chrono::milliseconds budget{0};  // zero means unlimited
  unsigned workers = 1;
  bool symmetry_pruning = false;
  std::optional<SetFamily> seed;  // known free family used as the first incumbent
};

struct SearchOutcome {
  std::size_t value = 0;
  SetFamily witness;
  std::uint64_t nodes_explored = 0;
  FreenessMode mode;
  std::vector<Poset> forbidden;
  bool exact = false;
};

namespace detail {

using Perm = std::vector<std::uint8_t>;

inline Mask permute(const Perm& p, Mask m) {
  Mask out = 0;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1U) out |= Mask{1} << p[i];
  return out;
}

inline std::vector<Perm> all_permutations(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Include/exclude branch-and-bound over candidate sets in canonical order.
///
/// A node carries the included sets and the undecided candidates that can
/// still be added without creating a forbidden copy; anything else is already
/// dead, because adding sets never removes a copy. The bound is
/// |included| + |addable|.
///
/// With symmetry pruning each node also carries the coordinate permutations
/// that fix its decisions. Excluding S then also excludes the orbit of S under
/// those permutations: any free extension containing an image of S maps to one
/// containing S, which the include branch already covers.
class LaSearch {
 public:
  struct Node {
    std::vector<Mask> included;
    std::vector<Mask> addable;
    std::vector<Perm> stabilizer;
  };

  LaSearch(int n, const std::vector<Poset>& forbidden, const FreenessMode& mode,
           const SearchConfig& cfg)
      : n_(n), cfg_(cfg) {
    for (const Poset& p : forbidden) detectors_.emplace_back(p, mode);
    if (cfg.budget.count() > 0) deadline_ = std::chrono::steady_clock::now() + cfg.budget;
  }

  bool dead(const std::vector<Mask>& included, Mask s) const {
    for (const auto& d : detectors_)
      if (d.find_through(included, n_, s)) return true;
    return false;
  }

  Node root() const {
    Node r;
    for (Mask s : canonical_universe(n_))
      if (!dead(r.included, s)) r.addable.push_back(s);
    if (cfg_.symmetry_pruning) r.stabilizer = all_permutations(n_);
    return r;
  }

  void offer(const std::vector<Mask>& included) {
    std::lock_guard lock(best_mutex_);
    if (included.size() > best_size_.load() || !have_best_) {
      best_ = included;
      have_best_ = true;
      best_size_.store(included.size());
    }
  }

  /// Children of a node that survives the bound, include branch first.
  std::vector<Node> expand(const Node& node) {
    std::vector<Node> kids;
    const Mask s = node.addable.front();

    Node inc;
    inc.included = node.included;
    inc.included.push_back(s);
    for (std::size_t i = 1; i < node.addable.size(); ++i)
      if (!dead(inc.included, node.addable[i])) inc.addable.push_back(node.addable[i]);
    for (const Perm& p : node.stabilizer)
      if (permute(p, s) == s) inc.stabilizer.push_back(p);
    kids.push_back(std::move(inc));

    Node exc;
    exc.included = node.included;
    exc.stabilizer = node.stabilizer;
    std::vector<Mask> orbit;
    for (const Perm& p : node.stabilizer) orbit.push_back(permute(p, s));
    std::sort(orbit.begin(), orbit.end());
    for (std::size_t i = 1; i < node.addable.size(); ++i)
      if (!std::binary_search(orbit.begin(), orbit.end(), node.addable[i]))
        exc.addable.push_back(node.addable[i]);
    kids.push_back(std::move(exc));
    return kids;
  }

  /// Visits a node; returns false when it is pruned or the search stopped.
  bool visit(const Node& node) {
    const std::uint64_t count = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (deadline_ && (count & 255U) == 0 && std::chrono::steady_clock::now() > *deadline_)
      stopped_.store(true);
    if (stopped_.load(std::memory_order_relaxed)) return false;
    if (node.included.size() > best_size_.load()) offer(node.included);
    if (node.addable.empty()) return false;
    return node.included.size() + node.addable.size() > best_size_.load();
  }

  void dfs(const Node& node) {
    if (!visit(node)) return;
    for (const Node& kid : expand(node)) dfs(kid);
  }

  /// Expands the top of the tree breadth-limited into independent subtrees.
  std::vector<Node> frontier(Node r, std::size_t target) {
    std::vector<Node> level{std::move(r)};
    while (level.size() < target) {
      std::vector<Node> next;
      bool grew = false;
      for (const Node& node : level) {
        if (!visit(node)) continue;
        for (Node& kid : expand(node)) next.push_back(std::move(kid));
        grew = true;
      }
      level = std::move(next);
      if (!grew || level.empty()) break;
    }
    return level;
  }

  void run(unsigned workers) {
    if (workers <= 1) {
      dfs(root());
      return;
    }
    std::vector<Node> tasks = frontier(root(), std::size_t{8} * workers);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) dfs(tasks[i]);
      });
    for (auto& t : pool) t.join();
  }

  int n_;
  SearchConfig cfg_;
  std::vector<CopyDetector> detectors_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stopped_{false};
  std::atomic<std::size_t> best_size_{0};
  std::mutex best_mutex_;
  bool have_best_ = false;
  std::vector<Mask> best_;
};

}  // namespace detail

/// Largest family in 2^[n] free of every forbidden poset under mode. The
/// search is exact unless the time budget runs out, in which case the best
/// family found so far is returned with exact = false.
inline SearchOutcome la_exact(int n, const std::vector<Poset>& forbidden, const FreenessMode& mode,
                              const SearchConfig& cfg = {}) {
  SetFamily::check_ground(n);
  detail::LaSearch search(n, forbidden, mode, cfg);
  if (cfg.seed) {
    if (cfg.seed->n() != n) throw InvalidParam("seed family has a different ground set");
    if (!verify_free(*cfg.seed, forbidden, mode).free) throw NotFree("seed family is not free");
    search.offer(cfg.seed->members());
  } else {
    search.offer({});
  }
  search.run(std::max(1U, cfg.workers));

  SearchOutcome out;
  out.witness = SetFamily(n, search.best_);
  out.value = out.witness.size();
  out.nodes_explored = search.nodes_.load();
  out.mode = mode;
  out.forbidden = forbidden;
  out.exact = !search.stopped_.load();
  return out;
}

struct SaturationResult {
  bool saturated = true;
  std::optional<Mask> counterexample;  // first set (canonical order) that can be added
};

/// Whether every set outside F would create a forbidden copy.
inline SaturationResult saturation_check(const SetFamily& f, const std::vector<Poset>& forbidden,
                                         const FreenessMode& mode) {
  if (!verify_free(f, forbidden, mode).free) throw NotFree("family already contains a forbidden copy");
  std::vector<CopyDetector> detectors;
  for (const Poset& p : forbidden) detectors.emplace_back(p, mode);
  for (Mask s : canonical_universe(f.n())) {
    if (f.contains(s)) continue;
    bool creates = false;
    for (const auto& d : detectors)
      if ((creates = d.find_through(f.members(), f.n(), s).has_value())) break;
    if (!creates) return {false, s};
  }
  return {};
}

/// Largest k such that the k middle layers of 2^[n] contain no copy of P.
inline int max_free_layers(const Poset& p, int n, const FreenessMode& mode) {
  int best = 0;
  for (int k = 1; k <= n + 1; ++k) {
    if (find_copy(middle_layers(n, k), p, mode)) break;
    best = k;
  }
  return best;
}

}  // namespace posetlab
