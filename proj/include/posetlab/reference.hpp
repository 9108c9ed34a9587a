#pragma once

// Deliberately naive implementations used to cross-check the fast paths.
// Nothing here shares code with CopyDetector or the branch-and-bound search.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "posetlab/core.hpp"
#include "posetlab/embed.hpp"
#include "posetlab/family.hpp"
#include "posetlab/poset.hpp"

namespace posetlab::reference {

namespace detail {

// Per-element class for sized modes, empty otherwise. Returns false when the
// mode cannot apply to this poset.
inline bool size_classes(const Poset& p, const FreenessMode& mode, std::vector<int>& cls) {
  cls.clear();
  if (mode.kind == CopyKind::rank_preserving) {
    // Longest chain below each element, recomputed from the order relation.
    const int k = p.size();
    cls.assign(k, 0);
    for (int round = 0; round < k; ++round)
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
          if (p.less(x, y)) cls[y] = std::max(cls[y], cls[x] + 1);
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y)
        if (p.less(x, y) && (p.above(x) & p.below(y)) == 0 && cls[y] != cls[x] + 1) return false;
  } else if (mode.kind == CopyKind::colored) {
    if (!mode.coloring) return false;
    cls = mode.coloring->color;
  }
  return true;
}

inline bool admissible(const Poset& p, const FreenessMode& mode, const std::vector<int>& cls,
                       const std::vector<Mask>& img) {
  const int k = p.size();
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      if (x == y) continue;
      const bool inc = (img[x] & ~img[y]) == 0;
      if (p.less(x, y) && !inc) return false;
      if (mode.kind == CopyKind::induced && inc && !p.less(x, y)) return false;
      if (!cls.empty() && cls[x] == cls[y] &&
          std::popcount(img[x]) != std::popcount(img[y]))
        return false;
    }
  return true;
}

inline bool assign_all(const Poset& p, const FreenessMode& mode, const std::vector<int>& cls,
                       std::span<const Mask> pool, std::vector<Mask>& img, std::vector<char>& used,
                       int x, std::optional<Mask> must_use) {
  if (x == p.size()) {
    if (must_use && std::find(img.begin(), img.end(), *must_use) == img.end()) return false;
    return admissible(p, mode, cls, img);
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    img[x] = pool[i];
    const bool ok = assign_all(p, mode, cls, pool, img, used, x + 1, must_use);
    used[i] = 0;
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

/// Tries every injective assignment of poset elements to members.
inline std::optional<std::vector<Mask>> brute_force_copy(std::span<const Mask> members,
                                                         const Poset& p, const FreenessMode& mode,
                                                         std::optional<Mask> must_use = std::nullopt) {
  std::vector<int> cls;
  if (!detail::size_classes(p, mode, cls)) return std::nullopt;
  std::vector<Mask> img(p.size());
  std::vector<char> used(members.size(), 0);
  if (detail::assign_all(p, mode, cls, members, img, used, 0, must_use)) return img;
  return std::nullopt;
}

/// Every family of 2^[n] as a bitmask over the 2^n subsets (n <= 4), with the
/// maximum size of one containing no forbidden copy.
struct ExhaustiveResult {
  std::size_t value = 0;
  std::vector<Mask> witness;
};

inline ExhaustiveResult exhaustive_la(int n, const std::vector<Poset>& forbidden,
                                      const FreenessMode& mode) {
  if (n < 1 || n > 4) throw InvalidParam("exhaustive_la is limited to n <= 4");
  const int universe = 1 << n;

  // Image sets of all copies, each as a bitmask over the 2^n subsets.
  std::vector<std::uint32_t> copies;
  for (const Poset& p : forbidden) {
    std::vector<int> cls;
    if (!detail::size_classes(p, mode, cls)) continue;
    const int k = p.size();
    if (k > universe) continue;
    std::vector<Mask> img(k, 0);
    // Odometer over all maps element -> subset.
    std::vector<int> digit(k, 0);
    while (true) {
      bool injective = true;
      for (int x = 0; x < k && injective; ++x)
        for (int y = x + 1; y < k; ++y)
          if (digit[x] == digit[y]) { injective = false; break; }
      if (injective) {
        for (int x = 0; x < k; ++x) img[x] = static_cast<Mask>(digit[x]);
        if (detail::admissible(p, mode, cls, img)) {
          std::uint32_t fam = 0;
          for (int x = 0; x < k; ++x) fam |= std::uint32_t{1} << digit[x];
          copies.push_back(fam);
        }
      }
      int pos = 0;
      while (pos < k && ++digit[pos] == universe) digit[pos++] = 0;
      if (pos == k) break;
    }
  }
  std::sort(copies.begin(), copies.end());
  copies.erase(std::unique(copies.begin(), copies.end()), copies.end());

  ExhaustiveResult best;
  const std::uint64_t families = std::uint64_t{1} << universe;
  std::uint32_t best_fam = 0;
  for (std::uint64_t fam = 0; fam < families; ++fam) {
    const auto f = static_cast<std::uint32_t>(fam);
    const auto size = static_cast<std::size_t>(std::popcount(f));
    if (size <= best.value && fam != 0) continue;
    bool free = true;
    for (std::uint32_t c : copies)
      if ((c & ~f) == 0) { free = false; break; }
    if (free && (size > best.value || fam == 0)) best.value = size, best_fam = f;
  }
  for (int s = 0; s < universe; ++s)
    if (best_fam >> s & 1U) best.witness.push_back(static_cast<Mask>(s));
  return best;
}

}  // namespace posetlab::reference
