#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "posetlab/core.hpp"

namespace posetlab {

/// Canonical member order: by size, then by numeric value of the mask.
inline bool canonical_less(Mask a, Mask b) noexcept {
  const int pa = popcount(a), pb = popcount(b);
  return pa != pb ? pa < pb : a < b;
}

/// All subsets of [n] in canonical order.
inline std::vector<Mask> canonical_universe(int n) {
  std::vector<Mask> all(std::size_t{1} << n);
  for (Mask m = 0; m < all.size(); ++m) all[m] = m;
  std::sort(all.begin(), all.end(), canonical_less);
  return all;
}

/// Family of distinct subsets of [n], kept in canonical order.
class SetFamily {
 public:
  SetFamily() = default;

  SetFamily(int n, std::vector<Mask> members) : n_(n), members_(std::move(members)) {
    check_ground(n);
    const Mask limit = full_mask(n);
    for (Mask m : members_)
      if ((m & ~limit) != 0)
        throw ElementOutOfRange("set " + std::to_string(m) + " is not a subset of [" +
                                std::to_string(n) + "]");
    std::sort(members_.begin(), members_.end(), canonical_less);
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
      throw InvalidParam("family contains a duplicate set");
  }

  static SetFamily empty(int n) { return SetFamily(n, {}); }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool is_empty() const noexcept { return members_.empty(); }
  const std::vector<Mask>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  Mask operator[](std::size_t i) const { return members_[i]; }

  bool contains(Mask m) const {
    return std::binary_search(members_.begin(), members_.end(), m, canonical_less);
  }

  /// Copy with one extra set.
  SetFamily with(Mask m) const {
    if ((m & ~full_mask(n_)) != 0) throw ElementOutOfRange("set is not a subset of the ground set");
    if (contains(m)) throw AlreadyMember("set is already in the family");
    SetFamily f;
    f.n_ = n_;
    f.members_.reserve(members_.size() + 1);
    f.members_ = members_;
    f.members_.insert(std::upper_bound(f.members_.begin(), f.members_.end(), m, canonical_less), m);
    return f;
  }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

  static void check_ground(int n) {
    if (n < 1 || n > kMaxGround)
      throw InvalidParam("ground set size " + std::to_string(n) + " outside 1..24");
  }

 private:
  int n_ = 1;
  std::vector<Mask> members_;
};

/// Counts |F_i| for i = 0..n.
using LayerProfile = std::vector<std::size_t>;

inline LayerProfile layer_profile(const SetFamily& f) {
  LayerProfile p(f.n() + 1, 0);
  for (Mask m : f) ++p[popcount(m)];
  return p;
}

/// Every subset of [n] whose size is in [lo, hi].
inline SetFamily layers(int n, int lo, int hi) {
  SetFamily::check_ground(n);
  std::vector<Mask> v;
  for (Mask m = 0; m <= full_mask(n); ++m) {
    const int k = popcount(m);
    if (k >= lo && k <= hi) v.push_back(m);
    if (m == full_mask(n)) break;
  }
  return SetFamily(n, std::move(v));
}

/// Index of the lowest of the h middle layers.
inline int middle_lowest_layer(int n, int h) { return static_cast<int>(floor_div(n - h, 2)) + 1; }

/// Total size of the h middle layers of 2^[n].
inline BigInt sigma(int n, int h) {
  if (n < 0 || h < 1 || h > n + 1) throw InvalidParam("sigma(n,h) needs 1 <= h <= n+1");
  BigInt total = 0;
  const int lo = middle_lowest_layer(n, h);
  for (int i = 0; i < h; ++i) total += binomial(n, lo + i);
  return total;
}

/// Union of the h middle layers; its size is sigma(n, h).
inline SetFamily middle_layers(int n, int h) {
  SetFamily::check_ground(n);
  if (h < 1 || h > n + 1) throw InvalidParam("middle_layers(n,h) needs 1 <= h <= n+1");
  const int lo = middle_lowest_layer(n, h);
  return layers(n, lo, lo + h - 1);
}

/// Sets of size n/2+1 containing both n-1 and n, together with the sets of
/// size n/2 containing at most one of them. Avoids Y_{1,2} and Y'_{1,3} while
/// exceeding the middle layer.
inline SetFamily f23_construction(int n) {
  if (n % 2 != 0) throw OddN("f23_construction needs even n, got " + std::to_string(n));
  if (n < 4) throw InvalidParam("f23_construction needs n >= 4");
  SetFamily::check_ground(n);
  const Mask last_two = (Mask{1} << (n - 2)) | (Mask{1} << (n - 1));
  std::vector<Mask> v;
  for (Mask m = 0; m <= full_mask(n); ++m) {
    const int k = popcount(m);
    const int hits = popcount(m & last_two);
    if ((k == n / 2 + 1 && hits == 2) || (k == n / 2 && hits <= 1)) v.push_back(m);
    if (m == full_mask(n)) break;
  }
  return SetFamily(n, std::move(v));
}

/// The published closed-form size for the construction above. It disagrees
/// with the enumerated size (17 vs 22 at n = 6) and is kept only for reporting.
inline BigInt f23_published_size(int n) {
  if (n % 2 != 0) throw OddN("f23_published_size needs even n");
  return binomial(n - 2, n / 2 + 1) + (binomial(n, n / 2) - binomial(n - 2, n / 2 - 2));
}

/// Levels 0..h-2 together with levels n-h+2..n.
inline SetFamily lubell_tail_family(int n, int h) {
  if (h < 3 || n < 2 * h) throw InvalidParam("lubell_tail_family(n,h) needs h >= 3 and n >= 2h");
  SetFamily::check_ground(n);
  std::vector<Mask> v;
  for (Mask m = 0; m <= full_mask(n); ++m) {
    const int k = popcount(m);
    if (k <= h - 2 || k >= n - h + 2) v.push_back(m);
    if (m == full_mask(n)) break;
  }
  return SetFamily(n, std::move(v));
}

}  // namespace posetlab
