#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <thread>
#include <vector>

#include "posetlab/core.hpp"
#include "posetlab/family.hpp"

namespace posetlab {

/// Sum over members of 1 / C(n, |F|).
inline Rational lubell_mass(const SetFamily& f) {
  const LayerProfile prof = layer_profile(f);
  Rational total = 0;
  for (int i = 0; i <= f.n(); ++i)
    if (prof[i]) total += Rational(BigInt(prof[i]), binomial(f.n(), i));
  return total;
}

/// Sum over members of |F|! (n - |F|)!: the number of (member, maximal chain)
/// incidences.
inline BigInt pair_count(const SetFamily& f) {
  const LayerProfile prof = layer_profile(f);
  BigInt total = 0;
  for (int i = 0; i <= f.n(); ++i)
    if (prof[i]) total += BigInt(prof[i]) * factorial(i) * factorial(f.n() - i);
  return total;
}

enum class ChainAverageRoute { formula, enumeration };

inline constexpr int kMaxEnumerationGround = 8;

namespace detail {

// Sum of C(n, |F|) over members met by the maximal chains whose first added
// element is in [first_lo, first_hi).
inline std::uint64_t chain_weight_sum(const std::vector<char>& member,
                                      const std::vector<std::uint64_t>& weight, int n,
                                      int first_lo, int first_hi) {
  std::uint64_t sum = 0;
  std::vector<int> perm(n);
  for (int first = first_lo; first < first_hi; ++first) {
    perm[0] = first;
    for (int i = 0, j = 1; i < n; ++i)
      if (i != first) perm[j++] = i;
    do {
      Mask m = 0;
      if (member[m]) sum += weight[0];
      for (int i = 0; i < n; ++i) {
        m |= Mask{1} << perm[i];
        if (member[m]) sum += weight[i + 1];
      }
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
  }
  return sum;
}

}  // namespace detail

/// Average over all n! maximal chains of the chain weight, where each member
/// F on the chain contributes C(n, |F|). Both routes give |F| exactly.
inline Rational chain_weight_average(const SetFamily& f, ChainAverageRoute via,
                                     unsigned workers = 1) {
  const int n = f.n();
  if (via == ChainAverageRoute::formula) {
    const LayerProfile prof = layer_profile(f);
    BigInt total = 0;
    for (int i = 0; i <= n; ++i)
      if (prof[i]) total += BigInt(prof[i]) * factorial(i) * factorial(n - i) * binomial(n, i);
    return Rational(total, factorial(n));
  }
  if (n > kMaxEnumerationGround)
    throw TooLargeForEnumeration("chain enumeration is limited to n <= 8");

  std::vector<char> member(std::size_t{1} << n, 0);
  for (Mask m : f) member[m] = 1;
  std::vector<std::uint64_t> weight(n + 1);
  for (int i = 0; i <= n; ++i) weight[i] = binomial(n, i).convert_to<std::uint64_t>();

  // The chain space is split by the first element added; the partial sums are
  // exact integers so the result does not depend on the split.
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(n));
  std::vector<std::uint64_t> partial(workers, 0);
  if (workers == 1) {
    partial[0] = detail::chain_weight_sum(member, weight, n, 0, n);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const int lo = static_cast<int>(w * n / workers), hi = static_cast<int>((w + 1) * n / workers);
      pool.emplace_back([&, w, lo, hi] { partial[w] = detail::chain_weight_sum(member, weight, n, lo, hi); });
    }
    for (auto& t : pool) t.join();
  }
  const std::uint64_t sum = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  return Rational(BigInt(sum), factorial(n));
}

/// Pairs A, B in F with A a proper subset of B, restricted to |A| = i, |B| = j.
inline BigInt count_2chains_between(const SetFamily& f, int i, int j) {
  if (i >= j) throw InvalidParam("count_2chains_between needs i < j");
  std::vector<Mask> lo, hi;
  for (Mask m : f) {
    if (popcount(m) == i) lo.push_back(m);
    if (popcount(m) == j) hi.push_back(m);
  }
  std::uint64_t c = 0;
  for (Mask a : lo)
    for (Mask b : hi) c += subset_of(a, b);
  return c;
}

inline BigInt count_2chains(const SetFamily& f) {
  const auto& m = f.members();
  std::uint64_t c = 0;
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b)
      c += proper_subset_of(m[a], m[b]) || proper_subset_of(m[b], m[a]);
  return c;
}

/// Lower bound on the 2-chains of any m-member family in 2^[n]:
/// (m - C(n, floor(n/2))) * n / 2, clamped at zero and rounded up (the count
/// is an integer, so a half-integer bound lifts to the next integer).
inline BigInt kleitman_lower_bound(const BigInt& m, int n) {
  const BigInt excess = m - binomial(n, n / 2);
  if (excess <= 0) return 0;
  return (excess * n + 1) / 2;
}

enum class LogBase { natural, two };

/// Number of subsets of [n] whose size lies strictly outside
/// (n/2 - 2 sqrt(n log n), n/2 + 2 sqrt(n log n)).
///
/// |k - n/2| > 2 sqrt(n log n) is tested as (2k - n)^2 / (16 n) > log n. With
/// the natural log the right side is irrational for n >= 2, so there are no
/// ties. In base two a tie needs n to be a power of two, and ties count as
/// inside the window.
inline BigInt tail_count(int n, LogBase base = LogBase::natural) {
  if (n < 2) throw InvalidParam("tail_count needs n >= 2");
  const long double log_n = base == LogBase::natural ? std::log(static_cast<long double>(n))
                                                     : std::log2(static_cast<long double>(n));
  BigInt total = 0;
  BigInt c = 1;  // C(n, k)
  for (int k = 0; k <= n; ++k) {
    if (k > 0) c = c * (n - k + 1) / k;
    const long double d = 2.0L * k - n;
    if (d * d / (16.0L * n) > log_n) total += c;
  }
  return total;
}

/// tail_count(n) divided by C(n, n/2) / n^{3/2}; should stay bounded as n grows.
inline long double tail_ratio(int n, LogBase base = LogBase::natural) {
  const BigInt tail = tail_count(n, base);
  const BigInt mid = binomial(n, n / 2);
  // Both numbers can have thousands of digits; only their ratio is converted.
  const long double r = Rational(tail, mid).convert_to<double>();
  return r * std::pow(static_cast<long double>(n), 1.5L);
}

}  // namespace posetlab
