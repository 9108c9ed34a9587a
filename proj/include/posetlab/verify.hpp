#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "posetlab/chains.hpp"
#include "posetlab/embed.hpp"
#include "posetlab/family.hpp"
#include "posetlab/io.hpp"
#include "posetlab/poset.hpp"
#include "posetlab/reference.hpp"
#include "posetlab/search.hpp"

namespace posetlab::claims {

/// Regression value for La_rp(4, {Y_{2,2}, Y'_{2,2}}), fixed by exhaustive
/// enumeration of all 2^16 families.
inline constexpr std::size_t kRankPreservingY22AtFour = 10;

struct CheckResult {
  int id = 0;
  std::string name;
  std::string claim;
  bool passed = false;
  json results = json::object();
  double seconds = 0;
  double limit_seconds = 0;
};

struct SuiteOptions {
  int max_n = 12;
  unsigned workers = 1;
  std::uint64_t seed = 20240601;
  std::set<int> only;  // empty = every check
};

// Random inputs shared by the checks.

inline SetFamily random_family(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> density(0.05, 0.95);
  std::bernoulli_distribution take(density(rng));
  std::vector<Mask> v;
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    if (take(rng)) v.push_back(m);
  return SetFamily(n, std::move(v));
}

/// Random family of at most max_members distinct sets.
inline SetFamily random_small_family(std::mt19937_64& rng, int n, int max_members) {
  std::uniform_int_distribution<int> count(0, max_members);
  std::uniform_int_distribution<Mask> pick(0, full_mask(n));
  std::vector<Mask> v;
  const int want = count(rng);
  while (static_cast<int>(v.size()) < want) {
    const Mask m = pick(rng);
    if (std::find(v.begin(), v.end(), m) == v.end()) v.push_back(m);
  }
  return SetFamily(n, std::move(v));
}

/// Random poset on k elements: a random DAG consistent with index order,
/// relabelled by a random permutation so the index order is not a linear
/// extension.
inline Poset random_poset(std::mt19937_64& rng, int k) {
  std::bernoulli_distribution edge(0.45);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Poset::Cover> cov;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (edge(rng)) cov.emplace_back(perm[a], perm[b]);
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) labels.push_back("p" + std::to_string(i));
  return Poset::from_indexed(std::move(labels), cov);
}

/// Random coloring whose classes are antichains: greedy over elements.
inline Coloring random_coloring(std::mt19937_64& rng, const Poset& p) {
  Coloring c{std::vector<int>(p.size(), -1)};
  for (int x = 0; x < p.size(); ++x) {
    std::vector<int> options;
    const int used = c.num_colors();
    for (int col = 0; col <= used; ++col) {
      bool ok = true;
      for (int y = 0; y < x; ++y)
        if (c.color[y] == col && p.comparable(x, y)) ok = false;
      if (ok) options.push_back(col);
    }
    c.color[x] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
  }
  return c;
}

/// Every labelled tree on t vertices (Pruefer sequences) in both bipartite
/// orientations, as height-2 posets.
inline std::vector<Poset> height_two_trees(int t) {
  std::vector<Poset> out;
  if (t < 2) return out;
  std::vector<std::string> labels;
  for (int i = 0; i < t; ++i) labels.push_back("v" + std::to_string(i + 1));
  std::vector<int> seq(std::max(0, t - 2), 0);
  while (true) {
    std::vector<int> degree(t, 1);
    for (int v : seq) ++degree[v];
    std::vector<std::pair<int, int>> edges;
    for (int v : seq) {
      int leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      edges.emplace_back(leaf, v);
      --degree[leaf];
      --degree[v];
    }
    int u = -1, w = -1;
    for (int v = 0; v < t; ++v)
      if (degree[v] == 1) (u < 0 ? u : w) = v;
    edges.emplace_back(u, w);

    // 2-colour the tree from vertex 0.
    std::vector<int> side(t, -1);
    side[0] = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (auto [a, b] : edges) {
        if (side[a] >= 0 && side[b] < 0) side[b] = 1 - side[a], changed = true;
        if (side[b] >= 0 && side[a] < 0) side[a] = 1 - side[b], changed = true;
      }
    }
    for (int low = 0; low < 2; ++low) {
      std::vector<Poset::Cover> cov;
      for (auto [a, b] : edges) cov.push_back(side[a] == low ? Poset::Cover{a, b} : Poset::Cover{b, a});
      out.push_back(Poset::from_indexed(labels, cov));
    }

    int pos = 0;
    while (pos < static_cast<int>(seq.size()) && ++seq[pos] == t) seq[pos++] = 0;
    if (pos == static_cast<int>(seq.size())) break;
  }
  return out;
}

/// Random inclusion bigraph between two layers with more than (t-2) * V edges,
/// i.e. average degree above 2(t-2).
inline InclusionBigraph random_dense_bigraph(std::mt19937_64& rng, int t) {
  std::uniform_int_distribution<int> pick_n(6, 8);
  std::uniform_real_distribution<double> density(0.3, 1.0);
  while (true) {
    const int n = pick_n(rng);
    const int i = std::uniform_int_distribution<int>(1, n - 2)(rng);
    const int j = std::uniform_int_distribution<int>(i + 1, n - 1)(rng);
    std::bernoulli_distribution take_lo(density(rng)), take_hi(density(rng));
    std::vector<Mask> v;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      const int k = popcount(m);
      if ((k == i && take_lo(rng)) || (k == j && take_hi(rng))) v.push_back(m);
    }
    InclusionBigraph g = build_inclusion_bigraph(SetFamily(n, std::move(v)), i, j);
    if (g.num_vertices() > 0 &&
        g.num_edges() > static_cast<std::size_t>(t - 2) * static_cast<std::size_t>(g.num_vertices()))
      return g;
  }
}

// The checks.

namespace detail {

inline std::vector<SetFamily> identity_corpus(std::uint64_t seed, int max_n) {
  std::mt19937_64 rng(seed);
  std::vector<SetFamily> corpus;
  for (int n = 3; n <= std::min(7, max_n); ++n)
    for (int i = 0; i < 100; ++i) corpus.push_back(random_family(rng, n));
  return corpus;
}

inline std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

inline CheckResult sperner(const SuiteOptions& o) {
  CheckResult r{1, "sperner", "largest chain(2)-free family is a middle layer: C(n, floor(n/2))"};
  r.passed = true;
  SearchConfig cfg;
  cfg.workers = o.workers;
  for (int n : range(2, std::min(5, o.max_n))) {
    const auto out = la_exact(n, {chain(2)}, FreenessMode::weak(), cfg);
    const BigInt expect = binomial(n, n / 2);
    r.results["n=" + std::to_string(n)] = {{"value", out.value}, {"expected", exact_json(expect)}};
    r.passed = r.passed && out.exact && BigInt(out.value) == expect;
  }
  return r;
}

inline CheckResult katona_tarjan(const SuiteOptions& o) {
  CheckResult r{2, "katona_tarjan",
                "La(n,{Y12,Y'12}) is C(n,n/2) for even n and 2 C(n-1,(n-1)/2) for odd n"};
  r.passed = true;
  SearchConfig cfg;
  cfg.workers = o.workers;
  for (int n : range(4, std::min(5, o.max_n))) {
    const auto out = la_exact(n, {y_poset(1, 2), y_prime_poset(1, 2)}, FreenessMode::weak(), cfg);
    const BigInt expect = n % 2 == 0 ? binomial(n, n / 2) : 2 * binomial(n - 1, (n - 1) / 2);
    r.results["n=" + std::to_string(n)] = {{"value", out.value}, {"expected", exact_json(expect)}};
    r.passed = r.passed && out.exact && BigInt(out.value) == expect;
  }
  return r;
}

inline CheckResult middle_saturation(const SuiteOptions& o) {
  CheckResult r{3, "middle_layer_saturation",
                "two middle layers are rank-preserving {Y22,Y'22}-free and adding any set creates a copy"};
  r.passed = true;
  const std::vector<Poset> forb{y_poset(2, 2), y_prime_poset(2, 2)};
  for (int n : range(5, std::min(7, o.max_n))) {
    const SetFamily f = middle_layers(n, 2);
    const bool free = verify_free(f, forb, FreenessMode::rank_preserving()).free;
    const bool sat = free && saturation_check(f, forb, FreenessMode::rank_preserving()).saturated;
    r.results["n=" + std::to_string(n)] = {{"free", free}, {"saturated", sat}, {"size", f.size()}};
    r.passed = r.passed && free && sat;
  }
  return r;
}

inline CheckResult chain_average(const SuiteOptions& o) {
  CheckResult r{4, "chain_weight_average",
                "average chain weight with w(F)=C(n,|F|) over all n! maximal chains equals |F|"};
  r.passed = true;
  int checked = 0, failures = 0;
  for (const SetFamily& f : identity_corpus(o.seed, o.max_n)) {
    const Rational avg = chain_weight_average(f, ChainAverageRoute::enumeration, o.workers);
    const bool ok = avg == Rational(BigInt(f.size())) &&
                    chain_weight_average(f, ChainAverageRoute::formula) == avg;
    ++checked;
    failures += !ok;
  }
  r.results = {{"families", checked}, {"failures", failures}};
  r.passed = failures == 0 && checked > 0;
  return r;
}

inline CheckResult pair_count_identity(const SuiteOptions& o) {
  CheckResult r{5, "pair_count_identity",
                "sum of |F|!(n-|F|)! equals Lubell mass times n!"};
  int checked = 0, failures = 0;
  for (const SetFamily& f : identity_corpus(o.seed, o.max_n)) {
    ++checked;
    failures += Rational(pair_count(f)) != lubell_mass(f) * Rational(factorial(f.n()));
  }
  r.results = {{"families", checked}, {"failures", failures}};
  r.passed = failures == 0 && checked > 0;
  return r;
}

inline CheckResult kleitman(const SuiteOptions& o) {
  CheckResult r{6, "kleitman_inequality",
                "every family has at least (|F| - C(n,floor(n/2))) n/2 two-chains"};
  std::mt19937_64 rng(o.seed + 6);
  std::uniform_int_distribution<int> pick_n(1, std::min(10, o.max_n));
  int checked = 0, violations = 0, nontrivial = 0;
  for (int i = 0; i < 1200; ++i) {
    const SetFamily f = random_family(rng, pick_n(rng));
    const BigInt bound = kleitman_lower_bound(f.size(), f.n());
    nontrivial += bound > 0;
    violations += count_2chains(f) < bound;
    ++checked;
  }
  r.results = {{"families", checked}, {"positiveBounds", nontrivial}, {"violations", violations}};
  r.passed = violations == 0 && checked >= 1000;
  return r;
}

inline CheckResult f23(const SuiteOptions& o) {
  CheckResult r{7, "f23_construction",
                "F_{2,3} is {Y12,Y'13}-free and larger than the middle layer"};
  r.passed = true;
  for (int n : {6, 8}) {
    if (n > o.max_n) continue;
    const SetFamily f = f23_construction(n);
    const bool free = verify_free(f, {y_poset(1, 2), y_prime_poset(1, 3)}, FreenessMode::weak()).free;
    const BigInt mid = binomial(n, n / 2);
    const BigInt published = f23_published_size(n);
    r.results["n=" + std::to_string(n)] = {
        {"size", f.size()},
        {"middleLayer", exact_json(mid)},
        {"free", free},
        {"publishedFormula", exact_json(published)},
        {"formulaDiscrepancy", published != BigInt(f.size())}};
    r.passed = r.passed && free && BigInt(f.size()) > mid;
  }
  return r;
}

inline CheckResult tail_family(const SuiteOptions& o) {
  CheckResult r{8, "lubell_tail_family",
                "levels <= h-2 and >= n-h+2 have Lubell mass 2(h-1) yet avoid Y_{h,2^{h-2}} and its dual"};
  r.passed = true;
  for (int h : {3, 4})
    for (int n : range(2 * h, std::min(12, o.max_n))) {
      const SetFamily f = lubell_tail_family(n, h);
      const Rational mass = lubell_mass(f);
      json entry = {{"lubell", rational_string(mass)}, {"expected", 2 * (h - 1)}};
      bool ok = mass == Rational(2 * (h - 1));
      if (h == 3 && n <= 10) {
        const int s = 1 << (h - 2);
        const bool free =
            verify_free(f, {y_poset(h, s), y_prime_poset(h, s)}, FreenessMode::weak()).free;
        entry["free"] = free;
        ok = ok && free;
      }
      r.results["h=" + std::to_string(h) + ",n=" + std::to_string(n)] = entry;
      r.passed = r.passed && ok;
    }
  return r;
}

inline CheckResult greedy_trees(const SuiteOptions& o) {
  CheckResult r{9, "greedy_tree_embedding",
                "a bigraph with average degree above 2(t-2) has a min-degree (t-1) core that hosts every height-2 tree on t vertices"};
  std::mt19937_64 rng(o.seed + 9);
  int graphs = 0, embeddings = 0, failures = 0;
  for (int t : {3, 4, 5}) {
    const std::vector<Poset> trees = height_two_trees(t);
    for (int i = 0; i < 200; ++i) {
      const InclusionBigraph g = random_dense_bigraph(rng, t);
      const InclusionBigraph core = min_degree_subgraph(g, t - 1);
      ++graphs;
      if (core.empty()) {
        ++failures;
        continue;
      }
      for (const Poset& tree : trees) {
        ++embeddings;
        try {
          const Embedding e = greedy_tree_embed(core, tree);
          failures += !is_copy(tree, FreenessMode::rank_preserving(), e.image);
        } catch (const EmbedFailed&) {
          ++failures;
        }
      }
    }
  }
  r.results = {{"graphs", graphs}, {"embeddings", embeddings}, {"failures", failures}};
  r.passed = failures == 0;
  return r;
}

inline CheckResult oracle_search(const SuiteOptions& o) {
  CheckResult r{10, "search_vs_exhaustive",
                "branch-and-bound optimum equals exhaustive maximum over all 2^16 families at n=4"};
  r.passed = true;
  struct Case {
    std::string name;
    std::vector<Poset> forbidden;
  };
  const std::vector<Case> cases{{"chain(2)", {chain(2)}},
                                {"Y12,Y'12", {y_poset(1, 2), y_prime_poset(1, 2)}},
                                {"Y22,Y'22", {y_poset(2, 2), y_prime_poset(2, 2)}}};
  SearchConfig cfg;
  cfg.workers = o.workers;
  for (const Case& c : cases)
    for (const FreenessMode& mode : {FreenessMode::weak(), FreenessMode::rank_preserving()}) {
      const auto fast = la_exact(4, c.forbidden, mode, cfg);
      const auto slow = reference::exhaustive_la(4, c.forbidden, mode);
      bool ok = fast.exact && fast.value == slow.value &&
                verify_free(fast.witness, c.forbidden, mode).free;
      if (c.name == "Y22,Y'22" && mode.kind == CopyKind::rank_preserving)
        ok = ok && fast.value == kRankPreservingY22AtFour && fast.value >= 10;
      r.results[c.name + "/" + std::string(mode.name())] = {{"search", fast.value},
                                                            {"exhaustive", slow.value}};
      r.passed = r.passed && ok;
    }
  return r;
}

inline CheckResult oracle_copies(const SuiteOptions& o) {
  CheckResult r{11, "copy_detector_vs_brute_force",
                "copy detection agrees with trying every injective assignment"};
  std::mt19937_64 rng(o.seed + 11);
  std::uniform_int_distribution<int> pick_k(1, 4), pick_mode(0, 3);
  int triples = 0, disagreements = 0, found = 0;
  for (int i = 0; i < 10000; ++i) {
    const SetFamily f = random_small_family(rng, 4, 8);
    const Poset p = random_poset(rng, pick_k(rng));
    FreenessMode mode;
    switch (pick_mode(rng)) {
      case 0: mode = FreenessMode::weak(); break;
      case 1: mode = FreenessMode::induced(); break;
      case 2:
        mode = rank_assignment(p).graded ? FreenessMode::rank_preserving()
                                         : FreenessMode::colored(random_coloring(rng, p));
        break;
      default: mode = FreenessMode::colored(random_coloring(rng, p)); break;
    }
    const auto fast = find_copy(f, p, mode);
    const auto slow = reference::brute_force_copy(f.members(), p, mode);
    ++triples;
    found += fast.has_value();
    bool ok = fast.has_value() == slow.has_value();
    if (fast) ok = ok && is_copy_in(f, p, mode, fast->image);
    disagreements += !ok;
  }
  r.results = {{"triples", triples}, {"withCopy", found}, {"disagreements", disagreements}};
  r.passed = disagreements == 0;
  return r;
}

}  // namespace detail

struct CheckSpec {
  int id;
  const char* name;
  double limit_seconds;
  std::function<CheckResult(const SuiteOptions&)> run;
};

inline const std::vector<CheckSpec>& checks() {
  static const std::vector<CheckSpec> all{
      {1, "sperner", 10, detail::sperner},
      {2, "katona_tarjan", 60, detail::katona_tarjan},
      {3, "middle_layer_saturation", 60, detail::middle_saturation},
      {4, "chain_weight_average", 120, detail::chain_average},
      {5, "pair_count_identity", 10, detail::pair_count_identity},
      {6, "kleitman_inequality", 60, detail::kleitman},
      {7, "f23_construction", 30, detail::f23},
      {8, "lubell_tail_family", 60, detail::tail_family},
      {9, "greedy_tree_embedding", 60, detail::greedy_trees},
      {10, "search_vs_exhaustive", 1800, detail::oracle_search},
      {11, "copy_detector_vs_brute_force", 60, detail::oracle_copies},
  };
  return all;
}

/// Runs the selected checks in id order.
inline std::vector<CheckResult> run_suite(const SuiteOptions& o) {
  std::vector<CheckResult> out;
  for (const CheckSpec& c : checks()) {
    if (!o.only.empty() && !o.only.contains(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r = c.run(o);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.limit_seconds = c.limit_seconds;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace posetlab::claims
