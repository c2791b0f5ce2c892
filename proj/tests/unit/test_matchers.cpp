#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "corruptmatch/graph/graph_ops.hpp"
#include "corruptmatch/matchers/kcore.hpp"
#include "corruptmatch/matchers/max_overlap.hpp"
#include "corruptmatch/matchers/weak_kcore.hpp"
#include "generators.hpp"

using namespace corruptmatch;

namespace {

Graph path(std::size_t n) {
  Graph g(n);
  for (Node i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1);
  return g;
}

Graph cycle(std::size_t n) {
  Graph g = path(n);
  g.set_edge(0, static_cast<Node>(n - 1));
  return g;
}

// Objective by direct pair loop, independent of the bit-row code.
std::size_t naive_objective(const Graph& h1, const Graph& h2, const Permutation& pi) {
  std::size_t x = 0;
  for (Node i = 0; i < h1.size(); ++i)
    for (Node j = i + 1; j < h1.size(); ++j) x += (h1.has_edge(i, j) && h2.has_edge(pi(i), pi(j))) ? 1 : 0;
  return x;
}

// First maximizer in lexicographic enumeration.
Permutation brute_force_max_overlap(const Graph& h1, const Graph& h2) {
  std::size_t best = 0;
  std::optional<Permutation> arg;
  cmtest::for_each_permutation(h1.size(), [&](const Permutation& pi) {
    const std::size_t x = naive_objective(h1, h2, pi);
    if (!arg || x > best) {
      best = x;
      arg = pi;
    }
  });
  return *arg;
}

std::size_t automorphism_count(const Graph& g) {
  std::size_t count = 0;
  cmtest::for_each_permutation(g.size(), [&](const Permutation& pi) {
    if (apply_permutation(g, pi) == g) ++count;
  });
  return count;
}

// Peels by repeated full scans; no queue, no degree bookkeeping.
std::vector<Node> scan_peel(const Graph& g, std::size_t k) {
  std::vector<bool> alive(g.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Node i = 0; i < g.size(); ++i) {
      if (!alive[i]) continue;
      std::size_t d = 0;
      for (Node j = 0; j < g.size(); ++j) d += (alive[j] && g.has_edge(i, j)) ? 1 : 0;
      if (d < k) {
        alive[i] = false;
        changed = true;
      }
    }
  }
  std::vector<Node> out;
  for (Node i = 0; i < g.size(); ++i)
    if (alive[i]) out.push_back(i);
  return out;
}

std::size_t min_degree_on(const Graph& h1, const Graph& h2, const Matching& mu) {
  std::size_t best = SIZE_MAX;
  for (Node i : mu.domain()) {
    std::size_t d = 0;
    for (Node j : mu.domain()) d += (h1.has_edge(i, j) && h2.has_edge(mu.at(i), mu.at(j))) ? 1 : 0;
    best = std::min(best, d);
  }
  return best;
}

std::vector<std::size_t> lex_key(const Matching& mu) {
  std::vector<std::size_t> key(mu.size());
  for (Node i = 0; i < mu.size(); ++i) key[i] = mu.contains(i) ? mu.at(i) : mu.size();
  return key;
}

Matching brute_force_k_core_estimator(const Graph& h1, const Graph& h2, std::size_t k) {
  std::optional<Matching> best;
  cmtest::for_each_partial_injection(h1.size(), [&](const Matching& mu) {
    if (min_degree_on(h1, h2, mu) < k) return;
    if (!best || mu.domain_size() > best->domain_size() ||
        (mu.domain_size() == best->domain_size() && lex_key(mu) < lex_key(*best)))
      best = mu;
  });
  return *best;
}

}  // namespace

TEST_CASE("k_core of small graphs") {
  CHECK(k_core(Graph::complete(4), 3) == std::vector<Node>{0, 1, 2, 3});
  CHECK(k_core(path(4), 2).empty());
  CHECK(k_core(cycle(5), 2) == std::vector<Node>{0, 1, 2, 3, 4});
  CHECK(k_core(cycle(5), 0).size() == 5);
  CHECK(k_core(Graph(3), 1).empty());
}

TEST_CASE("k_core is the maximum fixed point of peeling") {
  Rng rng(31);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng.below(12);
    const Graph g = cmtest::random_graph(n, rng.uniform(), rng);
    const std::size_t k = rng.below(5);
    const auto core = k_core(g, k);
    CHECK(core == scan_peel(g, k));
    const Graph induced = g.induced(core);
    CHECK(k_core(induced, k).size() == core.size());
    // Every subset with induced min degree >= k is contained in the core.
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<Node> subset;
      for (Node i = 0; i < n; ++i)
        if (mask >> i & 1u) subset.push_back(i);
      const Graph sub = g.induced(subset);
      bool ok = true;
      for (Node i = 0; i < sub.size() && ok; ++i) ok = sub.degree(i) >= k;
      if (!ok) continue;
      for (Node v : subset) REQUIRE(std::binary_search(core.begin(), core.end(), v));
    }
  }
}

TEST_CASE("default k") {
  CHECK(default_k(3000) == 3);
  CHECK(default_k(1000) == 3);
  CHECK(default_k(10) == 2);
  CHECK(default_k(2) == 1);
  CHECK(default_k(1) == 0);
}

TEST_CASE("max_overlap_exact") {
  Rng rng(32);
  SUBCASE("empty second graph returns identity") {
    const Graph g = cmtest::random_graph(7, 0.5, rng);
    CHECK(max_overlap_exact(g, Graph(7)) == Permutation::identity(7));
  }
  SUBCASE("asymmetric graph is recovered uniquely") {
    Graph g;
    do {
      g = cmtest::random_graph(7, 0.5, rng);
    } while (automorphism_count(g) != 1);
    const Permutation sigma = Permutation::uniform(7, rng);
    const Graph h = apply_permutation(g, sigma);
    const Permutation got = max_overlap_exact(g, h);
    CHECK(got == sigma);
    CHECK(overlap_objective(g, h, got) == g.edge_count());
    std::size_t maximizers = 0;
    cmtest::for_each_permutation(7, [&](const Permutation& pi) {
      maximizers += naive_objective(g, h, pi) == g.edge_count() ? 1 : 0;
    });
    CHECK(maximizers == 1);
  }
  SUBCASE("isomorphic CER pair attains |E(G1)|") {
    for (int t = 0; t < 5; ++t) {
      const auto pair = sample_cer(6, 0.5, 1.0, rng);
      CHECK(overlap_objective(pair.g1, pair.g2, max_overlap_exact(pair.g1, pair.g2)) == pair.g1.edge_count());
    }
  }
  SUBCASE("agrees with lexicographic brute force") {
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 1 + rng.below(7);
      const Graph h1 = cmtest::random_graph(n, rng.uniform(), rng);
      const Graph h2 = cmtest::random_graph(n, rng.uniform(), rng);
      CHECK(max_overlap_exact(h1, h2) == brute_force_max_overlap(h1, h2));
    }
  }
  CHECK_THROWS_AS(max_overlap_exact(Graph(11), Graph(11)), std::invalid_argument);
  CHECK_THROWS_AS(max_overlap_exact(Graph(3), Graph(4)), std::invalid_argument);
}

TEST_CASE("extending a matching never lowers the objective") {
  Rng rng(33);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.below(20);
    const Graph h1 = cmtest::random_graph(n, rng.uniform(), rng);
    const Graph h2 = cmtest::random_graph(n, rng.uniform(), rng);
    const Permutation pi = Permutation::uniform(n, rng);
    std::vector<Node> domain;
    for (Node i = 0; i < n; ++i)
      if (rng.bernoulli(0.5)) domain.push_back(i);
    const Matching partial = Matching::restriction(pi, domain);
    CHECK(intersection_edge_count(h1, h2, partial) <= overlap_objective(h1, h2, pi));
  }
}

TEST_CASE("max_overlap_localsearch") {
  Rng rng(34);
  SUBCASE("never worse than the identity and deterministic") {
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 2 + rng.below(30);
      const Graph h1 = cmtest::random_graph(n, 0.3, rng);
      const Graph h2 = cmtest::random_graph(n, 0.3, rng);
      const Rng seed(rng.next());
      const Permutation a = max_overlap_localsearch(h1, h2, seed, {5, 20, 0.0});
      const Permutation b = max_overlap_localsearch(h1, h2, seed, {5, 20, 0.0});
      CHECK(a == b);
      CHECK(overlap_objective(h1, h2, a) >= overlap_objective(h1, h2, Permutation::identity(n)));
    }
  }
  SUBCASE("2-swap deltas match recomputation") {
    // One sweep from the identity with no restarts exercises the incremental bookkeeping.
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 2 + rng.below(80);
      const Graph h1 = cmtest::random_graph(n, 0.4, rng);
      const Graph h2 = cmtest::random_graph(n, 0.4, rng);
      const Permutation got = max_overlap_localsearch(h1, h2, Rng(t), {1, 1, 0.0});
      CHECK(overlap_objective(h1, h2, got) == naive_objective(h1, h2, got));
      CHECK(overlap_objective(h1, h2, got) >= overlap_objective(h1, h2, Permutation::identity(n)));
    }
  }
  SUBCASE("annealing still returns the best permutation seen") {
    const Graph h1 = cmtest::random_graph(20, 0.3, rng);
    const Graph h2 = cmtest::random_graph(20, 0.3, rng);
    const Permutation got = max_overlap_localsearch(h1, h2, Rng(3), {3, 10, 0.5});
    CHECK(overlap_objective(h1, h2, got) >= overlap_objective(h1, h2, Permutation::identity(20)));
  }
  SUBCASE("reaches the optimum on most CER(8, 0.4, 0.9) instances") {
    int hits = 0;
    for (int t = 0; t < 100; ++t) {
      const auto pair = sample_cer(8, 0.4, 0.9, rng);
      const auto best = overlap_objective(pair.g1, pair.g2, max_overlap_exact(pair.g1, pair.g2));
      const auto got = max_overlap_localsearch(pair.g1, pair.g2, Rng(1000 + t), {20, 50, 0.0});
      hits += overlap_objective(pair.g1, pair.g2, got) == best ? 1 : 0;
    }
    CHECK(hits >= 80);
  }
}

TEST_CASE("graph label swap") {
  Rng rng(35);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.below(140);
    Graph g = cmtest::random_graph(n, 0.3, rng);
    const Node a = static_cast<Node>(rng.below(n));
    const Node b = static_cast<Node>(rng.below(n));
    std::vector<Node> images(n);
    std::iota(images.begin(), images.end(), Node{0});
    std::swap(images[a], images[b]);
    const Graph expected = apply_permutation(g, Permutation(images));
    g.swap_labels(a, b);
    CHECK(g == expected);
  }
}

TEST_CASE("genie k-core") {
  Rng rng(36);
  SUBCASE("no corruption, s=1, k=0 keeps everything") {
    const auto inst = uncorrupted(sample_cer(20, 0.2, 1.0, rng));
    CHECK(genie_k_core(inst, 0).domain_size() == 20);
  }
  SUBCASE("k above n-1 is empty") {
    const auto inst = uncorrupted(sample_cer(10, 1.0, 1.0, rng));
    CHECK(genie_k_core(inst, 10).empty());
    CHECK(genie_k_core(inst, 9).domain_size() == 10);
  }
  SUBCASE("n=10 instances match an explicit peeling oracle") {
    for (int t = 0; t < 30; ++t) {
      const auto inst = sample_wcg(10, 0.6, 0.8, 0.3, 0.5, rng);
      Graph ig(10);
      for (Node i = 0; i < 10; ++i)
        for (Node j = i + 1; j < 10; ++j)
          if (inst.g1_tilde.has_edge(i, j) && inst.g2_tilde.has_edge(inst.pi_star(i), inst.pi_star(j)))
            ig.set_edge(i, j);
      for (std::size_t k = 0; k < 5; ++k) {
        const Matching mu = genie_k_core(inst, k);
        CHECK(mu.domain() == scan_peel(ig, k));
        if (!mu.empty()) CHECK(precision(mu, inst.pi_star) == 1.0);
        CHECK(is_k_core_matching(inst.g1_tilde, inst.g2_tilde, mu, k));
      }
    }
  }
}

TEST_CASE("k_core_estimator_exact") {
  Rng rng(37);
  SUBCASE("k=0 gives a full permutation") {
    const Graph g = cmtest::random_graph(6, 0.3, rng);
    const auto res = k_core_estimator_exact(g, cmtest::random_graph(6, 0.3, rng), 0);
    CHECK(res.matching.domain_size() == 6);
    CHECK(res.matching.to_permutation() == Permutation::identity(6));
    CHECK(res.certified_exact);
  }
  SUBCASE("complete graphs, k=3") {
    const auto res = k_core_estimator_exact(Graph::complete(4), Graph::complete(4), 3);
    CHECK(res.matching == Matching(Permutation::identity(4)));
  }
  SUBCASE("no matching qualifies on empty graphs with k=1") {
    CHECK(k_core_estimator_exact(Graph(5), Graph(5), 1).matching.empty());
  }
  SUBCASE("agrees with exhaustive enumeration") {
    for (int t = 0; t < 12; ++t) {
      const std::size_t n = 3 + rng.below(4);
      const auto inst = sample_wcg(n, 0.7, 0.9, 0.3, 0.5, rng);
      const std::size_t k = 1 + rng.below(2);
      const auto res = k_core_estimator_exact(inst.g1_tilde, inst.g2_tilde, k);
      CHECK(res.matching == brute_force_k_core_estimator(inst.g1_tilde, inst.g2_tilde, k));
      CHECK(is_k_core_matching(inst.g1_tilde, inst.g2_tilde, res.matching, k));
    }
  }
  CHECK_THROWS_AS(k_core_estimator_exact(Graph(9), Graph(9), 1), std::invalid_argument);
}

TEST_CASE("f statistic") {
  Rng rng(38);
  const Graph h = cmtest::random_graph(8, 0.5, rng);
  const Permutation truth = Permutation::uniform(8, rng);
  CHECK(f_statistic(Matching(truth), truth, h, h) == 0);

  // 5-node instance: h1 = h2 = K5 minus {3,4}; mu* = identity; mu swaps 0 and 1 and drops 4.
  Graph k5 = Graph::complete(5);
  k5.set_edge(3, 4, false);
  Matching mu(5);
  mu.assign(0, 1);
  mu.assign(1, 0);
  mu.assign(2, 2);
  mu.assign(3, 3);
  // Intersection graph on {0,1,2,3} is K4, so each swapped node has degree 3.
  CHECK(disagreements(mu, Permutation::identity(5)) == std::vector<Node>{0, 1});
  CHECK(f_statistic(mu, Permutation::identity(5), k5, k5) == 6);
  CHECK(is_weak_k_core(mu, Permutation::identity(5), k5, k5, 3));
  CHECK_FALSE(is_weak_k_core(mu, Permutation::identity(5), k5, k5, 4));

  // An isolated disagreeing node contributes nothing.
  Matching lonely(5);
  lonely.assign(4, 0);
  CHECK(f_statistic(lonely, Permutation::identity(5), Graph(5), Graph(5)) == 0);

  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.below(10);
    const Graph h1 = cmtest::random_graph(n, 0.5, rng);
    const Graph h2 = cmtest::random_graph(n, 0.5, rng);
    const Matching m = cmtest::random_matching(n, 0.7, rng);
    const Permutation star = Permutation::uniform(n, rng);
    std::size_t expected = 0;
    for (Node i : m.domain()) {
      if (m.at(i) == star(i)) continue;
      for (Node j : m.domain()) expected += (h1.has_edge(i, j) && h2.has_edge(m.at(i), m.at(j))) ? 1 : 0;
    }
    CHECK(f_statistic(m, star, h1, h2) == expected);
  }
}

TEST_CASE("maximal matching enumeration") {
  SUBCASE("d=0 yields mu* itself") {
    const Permutation star({2, 0, 1, 3});
    const auto e = enumerate_maximal_matchings(star, 0);
    REQUIRE(e.items.size() == 1);
    CHECK(e.items[0] == Matching(star));
  }
  SUBCASE("matches a naive filter over all partial injections") {
    Rng rng(39);
    for (std::size_t n = 1; n <= 5; ++n) {
      const Permutation star = Permutation::uniform(n, rng);
      std::map<std::size_t, std::vector<std::vector<std::size_t>>> by_d;
      cmtest::for_each_partial_injection(n, [&](const Matching& mu) {
        if (is_maximal(mu, star)) by_d[disagreements(mu, star).size()].push_back(lex_key(mu));
      });
      for (std::size_t d = 0; d <= n; ++d) {
        const auto e = enumerate_maximal_matchings(star, d);
        std::vector<std::vector<std::size_t>> got;
        for (const auto& mu : e.items) {
          CHECK(is_maximal(mu, star));
          CHECK(disagreements(mu, star).size() == d);
          got.push_back(lex_key(mu));
        }
        auto expected = by_d[d];
        std::sort(expected.begin(), expected.end());
        CHECK(got == expected);
        CHECK(static_cast<double>(got.size()) <= maximal_matching_count_bound(n, d));
      }
    }
  }
  SUBCASE("bound holds up to n=8") {
    for (std::size_t d = 0; d <= 3; ++d) {
      const auto e = enumerate_maximal_matchings(Permutation::identity(8), d);
      CHECK(static_cast<double>(e.items.size()) <= maximal_matching_count_bound(8, d));
    }
  }
  CHECK(maximal_matching_count_bound(4, 2) == doctest::Approx(128.0));
  CHECK_THROWS_AS(enumerate_maximal_matchings(Permutation::identity(9), 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_maximal_matchings(Permutation::identity(3), 4), std::invalid_argument);
}

TEST_CASE("a disagreeing k-core matching implies a weak k-core maximal matching") {
  Rng rng(40);
  int exercised = 0;
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 4 + rng.below(3);
    const auto inst = sample_wcg(n, 0.8, 0.9, 0.4, 0.5, rng);
    const Graph& h1 = inst.g1_tilde;
    const Graph& h2 = inst.g2_tilde;
    const Permutation& star = inst.pi_star;
    for (std::size_t k = 1; k <= 2; ++k) {
      bool disagreeing_core = false;
      cmtest::for_each_partial_injection(n, [&](const Matching& mu) {
        if (disagreeing_core || mu.empty()) return;
        if (!disagreements(mu, star).empty() && min_degree_on(h1, h2, mu) >= k) disagreeing_core = true;
      });
      if (!disagreeing_core) continue;
      ++exercised;
      bool weak_found = false;
      for (std::size_t d = 1; d <= n && !weak_found; ++d)
        for (const auto& mu : enumerate_maximal_matchings(star, d).items)
          if (is_weak_k_core(mu, star, h1, h2, k)) {
            weak_found = true;
            break;
          }
      CHECK(weak_found);
    }
  }
  CHECK(exercised > 0);
}
