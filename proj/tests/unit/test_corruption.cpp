#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "corruptmatch/corruption/corruption.hpp"
#include "corruptmatch/graph/graph_ops.hpp"
#include "generators.hpp"

using namespace corruptmatch;

namespace {

bool is_edge_touching(Node i, Node j, const std::vector<Node>& set) {
  return std::binary_search(set.begin(), set.end(), i) || std::binary_search(set.begin(), set.end(), j);
}

}  // namespace

TEST_CASE("budgets floor and survive inexact products") {
  CHECK(budget(1.0 / 3.0, 300) == 100);
  CHECK(budget(0.2, 3000) == 600);
  CHECK(budget(0.25, 10) == 2);
  CHECK(b1_budget(1000, 0.4, 0.5) == 200);
  CHECK(b2_budget(1000, 0.4, 0.5) == 200);
  CHECK(b2_budget(1000, 0.4, 1.0) == 0);
  CHECK(budget(0.0, 50) == 0);
}

TEST_CASE("model names round trip") {
  for (auto m : {CorruptionModel::kNone, CorruptionModel::kWcg, CorruptionModel::kImitation,
                 CorruptionModel::kOverwhelm})
    CHECK(parse_corruption_model(to_string(m)) == m);
  CHECK_THROWS_AS(parse_corruption_model("scg"), std::invalid_argument);
}

TEST_CASE("wcg") {
  Rng rng(21);
  SUBCASE("gamma=0 leaves both graphs bit-identical") {
    const auto pair = sample_cer(50, 0.3, 0.8, rng);
    const auto inst = apply_wcg(pair, 0.0, 0.5, rng);
    CHECK(inst.b1.empty());
    CHECK(inst.b2.empty());
    CHECK(inst.g1_tilde == pair.g1);
    CHECK(inst.g2_tilde == pair.g2);
  }
  SUBCASE("lambda=1 corrupts only the first graph") {
    const auto inst = sample_wcg(50, 0.3, 0.8, 0.3, 1.0, rng);
    CHECK(inst.b1.size() == 15);
    CHECK(inst.b2.empty());
    CHECK(inst.b2_pre.empty());
  }
  SUBCASE("parameters out of range") {
    CHECK_THROWS_AS(sample_wcg(10, 0.3, 0.8, 1.5, 0.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_wcg(10, 0.3, 0.8, 0.5, -0.5, rng), std::invalid_argument);
  }
  SUBCASE("sizes, preimage and uncorrupted-pair identity hold on random instances") {
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 2 + rng.below(40);
      const double gamma = rng.uniform();
      const double lambda = rng.uniform();
      const auto pair = sample_cer(n, rng.uniform(), rng.uniform(), rng);
      const auto inst = apply_wcg(pair, gamma, lambda, rng);
      CHECK(inst.b1.size() == b1_budget(n, gamma, lambda));
      CHECK(inst.b2.size() == b2_budget(n, gamma, lambda));
      for (Node i = 0; i < n; ++i) {
        const bool in_pre = std::binary_search(inst.b2_pre.begin(), inst.b2_pre.end(), i);
        CHECK(in_pre == std::binary_search(inst.b2.begin(), inst.b2.end(), pair.pi_star(i)));
        for (Node j = i + 1; j < n; ++j) {
          if (!is_edge_touching(i, j, inst.b1)) REQUIRE(inst.g1_tilde.has_edge(i, j) == pair.g1.has_edge(i, j));
          if (!is_edge_touching(i, j, inst.b2)) REQUIRE(inst.g2_tilde.has_edge(i, j) == pair.g2.has_edge(i, j));
        }
      }
      CHECK(validate_corruption(inst, pair.g1, pair.g2).ok);
    }
  }
  SUBCASE("resampled pairs have density p*s") {
    const std::size_t n = 200;
    const double p = 0.3;
    const double s = 0.5;
    double edges = 0;
    double pairs = 0;
    for (int r = 0; r < 500; ++r) {
      const auto inst = sample_wcg(n, p, s, 0.2, 1.0, rng);
      for (Node i = 0; i < n; ++i)
        for (Node j = i + 1; j < n; ++j)
          if (is_edge_touching(i, j, inst.b1)) {
            pairs += 1;
            edges += inst.g1_tilde.has_edge(i, j) ? 1 : 0;
          }
    }
    CHECK(pairs == 500.0 * (19900 - 12720));
    const double q = p * s;
    CHECK(std::abs(edges / pairs - q) < 4 * std::sqrt(q * (1 - q) / pairs));
  }
}

TEST_CASE("overlap of corrupted sets follows hypergeometric moments") {
  // Small-scale version of the full acceptance check.
  Rng rng(22);
  const std::size_t n = 100;
  const double gamma = 0.4;
  const double lambda = 0.5;
  const int reps = 2000;
  double sum = 0;
  for (int r = 0; r < reps; ++r) {
    const auto pair = sample_cer(n, 0.0, 1.0, rng);
    const auto inst = apply_wcg(pair, gamma, lambda, rng);
    std::vector<Node> both;
    std::set_intersection(inst.b1.begin(), inst.b1.end(), inst.b2_pre.begin(), inst.b2_pre.end(),
                          std::back_inserter(both));
    sum += static_cast<double>(both.size()) / n;
  }
  const double mean = lambda * (1 - lambda) * gamma * gamma;
  const double var = mean * (1 - lambda * gamma) * (1 - (1 - lambda) * gamma) * n * n / (n - 1.0);
  CHECK(std::abs(sum / reps - mean) < 4 * std::sqrt(var / (n * n)) / std::sqrt(reps));
}

TEST_CASE("imitation adversary") {
  Rng rng(23);
  SUBCASE("gamma=0 is a no-op") {
    const auto pair = sample_cer(20, 0.4, 0.9, rng);
    const auto res = adversary_imitation(pair, 0.0, 1.0);
    CHECK(res.swap == Permutation::identity(20));
    CHECK(res.instance.g1_tilde == pair.g1);
  }
  SUBCASE("n=8, lambda=1, gamma=1/2 swaps (0 2)(1 3)") {
    const auto pair = sample_cer(8, 0.5, 1.0, rng);
    const auto res = adversary_imitation(pair, 0.5, 1.0);
    CHECK(res.instance.b1 == std::vector<Node>{0, 1, 2, 3});
    CHECK(res.swap == Permutation({2, 3, 0, 1, 4, 5, 6, 7}));
    int checked = 0;
    for (Node i = 0; i < 8; ++i)
      for (Node j = i + 1; j < 8; ++j, ++checked)
        CHECK(res.instance.g1_tilde.has_edge(i, j) == pair.g1.has_edge(res.swap(i), res.swap(j)));
    CHECK(checked == 28);
    CHECK(res.instance.g2_tilde == pair.g2);
  }
  SUBCASE("swap is an involution and odd budgets leave the last node fixed") {
    const auto pair = sample_cer(30, 0.4, 0.9, rng);
    const auto res = adversary_imitation(pair, 0.5, 0.6);  // m = 9, h = 4
    CHECK(res.instance.b1.size() == 9);
    CHECK(res.swap(8) == 8);
    CHECK(res.swap(0) == 4);
    CHECK(compose(res.swap, res.swap) == Permutation::identity(30));
    CHECK(apply_permutation(res.instance.g1_tilde, res.swap) == pair.g1);
    CHECK(res.instance.b2.size() == b2_budget(30, 0.5, 0.6));
    CHECK(res.instance.b2_pre == std::vector<Node>{0, 1, 2, 3, 4, 5});
    CHECK(validate_corruption(res.instance, pair.g1, pair.g2).ok);
  }
}

TEST_CASE("overwhelm adversary") {
  Rng rng(24);
  SUBCASE("gamma=0 changes nothing") {
    const auto pair = sample_cer(20, 0.3, 0.9, rng);
    const auto res = adversary_overwhelm(pair, 0.0);
    CHECK(res.instance.g1_tilde == pair.g1);
    CHECK(res.instance.g2_tilde == pair.g2);
  }
  SUBCASE("n=12, gamma=1/3") {
    const auto pair = sample_cer(12, 0.3, 0.9, rng);
    const auto res = adversary_overwhelm(pair, 1.0 / 3.0);
    const auto& inst = res.instance;
    CHECK(inst.b1 == std::vector<Node>{0, 1});
    CHECK(inst.b2 == std::vector<Node>{2, 3});
    CHECK(res.good1 == std::vector<Node>{5, 7, 9, 11});
    CHECK(res.good2 == std::vector<Node>{4, 6, 8, 10});
    // Enumerate all 66 pairs: additions happen exactly on B_k x good_k slots not already edges.
    std::size_t added1 = 0;
    std::size_t preexisting1 = 0;
    std::size_t added2 = 0;
    std::size_t preexisting2 = 0;
    for (Node i = 0; i < 12; ++i) {
      for (Node j = i + 1; j < 12; ++j) {
        const bool slot1 = (i < 2 && j % 2 == 1 && j >= 4);
        const bool slot2 = (i >= 2 && i < 4 && j % 2 == 0 && j >= 4);
        if (slot1) (pair.g1.has_edge(i, j) ? preexisting1 : added1) += 1;
        if (slot2) (pair.g2.has_edge(i, j) ? preexisting2 : added2) += 1;
        if (slot1) CHECK(inst.g1_tilde.has_edge(i, j));
        if (slot2) CHECK(inst.g2_tilde.has_edge(i, j));
      }
    }
    CHECK(added1 + preexisting1 == 8);
    CHECK(added2 + preexisting2 == 8);
    CHECK(inst.g1_tilde.edge_count() - pair.g1.edge_count() == added1);
    CHECK(inst.g2_tilde.edge_count() - pair.g2.edge_count() == added2);
    for (Node i : inst.b1) CHECK(inst.g1_tilde.degree(i) >= res.good1.size());
    CHECK(validate_corruption(inst, pair.g1, pair.g2).ok);
  }
  SUBCASE("swap matching lower bound") {
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = 20 + rng.below(40);
      const auto pair = align_to_identity(sample_cer(n, 0.2, 1.0, rng));
      const auto res = adversary_overwhelm(pair, 0.3);
      const std::size_t x = intersection_edge_count(res.instance.g1_tilde, res.instance.g2_tilde, res.swap);
      CHECK(x >= res.instance.b1.size() * std::min(res.good1.size(), res.good2.size()));
      CHECK(res.swap.fixed_point_count() <= 1);
    }
  }
}

TEST_CASE("validator reports a planted violation") {
  Rng rng(25);
  const auto pair = sample_cer(30, 0.3, 0.9, rng);
  auto inst = apply_wcg(pair, 0.2, 1.0, rng);
  CHECK(validate_corruption(inst, pair.g1, pair.g2).ok);
  Node a = 0;
  while (std::binary_search(inst.b1.begin(), inst.b1.end(), a)) ++a;
  Node b = a + 1;
  while (std::binary_search(inst.b1.begin(), inst.b1.end(), b)) ++b;
  inst.g1_tilde.set_edge(a, b, !inst.g1_tilde.has_edge(a, b));
  const auto report = validate_corruption(inst, pair.g1, pair.g2);
  CHECK_FALSE(report.ok);
  REQUIRE(report.pair.has_value());
  CHECK(*report.pair == Edge{a, b});
  CHECK(report.side == 1);
  CHECK(report.message.find("{" + std::to_string(a) + ", " + std::to_string(b) + "}") != std::string::npos);

  auto over = apply_wcg(pair, 0.2, 1.0, rng);
  Node extra = 0;
  while (std::binary_search(over.b1.begin(), over.b1.end(), extra)) ++extra;
  over.b1.insert(std::lower_bound(over.b1.begin(), over.b1.end(), extra), extra);
  const auto budget_report = validate_corruption(over, pair.g1, pair.g2);
  CHECK_FALSE(budget_report.ok);
  CHECK(budget_report.message.find("exceeds budget") != std::string::npos);
}

TEST_CASE("every strategy passes the validator") {
  Rng rng(26);
  for (auto model : {CorruptionModel::kNone, CorruptionModel::kWcg, CorruptionModel::kImitation,
                     CorruptionModel::kOverwhelm}) {
    for (int t = 0; t < 10; ++t) {
      const auto pair = sample_cer(10 + rng.below(30), 0.3, 0.8, rng);
      const auto inst = strategy_for(model)(pair, rng.uniform() * 0.6, 0.5, rng);
      CHECK(inst.model == model);
      CHECK(validate_corruption(inst, pair.g1, pair.g2).ok);
    }
  }
}

TEST_CASE("random guessing over corrupted nodes has mean 1 and variance 1") {
  Rng rng(27);
  const auto inst = sample_wcg(200, 0.1, 0.9, 0.2, 1.0, rng);
  const int reps = 10000;
  double sum = 0;
  double sum_sq = 0;
  for (int r = 0; r < reps; ++r) {
    const Matching mu = random_guess_matching(inst, rng);
    CHECK(mu.domain() == inst.corrupted_union());
    const double ov = static_cast<double>(overlap(mu, inst.pi_star));
    sum += ov;
    sum_sq += ov * ov;
  }
  const double mean = sum / reps;
  const double var = sum_sq / reps - mean * mean;
  CHECK(std::abs(mean - 1.0) < 4.0 / std::sqrt(reps));
  CHECK(var == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("instances survive a save/load round trip") {
  Rng rng(28);
  const auto inst = sample_wcg(40, 0.3, 0.8, 0.4, 0.5, rng);
  const auto dir = std::filesystem::temp_directory_path() / "corruptmatch_instance_roundtrip";
  std::filesystem::remove_all(dir);
  save_instance(dir, inst);
  const auto back = load_instance(dir);
  CHECK(back.model == inst.model);
  CHECK(back.b1 == inst.b1);
  CHECK(back.b2 == inst.b2);
  CHECK(back.b2_pre == inst.b2_pre);
  CHECK(back.g1_tilde == inst.g1_tilde);
  CHECK(back.g2_tilde == inst.g2_tilde);
  CHECK(back.pi_star == inst.pi_star);
  CHECK(back.params.gamma == inst.params.gamma);
  std::filesystem::remove_all(dir);
}
