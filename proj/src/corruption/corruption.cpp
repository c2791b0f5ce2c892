#include "corruptmatch/corruption/corruption.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "corruptmatch/graph/graph_ops.hpp"
#include "corruptmatch/graph/io.hpp"

namespace corruptmatch {

std::string to_string(CorruptionModel model) {
  switch (model) {
    case CorruptionModel::kNone: return "cer";
    case CorruptionModel::kWcg: return "wcg";
    case CorruptionModel::kImitation: return "scg-imitation";
    case CorruptionModel::kOverwhelm: return "scg-overwhelm";
  }
  return "unknown";
}

CorruptionModel parse_corruption_model(const std::string& name) {
  if (name == "cer") return CorruptionModel::kNone;
  if (name == "wcg") return CorruptionModel::kWcg;
  if (name == "scg-imitation") return CorruptionModel::kImitation;
  if (name == "scg-overwhelm") return CorruptionModel::kOverwhelm;
  throw std::invalid_argument("unknown model '" + name + "' (expected cer, wcg, scg-imitation, scg-overwhelm)");
}

std::vector<Node> CorruptedInstance::corrupted_union() const {
  std::vector<Node> out;
  std::set_union(b1.begin(), b1.end(), b2_pre.begin(), b2_pre.end(), std::back_inserter(out));
  return out;
}

std::vector<bool> CorruptedInstance::corrupted_mask() const {
  std::vector<bool> mask(params.n, false);
  for (Node i : b1) mask[i] = true;
  for (Node i : b2_pre) mask[i] = true;
  return mask;
}

std::size_t budget(double fraction, std::size_t n) {
  const double exact = fraction * static_cast<double>(n);
  return static_cast<std::size_t>(std::floor(exact + 1e-9 * std::max(1.0, exact)));
}

std::size_t b1_budget(std::size_t n, double gamma, double lambda) { return budget(lambda * gamma, n); }
std::size_t b2_budget(std::size_t n, double gamma, double lambda) { return budget((1.0 - lambda) * gamma, n); }

namespace {

void check_params(double gamma, double lambda) {
  require_probability(gamma, "gamma");
  require_probability(lambda, "lambda");
}

std::vector<Node> preimage(const Permutation& pi, const std::vector<Node>& set) {
  const Permutation inv = pi.inverse();
  std::vector<Node> out;
  out.reserve(set.size());
  for (Node v : set) out.push_back(inv(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Node> range(Node first, Node last) {
  std::vector<Node> out(last - first);
  std::iota(out.begin(), out.end(), first);
  return out;
}

std::vector<Node> uniform_subset(std::size_t n, std::size_t size, Rng& rng) {
  std::vector<Node> all = range(0, static_cast<Node>(n));
  rng.shuffle(std::span<Node>(all));
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

void resample_touching(Graph& g, const std::vector<Node>& set, double q, Rng& rng) {
  std::vector<bool> mask(g.size(), false);
  for (Node v : set) mask[v] = true;
  for (Node i = 0; i < g.size(); ++i)
    for (Node j = i + 1; j < g.size(); ++j)
      if (mask[i] || mask[j]) g.set_edge(i, j, rng.bernoulli(q));
}

CorruptedInstance base_instance(const CorrelatedPair& pair, CorruptionModel model, double gamma, double lambda) {
  CorruptedInstance inst;
  inst.model = model;
  inst.params = {pair.params.n, pair.params.p, pair.params.s, gamma, lambda};
  inst.g1_tilde = pair.g1;
  inst.g2_tilde = pair.g2;
  inst.pi_star = pair.pi_star;
  return inst;
}

}  // namespace

CorruptedInstance uncorrupted(const CorrelatedPair& pair) {
  return base_instance(pair, CorruptionModel::kNone, 0.0, 0.0);
}

CorruptedInstance apply_wcg(const CorrelatedPair& pair, double gamma, double lambda, Rng& rng) {
  check_params(gamma, lambda);
  const std::size_t n = pair.params.n;
  CorruptedInstance inst = base_instance(pair, CorruptionModel::kWcg, gamma, lambda);
  inst.b1 = uniform_subset(n, b1_budget(n, gamma, lambda), rng);
  inst.b2 = uniform_subset(n, b2_budget(n, gamma, lambda), rng);
  inst.b2_pre = preimage(pair.pi_star, inst.b2);
  const double q = pair.params.p * pair.params.s;
  resample_touching(inst.g1_tilde, inst.b1, q, rng);
  resample_touching(inst.g2_tilde, inst.b2, q, rng);
  return inst;
}

CorruptedInstance sample_wcg(std::size_t n, double p, double s, double gamma, double lambda, Rng& rng) {
  check_params(gamma, lambda);
  const CorrelatedPair pair = sample_cer(n, p, s, rng);
  return apply_wcg(pair, gamma, lambda, rng);
}

ImitationResult adversary_imitation(const CorrelatedPair& pair, double gamma, double lambda) {
  check_params(gamma, lambda);
  const std::size_t n = pair.params.n;
  const auto m = static_cast<Node>(b1_budget(n, gamma, lambda));
  const Node h = m / 2;
  std::vector<Node> images = range(0, static_cast<Node>(n));
  for (Node i = 0; i < h; ++i) std::swap(images[i], images[i + h]);
  Permutation swap(std::move(images));

  CorruptedInstance inst = base_instance(pair, CorruptionModel::kImitation, gamma, lambda);
  inst.b1 = range(0, m);
  inst.b2_pre = range(0, static_cast<Node>(b2_budget(n, gamma, lambda)));
  for (Node i : inst.b2_pre) inst.b2.push_back(pair.pi_star(i));
  std::sort(inst.b2.begin(), inst.b2.end());
  inst.g1_tilde = apply_permutation(pair.g1, swap);
  return {std::move(inst), std::move(swap)};
}

OverwhelmResult adversary_overwhelm(const CorrelatedPair& pair, double gamma) {
  check_params(gamma, 0.5);
  const std::size_t n = pair.params.n;
  const auto h = static_cast<Node>(budget(gamma / 2.0, n));
  OverwhelmResult out;
  CorruptedInstance& inst = out.instance;
  inst = base_instance(pair, CorruptionModel::kOverwhelm, gamma, 0.5);
  inst.b1 = range(0, h);
  inst.b2 = range(h, 2 * h);
  inst.b2_pre = preimage(pair.pi_star, inst.b2);
  for (Node i = 2 * h; i < n; ++i) (i % 2 == 1 ? out.good1 : out.good2).push_back(i);

  for (Node i : inst.b1)
    for (Node j : out.good1) inst.g1_tilde.set_edge(i, j);
  for (Node i : inst.b2)
    for (Node j : out.good2) inst.g2_tilde.set_edge(i, j);

  std::vector<Node> images = range(0, static_cast<Node>(n));
  for (Node k = 0; k < h; ++k) {
    images[inst.b1[k]] = inst.b2[k];
    images[inst.b2[k]] = inst.b1[k];
  }
  const std::size_t paired = std::min(out.good1.size(), out.good2.size());
  for (std::size_t k = 0; k < paired; ++k) {
    images[out.good1[k]] = out.good2[k];
    images[out.good2[k]] = out.good1[k];
  }
  out.swap = Permutation(std::move(images));
  return out;
}

CorrelatedPair align_to_identity(const CorrelatedPair& pair) {
  return CorrelatedPair{pair.g1, pull_back(pair.g2, pair.pi_star), Permutation::identity(pair.params.n),
                        pair.params};
}

namespace {

std::string pair_text(Node i, Node j) { return "{" + std::to_string(i) + ", " + std::to_string(j) + "}"; }

ValidationReport fail(std::string message) { return {false, std::move(message), std::nullopt, 0}; }

bool valid_set(const std::vector<Node>& set, std::size_t n) {
  return std::is_sorted(set.begin(), set.end()) &&
         std::adjacent_find(set.begin(), set.end()) == set.end() && (set.empty() || set.back() < n);
}

std::optional<Edge> first_change(const Graph& before, const Graph& after, const std::vector<Node>& allowed) {
  std::vector<bool> mask(before.size(), false);
  for (Node v : allowed) mask[v] = true;
  for (Node i = 0; i < before.size(); ++i) {
    if (mask[i]) continue;
    for (Node j = i + 1; j < before.size(); ++j)
      if (!mask[j] && before.has_edge(i, j) != after.has_edge(i, j)) return Edge{i, j};
  }
  return std::nullopt;
}

}  // namespace

ValidationReport validate_corruption(const CorruptedInstance& instance, const Graph& g1, const Graph& g2) {
  const std::size_t n = instance.params.n;
  if (g1.size() != n || g2.size() != n || instance.g1_tilde.size() != n || instance.g2_tilde.size() != n ||
      instance.pi_star.size() != n)
    return fail("graph sizes disagree with n = " + std::to_string(n));
  if (!valid_set(instance.b1, n)) return fail("b1 is not a sorted set of nodes");
  if (!valid_set(instance.b2, n)) return fail("b2 is not a sorted set of nodes");
  const double lambda = instance.model == CorruptionModel::kOverwhelm ? 0.5 : instance.params.lambda;
  const std::size_t cap1 = b1_budget(n, instance.params.gamma, lambda);
  const std::size_t cap2 = b2_budget(n, instance.params.gamma, lambda);
  if (instance.b1.size() > cap1)
    return fail("|b1| = " + std::to_string(instance.b1.size()) + " exceeds budget " + std::to_string(cap1));
  if (instance.b2.size() > cap2)
    return fail("|b2| = " + std::to_string(instance.b2.size()) + " exceeds budget " + std::to_string(cap2));
  if (instance.b2_pre != preimage(instance.pi_star, instance.b2)) return fail("b2_pre is not the preimage of b2");
  if (auto e = first_change(g1, instance.g1_tilde, instance.b1))
    return {false, "pair " + pair_text(e->first, e->second) + " outside E_B1 changed in G1", e, 1};
  if (auto e = first_change(g2, instance.g2_tilde, instance.b2))
    return {false, "pair " + pair_text(e->first, e->second) + " outside E_B2 changed in G2", e, 2};
  return {true, "ok", std::nullopt, 0};
}

AdversaryStrategy strategy_for(CorruptionModel model) {
  switch (model) {
    case CorruptionModel::kNone:
      return [](const CorrelatedPair& pair, double, double, Rng&) { return uncorrupted(pair); };
    case CorruptionModel::kWcg:
      return [](const CorrelatedPair& pair, double gamma, double lambda, Rng& rng) {
        return apply_wcg(pair, gamma, lambda, rng);
      };
    case CorruptionModel::kImitation:
      return [](const CorrelatedPair& pair, double gamma, double lambda, Rng&) {
        return adversary_imitation(pair, gamma, lambda).instance;
      };
    case CorruptionModel::kOverwhelm:
      return [](const CorrelatedPair& pair, double gamma, double, Rng&) {
        return adversary_overwhelm(pair, gamma).instance;
      };
  }
  throw std::invalid_argument("strategy_for: unknown model");
}

Matching random_guess_matching(const CorruptedInstance& instance, Rng& rng) {
  const std::vector<Node> domain = instance.corrupted_union();
  std::vector<Node> targets;
  targets.reserve(domain.size());
  for (Node i : domain) targets.push_back(instance.pi_star(i));
  rng.shuffle(std::span<Node>(targets));
  Matching mu(instance.params.n);
  for (std::size_t k = 0; k < domain.size(); ++k) mu.assign(domain[k], targets[k]);
  return mu;
}

void save_instance(const std::filesystem::path& dir, const CorruptedInstance& instance) {
  std::filesystem::create_directories(dir);
  save_edge_list(dir / "g1_tilde.txt", instance.g1_tilde);
  save_edge_list(dir / "g2_tilde.txt", instance.g2_tilde);
  const auto& p = instance.params;
  nlohmann::json manifest = {
      {"model", to_string(instance.model)},
      {"params", {{"n", p.n}, {"p", p.p}, {"s", p.s}, {"gamma", p.gamma}, {"lambda", p.lambda}}},
      {"b1", instance.b1},
      {"b2", instance.b2},
      {"pi_star", permutation_to_json(instance.pi_star)},
  };
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
}

CorruptedInstance load_instance(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("cannot read " + (dir / "manifest.json").string());
  const nlohmann::json manifest = nlohmann::json::parse(in);
  CorruptedInstance inst;
  inst.model = parse_corruption_model(manifest.at("model").get<std::string>());
  const auto& p = manifest.at("params");
  inst.params = {p.at("n").get<std::size_t>(), p.at("p").get<double>(), p.at("s").get<double>(),
                 p.at("gamma").get<double>(), p.at("lambda").get<double>()};
  inst.b1 = manifest.at("b1").get<std::vector<Node>>();
  inst.b2 = manifest.at("b2").get<std::vector<Node>>();
  inst.pi_star = permutation_from_json(manifest.at("pi_star"));
  inst.b2_pre = preimage(inst.pi_star, inst.b2);
  inst.g1_tilde = load_edge_list(dir / "g1_tilde.txt");
  inst.g2_tilde = load_edge_list(dir / "g2_tilde.txt");
  if (inst.g1_tilde.size() != inst.params.n || inst.g2_tilde.size() != inst.params.n ||
      inst.pi_star.size() != inst.params.n)
    throw std::runtime_error("instance files disagree with manifest n");
  return inst;
}

}  // namespace corruptmatch
