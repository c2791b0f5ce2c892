#include "corruptmatch/graph/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace corruptmatch {

void write_edge_list(std::ostream& out, const Graph& g) {
  const auto edges = g.edges();
  out << g.size() << ' ' << edges.size() << '\n';
  for (const auto& [i, j] : edges) out << i << ' ' << j << '\n';
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

Graph read_edge_list(std::istream& in) {
  long long n = -1;
  long long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw std::runtime_error("edge list: bad header");
  Graph g(static_cast<std::size_t>(n));
  for (long long e = 0; e < m; ++e) {
    long long i = -1;
    long long j = -1;
    if (!(in >> i >> j)) throw std::runtime_error("edge list: expected " + std::to_string(m) + " edges");
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
      throw std::runtime_error("edge list: invalid edge " + std::to_string(i) + " " + std::to_string(j));
    const auto a = static_cast<Node>(i);
    const auto b = static_cast<Node>(j);
    if (g.has_edge(a, b)) throw std::runtime_error("edge list: duplicate edge " + std::to_string(i) + " " + std::to_string(j));
    g.set_edge(a, b);
  }
  std::string rest;
  if (in >> rest) throw std::runtime_error("edge list: trailing data");
  return g;
}

void save_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_list(out, g);
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_edge_list(in);
}

nlohmann::json matching_to_json(const Matching& mu) {
  auto out = nlohmann::json::array();
  for (Node i : mu.domain()) out.push_back({i, mu.at(i)});
  return out;
}

Matching matching_from_json(const nlohmann::json& j, std::size_t n) {
  if (!j.is_array()) throw std::runtime_error("matching json: expected an array of pairs");
  Matching mu(n);
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) throw std::runtime_error("matching json: expected [i, image]");
    const auto i = pair[0].get<Node>();
    if (i >= n) throw std::runtime_error("matching json: node out of range");
    if (mu.contains(i)) throw std::runtime_error("matching json: node listed twice");
    mu.assign(i, pair[1].get<Node>());
  }
  return mu;
}

nlohmann::json permutation_to_json(const Permutation& pi) {
  return nlohmann::json(std::vector<Node>(pi.images().begin(), pi.images().end()));
}

Permutation permutation_from_json(const nlohmann::json& j) {
  return Permutation(j.get<std::vector<Node>>());
}

}  // namespace corruptmatch
