#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "corruptmatch/graph/graph.hpp"
#include "corruptmatch/graph/matching.hpp"
#include "corruptmatch/graph/permutation.hpp"

namespace corruptmatch {

// Edge-list text: "n m" then m lines "i j" with i < j, lexicographic order.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);
// Throws std::runtime_error on malformed input, duplicate edges, or a count mismatch.
Graph read_edge_list(std::istream& in);

void save_edge_list(const std::filesystem::path& path, const Graph& g);
Graph load_edge_list(const std::filesystem::path& path);

// Array of [i, mu(i)] pairs sorted by i. `n` must be supplied on read since
// the domain may be partial.
nlohmann::json matching_to_json(const Matching& mu);
Matching matching_from_json(const nlohmann::json& j, std::size_t n);

nlohmann::json permutation_to_json(const Permutation& pi);
Permutation permutation_from_json(const nlohmann::json& j);

}  // namespace corruptmatch
