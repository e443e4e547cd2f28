#include "motifx/graph.hpp"

#include <cmath>
#include <string>

#include "motifx/error.hpp"

namespace motifx {
namespace {

std::string cell(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

template <typename T>
void check_square(std::size_t n, const std::vector<T>& values,
                  const char* what) {
  if (values.size() != n * n) {
    throw ValidationError(std::string(what) + ": expected " +
                          std::to_string(n * n) + " matrix entries, got " +
                          std::to_string(values.size()));
  }
}

template <typename T>
void check_structure(std::size_t n, bool directed, const std::vector<T>& values,
                     const char* what) {
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i * n + i] != T{0}) {
      throw ValidationError(std::string(what) + ": nonzero diagonal entry at " +
                            cell(i, i) + " (self-loops are not allowed)");
    }
    if (directed) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (values[i * n + j] != values[j * n + i]) {
        throw ValidationError(std::string(what) +
                              ": undirected matrix is not symmetric at " +
                              cell(i, j));
      }
    }
  }
}

void check_binary(const std::vector<std::uint8_t>& values, const char* what) {
  for (std::uint8_t v : values) {
    if (v > 1) {
      throw ValidationError(std::string(what) + ": entries must be 0 or 1");
    }
  }
}

void check_permutation(std::span<const NodeIndex> perm, std::size_t n) {
  if (perm.size() != n) {
    throw ValidationError("permutation has " + std::to_string(perm.size()) +
                          " entries for " + std::to_string(n) + " nodes");
  }
  std::vector<bool> seen(n, false);
  for (NodeIndex p : perm) {
    if (p >= n || seen[p]) {
      throw ValidationError("permutation is not a bijection on [0, " +
                            std::to_string(n) + ")");
    }
    seen[p] = true;
  }
}

}  // namespace

Graph Graph::from_matrix(std::size_t n, bool directed,
                         std::vector<std::uint8_t> adjacency) {
  check_square(n, adjacency, "graph");
  check_binary(adjacency, "graph");
  check_structure(n, directed, adjacency, "graph");
  return Graph(n, directed, std::move(adjacency));
}

Graph Graph::from_edges(std::size_t n, bool directed,
                        std::span<const Edge> edges) {
  std::vector<std::uint8_t> adjacency(n * n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ValidationError("edge " + cell(u, v) + " out of range for " +
                            std::to_string(n) + " nodes");
    }
    if (u == v) {
      throw ValidationError("self-loop on node " + std::to_string(u));
    }
    adjacency[u * n + v] = 1;
    if (!directed) adjacency[v * n + u] = 1;
  }
  return Graph(n, directed, std::move(adjacency));
}

Graph Graph::empty(std::size_t n, bool directed) {
  return Graph(n, directed, std::vector<std::uint8_t>(n * n, 0));
}

Graph Graph::complete(std::size_t n, bool directed) {
  std::vector<std::uint8_t> adjacency(n * n, 1);
  for (std::size_t i = 0; i < n; ++i) adjacency[i * n + i] = 0;
  return Graph(n, directed, std::move(adjacency));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (NodeIndex u = 0; u < n_; ++u) {
    for (NodeIndex v = directed_ ? 0 : u + 1; v < n_; ++v) {
      if (has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (std::uint8_t v : adjacency_) total += v;
  return directed_ ? total : total / 2;
}

WeightedGraph WeightedGraph::from_matrix(std::size_t n, bool directed,
                                         std::vector<double> probabilities) {
  check_square(n, probabilities, "weighted graph");
  for (std::size_t idx = 0; idx < probabilities.size(); ++idx) {
    const double p = probabilities[idx];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw ValidationError("weighted graph: probability " + std::to_string(p) +
                            " at " + cell(idx / n, idx % n) +
                            " is outside [0, 1]");
    }
  }
  check_structure(n, directed, probabilities, "weighted graph");
  return WeightedGraph(n, directed, std::move(probabilities));
}

WeightedGraph WeightedGraph::uniform(std::size_t n, bool directed, double p) {
  std::vector<double> probabilities(n * n, p);
  for (std::size_t i = 0; i < n; ++i) probabilities[i * n + i] = 0.0;
  return from_matrix(n, directed, std::move(probabilities));
}

WeightedGraph WeightedGraph::from_graph(const Graph& g) {
  std::vector<double> probabilities(g.matrix().begin(), g.matrix().end());
  return WeightedGraph(g.size(), g.directed(), std::move(probabilities));
}

Motif Motif::from_matrix(std::size_t k, bool directed,
                         std::vector<std::uint8_t> pattern,
                         std::size_t max_arity) {
  if (k < 2) {
    throw ValidationError("motif arity must be at least 2, got " +
                          std::to_string(k));
  }
  if (k > max_arity) {
    throw SizeLimitError("motif arity " + std::to_string(k) +
                          " exceeds the maximum arity " +
                          std::to_string(max_arity));
  }
  check_square(k, pattern, "motif");
  check_binary(pattern, "motif");
  check_structure(k, directed, pattern, "motif");
  return Motif(k, directed, std::move(pattern));
}

Motif Motif::complete(std::size_t k, bool directed) {
  std::vector<std::uint8_t> pattern(k * k, 1);
  for (std::size_t i = 0; i < k; ++i) pattern[i * k + i] = 0;
  return from_matrix(k, directed, std::move(pattern), k);
}

Motif Motif::empty(std::size_t k, bool directed) {
  return from_matrix(k, directed, std::vector<std::uint8_t>(k * k, 0), k);
}

Motif Motif::single_edge(std::size_t k, bool directed) {
  std::vector<std::uint8_t> pattern(k * k, 0);
  pattern[1] = 1;
  if (!directed) pattern[k] = 1;
  return from_matrix(k, directed, std::move(pattern), k);
}

NodeTuple::NodeTuple(std::vector<NodeIndex> nodes, std::size_t node_count)
    : nodes_(std::move(nodes)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] >= node_count) {
      throw ValidationError("tuple entry " + std::to_string(nodes_[i]) +
                            " out of range for " + std::to_string(node_count) +
                            " nodes");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (nodes_[j] == nodes_[i]) {
        throw ValidationError("tuple is not injective: node " +
                              std::to_string(nodes_[i]) + " repeats");
      }
    }
  }
}

Graph permute_nodes(const Graph& g, std::span<const NodeIndex> perm) {
  const std::size_t n = g.size();
  check_permutation(perm, n);
  std::vector<std::uint8_t> adjacency(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      adjacency[perm[i] * n + perm[j]] = g(i, j);
    }
  }
  return Graph::from_matrix(n, g.directed(), std::move(adjacency));
}

WeightedGraph permute_nodes(const WeightedGraph& g,
                            std::span<const NodeIndex> perm) {
  const std::size_t n = g.size();
  check_permutation(perm, n);
  std::vector<double> probabilities(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      probabilities[perm[i] * n + perm[j]] = g(i, j);
    }
  }
  return WeightedGraph::from_matrix(n, g.directed(), std::move(probabilities));
}

Permutation inverse_permutation(std::span<const NodeIndex> perm) {
  check_permutation(perm, perm.size());
  Permutation inverse(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inverse[perm[i]] = i;
  return inverse;
}

Graph threshold_to_graph(const WeightedGraph& wg) {
  const std::size_t n = wg.size();
  std::vector<std::uint8_t> adjacency(n * n, 0);
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    const double p = wg.matrix()[idx];
    if (p == 1.0) {
      adjacency[idx] = 1;
    } else if (p != 0.0) {
      throw ValidationError("threshold_to_graph: entry " + std::to_string(p) +
                            " at " + cell(idx / n, idx % n) +
                            " is not exactly 0 or 1");
    }
  }
  return Graph::from_matrix(n, wg.directed(), std::move(adjacency));
}

}  // namespace motifx
