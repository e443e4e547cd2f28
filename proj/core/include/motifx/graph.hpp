#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace motifx {

using NodeIndex = std::size_t;
using Edge = std::pair<NodeIndex, NodeIndex>;

inline constexpr std::size_t kDefaultMaxArity = 5;

/// Binary simple graph over nodes 0..n-1 stored as a dense row-major
/// adjacency matrix. No self-loops; undirected graphs are symmetric.
class Graph {
 public:
  /// Validates the matrix; throws ValidationError on a violated invariant.
  static Graph from_matrix(std::size_t n, bool directed,
                           std::vector<std::uint8_t> adjacency);
  /// Duplicate edges are idempotent. Self-loops and out-of-range endpoints
  /// throw ValidationError.
  static Graph from_edges(std::size_t n, bool directed,
                          std::span<const Edge> edges);
  static Graph empty(std::size_t n, bool directed);
  static Graph complete(std::size_t n, bool directed);

  std::size_t size() const { return n_; }
  bool directed() const { return directed_; }
  bool has_edge(NodeIndex from, NodeIndex to) const {
    return adjacency_[from * n_ + to] != 0;
  }
  std::uint8_t operator()(NodeIndex from, NodeIndex to) const {
    return adjacency_[from * n_ + to];
  }
  std::span<const std::uint8_t> matrix() const { return adjacency_; }

  /// Edges as (from, to); undirected edges are listed once with from < to.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph(std::size_t n, bool directed, std::vector<std::uint8_t> adjacency)
      : n_(n), directed_(directed), adjacency_(std::move(adjacency)) {}

  std::size_t n_ = 0;
  bool directed_ = false;
  std::vector<std::uint8_t> adjacency_;
};

/// Expected adjacency matrix: entry (u, v) is the probability that link
/// u -> v exists, links independent of one another.
class WeightedGraph {
 public:
  static WeightedGraph from_matrix(std::size_t n, bool directed,
                                   std::vector<double> probabilities);
  static WeightedGraph uniform(std::size_t n, bool directed, double p);
  /// Lifts a binary graph to its degenerate 0/1 weighted form.
  static WeightedGraph from_graph(const Graph& g);

  std::size_t size() const { return n_; }
  bool directed() const { return directed_; }
  double operator()(NodeIndex from, NodeIndex to) const {
    return probabilities_[from * n_ + to];
  }
  std::span<const double> matrix() const { return probabilities_; }

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  WeightedGraph(std::size_t n, bool directed, std::vector<double> probabilities)
      : n_(n), directed_(directed), probabilities_(std::move(probabilities)) {}

  std::size_t n_ = 0;
  bool directed_ = false;
  std::vector<double> probabilities_;
};

/// k x k binary template. Entry (i, j) = 1 requires link i -> j, 0 forbids
/// it; every off-diagonal pair is constrained (induced matching).
class Motif {
 public:
  static Motif from_matrix(std::size_t k, bool directed,
                           std::vector<std::uint8_t> pattern,
                           std::size_t max_arity = kDefaultMaxArity);
  static Motif complete(std::size_t k, bool directed);
  static Motif empty(std::size_t k, bool directed);
  /// Link 0 -> 1 (and 1 -> 0 when undirected); all other nodes isolated.
  static Motif single_edge(std::size_t k, bool directed);

  std::size_t arity() const { return k_; }
  bool directed() const { return directed_; }
  bool requires_link(std::size_t i, std::size_t j) const {
    return pattern_[i * k_ + j] != 0;
  }
  std::uint8_t operator()(std::size_t i, std::size_t j) const {
    return pattern_[i * k_ + j];
  }
  std::span<const std::uint8_t> matrix() const { return pattern_; }

  friend bool operator==(const Motif&, const Motif&) = default;

 private:
  Motif(std::size_t k, bool directed, std::vector<std::uint8_t> pattern)
      : k_(k), directed_(directed), pattern_(std::move(pattern)) {}

  std::size_t k_ = 0;
  bool directed_ = false;
  std::vector<std::uint8_t> pattern_;
};

/// Injective ordered assignment of motif positions to host nodes.
class NodeTuple {
 public:
  /// Throws ValidationError unless every index is < node_count and all
  /// indices are pairwise distinct.
  NodeTuple(std::vector<NodeIndex> nodes, std::size_t node_count);

  std::size_t size() const { return nodes_.size(); }
  NodeIndex operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const NodeIndex> nodes() const { return nodes_; }

 private:
  std::vector<NodeIndex> nodes_;
};

using Permutation = std::vector<NodeIndex>;

/// Relabels node i as perm[i]: result(perm[i], perm[j]) = g(i, j).
Graph permute_nodes(const Graph& g, std::span<const NodeIndex> perm);
WeightedGraph permute_nodes(const WeightedGraph& g,
                            std::span<const NodeIndex> perm);
Permutation inverse_permutation(std::span<const NodeIndex> perm);

/// Requires every entry to be exactly 0.0 or 1.0.
Graph threshold_to_graph(const WeightedGraph& wg);

}  // namespace motifx
