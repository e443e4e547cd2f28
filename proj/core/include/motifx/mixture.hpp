#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "motifx/graph.hpp"

namespace motifx {

/// A point z in the latent space R^t.
class LatentVector {
 public:
  LatentVector() = default;
  explicit LatentVector(std::vector<double> values)
      : values_(std::move(values)) {}

  std::size_t dim() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const LatentVector&, const LatentVector&) = default;

 private:
  std::vector<double> values_;
};

/// Deterministic map from a latent vector to an expected adjacency matrix.
/// Implementations must return a valid WeightedGraph of node_count() nodes
/// with matching directedness, and identical inputs must give
/// bit-identical outputs.
class Decoder {
 public:
  virtual ~Decoder() = default;

  virtual std::string_view kind() const = 0;
  virtual std::size_t node_count() const = 0;
  virtual bool directed() const = 0;
  /// Dimension expected by decode(); 0 means z is ignored.
  virtual std::size_t latent_dim() const = 0;
  /// Throws ValidationError on a dimension mismatch.
  virtual WeightedGraph decode(const LatentVector& z) const = 0;
};

/// Fixed expected adjacency matrix; accepts and ignores any z.
class TableDecoder final : public Decoder {
 public:
  explicit TableDecoder(WeightedGraph probabilities)
      : probabilities_(std::move(probabilities)) {}

  std::string_view kind() const override { return "table"; }
  std::size_t node_count() const override { return probabilities_.size(); }
  bool directed() const override { return probabilities_.directed(); }
  std::size_t latent_dim() const override { return 0; }
  WeightedGraph decode(const LatentVector&) const override {
    return probabilities_;
  }

  const WeightedGraph& table() const { return probabilities_; }

 private:
  WeightedGraph probabilities_;
};

/// Inner-product link model: node i has embedding row E_i in R^t and the
/// latent z rescales each embedding dimension, h_i = E_i * (1 + z)
/// elementwise. Off-diagonal probabilities are logistic(h_i . h_j + bias).
/// With z = 0 this is the plain logistic(E_i . E_j + bias) decoder.
class InnerProductDecoder final : public Decoder {
 public:
  /// embeddings: n rows of length dim. Throws ValidationError on ragged
  /// rows, non-finite values or n == 0.
  InnerProductDecoder(bool directed, std::size_t dim,
                      std::vector<std::vector<double>> embeddings, double bias);

  std::string_view kind() const override { return "inner_product"; }
  std::size_t node_count() const override { return embeddings_.size(); }
  bool directed() const override { return directed_; }
  std::size_t latent_dim() const override { return dim_; }
  WeightedGraph decode(const LatentVector& z) const override;

  double bias() const { return bias_; }
  const std::vector<std::vector<double>>& embeddings() const {
    return embeddings_;
  }

 private:
  bool directed_;
  std::size_t dim_;
  std::vector<std::vector<double>> embeddings_;
  double bias_;
};

/// Numerically stable 1 / (1 + exp(-x)).
double logistic(double x);

/// Standard normal prior over R^dim.
struct PriorSpec {
  std::size_t dim = 0;
  std::uint64_t seed = 0;

  static PriorSpec for_decoder(const Decoder& d, std::uint64_t seed) {
    return {d.latent_dim(), seed};
  }
};

/// log P(G | wg): one Bernoulli factor per independent link (ordered pairs
/// u != v when directed, u < v when undirected). Returns -infinity when a
/// factor is exactly zero. A positive `clamp` bounds every probability to
/// [clamp, 1 - clamp] before taking logs.
double graph_log_likelihood(const Graph& g, const WeightedGraph& wg,
                            double clamp = 0.0);

/// One Bernoulli draw per independent link; undirected links are drawn once
/// and mirrored. Draw for link l is uniform01(derive(derive(seed,
/// kGraphStream), l)) < p, with links numbered as in independent_links().
Graph sample_graph(const WeightedGraph& wg, std::uint64_t seed);

/// count vectors of i.i.d. N(0,1) entries; entry (s, d) depends only on
/// (seed, s, d).
std::vector<LatentVector> sample_latent(const PriorSpec& prior,
                                        std::size_t count);

/// Independent links in canonical order: row-major (u, v) with u != v when
/// directed, u < v when undirected.
std::vector<Edge> independent_links(std::size_t n, bool directed);

}  // namespace motifx
