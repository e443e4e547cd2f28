#include "motifx/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "motifx/error.hpp"
#include "motifx/rng.hpp"

namespace motifx {

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

InnerProductDecoder::InnerProductDecoder(
    bool directed, std::size_t dim, std::vector<std::vector<double>> embeddings,
    double bias)
    : directed_(directed),
      dim_(dim),
      embeddings_(std::move(embeddings)),
      bias_(bias) {
  if (embeddings_.empty()) {
    throw ValidationError("inner_product decoder needs at least one node");
  }
  if (!std::isfinite(bias_)) {
    throw ValidationError("inner_product decoder bias must be finite");
  }
  for (std::size_t i = 0; i < embeddings_.size(); ++i) {
    if (embeddings_[i].size() != dim_) {
      throw ValidationError("inner_product decoder: embedding row " +
                            std::to_string(i) + " has " +
                            std::to_string(embeddings_[i].size()) +
                            " entries, expected dim " + std::to_string(dim_));
    }
    for (double e : embeddings_[i]) {
      if (!std::isfinite(e)) {
        throw ValidationError("inner_product decoder: non-finite embedding in row " +
                              std::to_string(i));
      }
    }
  }
}

WeightedGraph InnerProductDecoder::decode(const LatentVector& z) const {
  if (z.dim() != dim_) {
    throw ValidationError("latent vector has dimension " +
                          std::to_string(z.dim()) + ", decoder expects " +
                          std::to_string(dim_));
  }
  const std::size_t n = embeddings_.size();
  std::vector<std::vector<double>> scaled(n, std::vector<double>(dim_));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim_; ++d) {
      scaled[i][d] = embeddings_[i][d] * (1.0 + z[d]);
    }
  }
  std::vector<double> probabilities(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < dim_; ++d) dot += scaled[i][d] * scaled[j][d];
      const double p = logistic(dot + bias_);
      probabilities[i * n + j] = p;
      probabilities[j * n + i] = p;
    }
  }
  return WeightedGraph::from_matrix(n, directed_, std::move(probabilities));
}

std::vector<Edge> independent_links(std::size_t n, bool directed) {
  std::vector<Edge> links;
  links.reserve(n * n);
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = directed ? 0 : u + 1; v < n; ++v) {
      if (u != v) links.emplace_back(u, v);
    }
  }
  return links;
}

double graph_log_likelihood(const Graph& g, const WeightedGraph& wg,
                            double clamp) {
  if (g.size() != wg.size() || g.directed() != wg.directed()) {
    throw ValidationError(
        "graph_log_likelihood: graph and weighted graph differ in size or "
        "directedness");
  }
  if (!(clamp >= 0.0 && clamp < 0.5)) {
    throw ValidationError("graph_log_likelihood: clamp must lie in [0, 0.5)");
  }
  double total = 0.0;
  for (const auto& [u, v] : independent_links(g.size(), g.directed())) {
    double p = wg(u, v);
    if (clamp > 0.0) p = std::clamp(p, clamp, 1.0 - clamp);
    const double factor = g.has_edge(u, v) ? p : 1.0 - p;
    if (factor == 0.0) return -std::numeric_limits<double>::infinity();
    total += g.has_edge(u, v) ? std::log(p) : std::log1p(-p);
  }
  return total;
}

Graph sample_graph(const WeightedGraph& wg, std::uint64_t seed) {
  const auto links = independent_links(wg.size(), wg.directed());
  const std::uint64_t stream = rng::derive(seed, rng::kGraphStream);
  std::vector<Edge> present;
  for (std::size_t l = 0; l < links.size(); ++l) {
    const auto [u, v] = links[l];
    if (rng::uniform01(rng::derive(stream, l)) < wg(u, v)) {
      present.push_back(links[l]);
    }
  }
  return Graph::from_edges(wg.size(), wg.directed(), present);
}

std::vector<LatentVector> sample_latent(const PriorSpec& prior,
                                        std::size_t count) {
  if (count == 0) {
    throw ValidationError("sample_latent: count must be at least 1");
  }
  const std::uint64_t stream = rng::derive(prior.seed, rng::kLatentStream);
  std::vector<LatentVector> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const std::uint64_t sample_key = rng::derive(stream, s);
    std::vector<double> values(prior.dim);
    for (std::size_t d = 0; d < prior.dim; ++d) {
      values[d] = rng::standard_normal(rng::derive(sample_key, d));
    }
    out.emplace_back(std::move(values));
  }
  return out;
}

}  // namespace motifx
