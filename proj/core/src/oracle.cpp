#include "motifx/oracle.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "motifx/error.hpp"
#include "motifx/mixture.hpp"
#include "motifx/motif_engine.hpp"
#include "motifx/rng.hpp"

namespace motifx {
namespace {

// Masks per work unit; fixed so partial sums recombine identically for
// every thread count.
constexpr std::uint64_t kChunkMasks = 1024;

void check_oracle_inputs(const WeightedGraph& wg, const Motif& m) {
  if (wg.directed() != m.directed()) {
    throw ValidationError("oracle: weighted graph and motif differ in directedness");
  }
  if (wg.size() < m.arity()) {
    throw ValidationError("oracle: graph has " + std::to_string(wg.size()) +
                          " nodes, fewer than motif arity " +
                          std::to_string(m.arity()));
  }
}

std::size_t chunk_count(const GraphEnumerator& graphs) {
  return static_cast<std::size_t>((graphs.size() + kChunkMasks - 1) /
                                  kChunkMasks);
}

template <typename Visit>
void for_chunk(const GraphEnumerator& graphs, std::size_t chunk, Visit&& visit) {
  const std::uint64_t begin = chunk * kChunkMasks;
  const std::uint64_t end = std::min(graphs.size(), begin + kChunkMasks);
  for (std::uint64_t mask = begin; mask < end; ++mask) visit(mask);
}

}  // namespace

std::size_t independent_link_count(std::size_t n, bool directed) {
  const std::size_t ordered = n * (n == 0 ? 0 : n - 1);
  return directed ? ordered : ordered / 2;
}

GraphEnumerator::GraphEnumerator(std::size_t n, bool directed,
                                 std::size_t max_links)
    : n_(n), directed_(directed) {
  const std::size_t links = independent_link_count(n, directed);
  const std::size_t limit = std::min(max_links, kHardMaxOracleLinks);
  if (links > limit) {
    throw SizeLimitError(
        "exhaustive enumeration of " + std::to_string(n) + "-node " +
        (directed ? "directed" : "undirected") + " graphs needs L = " +
        std::to_string(links) + " independent links (2^" +
        std::to_string(links) + " graphs), above the limit of " +
        std::to_string(limit));
  }
  links_ = independent_links(n, directed);
}

Graph GraphEnumerator::at(std::uint64_t mask) const {
  std::vector<std::uint8_t> adjacency(n_ * n_, 0);
  for (std::size_t l = 0; l < links_.size(); ++l) {
    if ((mask >> l) & 1U) {
      const auto [u, v] = links_[l];
      adjacency[u * n_ + v] = 1;
      if (!directed_) adjacency[v * n_ + u] = 1;
    }
  }
  return Graph::from_matrix(n_, directed_, std::move(adjacency));
}

double graph_probability(const WeightedGraph& wg,
                         const GraphEnumerator& graphs, std::uint64_t mask) {
  if (wg.size() != graphs.node_count() ||
      wg.directed() != graphs.directed()) {
    throw ValidationError("graph_probability: enumerator and weighted graph differ");
  }
  double probability = 1.0;
  const auto& links = graphs.links();
  for (std::size_t l = 0; l < links.size(); ++l) {
    const double p = wg(links[l].first, links[l].second);
    probability *= ((mask >> l) & 1U) ? p : 1.0 - p;
  }
  return probability;
}

double exact_conditional_expectation(const WeightedGraph& wg, const Motif& m,
                                     const OracleOptions& options) {
  check_oracle_inputs(wg, m);
  const GraphEnumerator graphs(wg.size(), wg.directed(), options.max_links);
  std::vector<double> partials(chunk_count(graphs), 0.0);
  parallel_for(partials.size(), options.par, [&](std::size_t chunk) {
    CompensatedSum sum;
    for_chunk(graphs, chunk, [&](std::uint64_t mask) {
      const double probability = graph_probability(wg, graphs, mask);
      if (probability == 0.0) return;
      sum.add(probability *
              static_cast<double>(ordered_count(graphs.at(mask), m)));
    });
    partials[chunk] = sum.value();
  });
  CompensatedSum total;
  for (double p : partials) total.add(p);
  return total.value();
}

double ExactDistribution::total_probability() const {
  CompensatedSum sum;
  for (const auto& [value, probability] : support) sum.add(probability);
  return sum.value();
}

double ExactDistribution::mean() const {
  CompensatedSum sum;
  for (const auto& [value, probability] : support) {
    sum.add(static_cast<double>(value) * probability);
  }
  return sum.value();
}

double ExactDistribution::variance() const {
  const double mu = mean();
  CompensatedSum sum;
  for (const auto& [value, probability] : support) {
    const double dev = static_cast<double>(value) - mu;
    sum.add(dev * dev * probability);
  }
  return sum.value();
}

ExactDistribution exact_count_distribution(const WeightedGraph& wg,
                                           const Motif& m, bool set_based,
                                           const OracleOptions& options) {
  check_oracle_inputs(wg, m);
  const GraphEnumerator graphs(wg.size(), wg.directed(), options.max_links);
  using Masses = std::map<std::uint64_t, CompensatedSum>;
  std::vector<Masses> partials(chunk_count(graphs));
  parallel_for(partials.size(), options.par, [&](std::size_t chunk) {
    for_chunk(graphs, chunk, [&](std::uint64_t mask) {
      const double probability = graph_probability(wg, graphs, mask);
      if (probability == 0.0) return;
      const Graph g = graphs.at(mask);
      const std::uint64_t value = set_based ? set_count(g, m) : ordered_count(g, m);
      partials[chunk][value].add(probability);
    });
  });
  std::map<std::uint64_t, CompensatedSum> merged;
  for (const Masses& masses : partials) {
    for (const auto& [value, mass] : masses) merged[value].add(mass.value());
  }
  ExactDistribution distribution;
  for (const auto& [value, mass] : merged) {
    if (mass.value() > 0.0) distribution.support.emplace_back(value, mass.value());
  }
  return distribution;
}

std::optional<ConjectureCounterexample> conjecture_counterexample(
    const Graph& g, const Motif& m) {
  const std::uint64_t ordered = ordered_count(g, m);
  const std::uint64_t subsets = set_count(g, m);
  const std::uint64_t aut = automorphism_count(m);
  if (ordered == aut * subsets) return std::nullopt;
  return ConjectureCounterexample{g, ordered, subsets, aut};
}

ConjectureReport check_conjecture(const Motif& m, std::size_t trials,
                                  std::uint64_t seed,
                                  const ConjectureOptions& options) {
  ConjectureReport report;
  report.automorphisms = automorphism_count(m);
  const std::size_t k = m.arity();

  for (std::size_t n = k; n <= options.exhaustive_max_n; ++n) {
    const GraphEnumerator graphs(n, m.directed(), kHardMaxOracleLinks);
    for (std::uint64_t mask = 0; mask < graphs.size(); ++mask) {
      ++report.exhaustive_graphs;
      if (auto bad = conjecture_counterexample(graphs.at(mask), m)) {
        report.counterexample = std::move(bad);
        return report;
      }
    }
  }

  const std::size_t max_n = std::max(k, options.random_max_n);
  const std::uint64_t stream = rng::derive(seed, rng::kTrialStream);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t key = rng::derive(stream, trial);
    const std::size_t n =
        k + static_cast<std::size_t>(rng::uniform01(rng::derive(key, 0)) *
                                     static_cast<double>(max_n - k + 1));
    const double density = rng::uniform01(rng::derive(key, 1));
    const WeightedGraph model = WeightedGraph::uniform(n, m.directed(), density);
    ++report.random_graphs;
    if (auto bad = conjecture_counterexample(
            sample_graph(model, rng::derive(key, 2)), m)) {
      report.counterexample = std::move(bad);
      return report;
    }
  }
  return report;
}

}  // namespace motifx
