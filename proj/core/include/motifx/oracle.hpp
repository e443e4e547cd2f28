#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "motifx/graph.hpp"
#include "motifx/parallel.hpp"

namespace motifx {

// Exhaustive ground truth over all 2^L graphs on L independent links.
// Exponential by construction; every entry point checks L against a limit.

inline constexpr std::size_t kDefaultMaxOracleLinks = 20;
inline constexpr std::size_t kHardMaxOracleLinks = 30;

/// n(n-1) when directed, n(n-1)/2 when undirected.
std::size_t independent_link_count(std::size_t n, bool directed);

struct OracleOptions {
  std::size_t max_links = kDefaultMaxOracleLinks;
  Parallelism par = {};
};

/// All graphs on n nodes, indexed by link bitmask: bit l of the mask is
/// link l of independent_links(n, directed).
class GraphEnumerator {
 public:
  /// Throws SizeLimitError (message includes L) when L > max_links or
  /// L > kHardMaxOracleLinks.
  GraphEnumerator(std::size_t n, bool directed,
                  std::size_t max_links = kDefaultMaxOracleLinks);

  std::size_t node_count() const { return n_; }
  bool directed() const { return directed_; }
  std::size_t link_count() const { return links_.size(); }
  std::uint64_t size() const { return std::uint64_t{1} << links_.size(); }
  const std::vector<Edge>& links() const { return links_; }

  Graph at(std::uint64_t mask) const;

  /// Visits masks 0 .. size()-1 in order.
  template <typename Visitor>
  void for_each(Visitor&& visit) const {
    for (std::uint64_t mask = 0; mask < size(); ++mask) visit(mask, at(mask));
  }

 private:
  std::size_t n_;
  bool directed_;
  std::vector<Edge> links_;
};

/// P(G | wg) as a product of per-link factors.
double graph_probability(const WeightedGraph& wg,
                         const GraphEnumerator& graphs, std::uint64_t mask);

/// sum_G P(G | wg) * ordered_count(G, m).
double exact_conditional_expectation(const WeightedGraph& wg, const Motif& m,
                                     const OracleOptions& options = {});

struct ExactDistribution {
  /// (count value, probability), ascending by count, zero-mass values
  /// omitted.
  std::vector<std::pair<std::uint64_t, double>> support;

  double total_probability() const;
  double mean() const;
  double variance() const;
};

/// Exact law of ordered_count (or set_count when set_based) under wg.
ExactDistribution exact_count_distribution(const WeightedGraph& wg,
                                           const Motif& m, bool set_based,
                                           const OracleOptions& options = {});

struct ConjectureCounterexample {
  Graph graph;
  std::uint64_t ordered = 0;
  std::uint64_t set = 0;
  std::uint64_t automorphisms = 0;
};

struct ConjectureReport {
  std::uint64_t automorphisms = 0;
  std::uint64_t exhaustive_graphs = 0;
  std::uint64_t random_graphs = 0;
  std::optional<ConjectureCounterexample> counterexample;

  bool holds() const { return !counterexample.has_value(); }
};

struct ConjectureOptions {
  /// Every graph with arity <= n <= exhaustive_max_n is checked.
  std::size_t exhaustive_max_n = 4;
  /// Random graphs use n uniform in [arity, random_max_n] and a per-trial
  /// edge density uniform in [0, 1].
  std::size_t random_max_n = 7;
};

/// Tests ordered_count == automorphism_count * set_count on binary graphs
/// and stops at the first counterexample.
ConjectureReport check_conjecture(const Motif& m, std::size_t trials,
                                  std::uint64_t seed,
                                  const ConjectureOptions& options = {});

/// Checks one instance.
std::optional<ConjectureCounterexample> conjecture_counterexample(
    const Graph& g, const Motif& m);

}  // namespace motifx
