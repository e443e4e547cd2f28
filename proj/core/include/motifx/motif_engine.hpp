#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "motifx/graph.hpp"
#include "motifx/parallel.hpp"

namespace motifx {

// Factor convention shared by every routine below and by the likelihood
// in mixture.hpp: one factor per independent link. Directed motifs take
// all ordered pairs i != j; undirected motifs take pairs i < j only, so
// a symmetric link is never squared. Only injective tuples are counted.

/// Product of link factors R^M * (1 - R)^(1 - M) over the tuple's pairs.
/// Exactly 0 or 1 on a binary graph.
double motif_indicator(const Graph& g, const Motif& m, const NodeTuple& t);
double motif_indicator(const WeightedGraph& g, const Motif& m,
                       const NodeTuple& t);

/// Sum of motif_indicator over all injective k-tuples.
///
/// Tuples are enumerated depth-first in lexicographic order with the work
/// partitioned by the first node; partial sums are Neumaier-compensated
/// and combined in first-node order, so the weighted result is
/// bit-identical for every thread count. Subtrees whose partial product
/// is exactly zero are skipped (they contribute +0.0).
std::uint64_t ordered_count(const Graph& g, const Motif& m,
                            Parallelism par = {});
double ordered_count(const WeightedGraph& g, const Motif& m,
                     Parallelism par = {});

/// Number of k-subsets admitting at least one matching ordering.
/// Each subset tries its k! orderings and stops at the first match.
std::uint64_t set_count(const Graph& g, const Motif& m, Parallelism par = {});

/// Index permutations pi with M[i][j] == M[pi(i)][pi(j)] for all i, j,
/// in lexicographic order. Always contains the identity.
std::vector<std::vector<std::size_t>> automorphisms(const Motif& m);
std::uint64_t automorphism_count(const Motif& m);

/// sum_i (A^3)[i][i] for an undirected graph with zero diagonal. Rows are
/// processed independently, so the cost is O(n^3) time and O(n) scratch
/// per worker.
double triangle_count_trace(const WeightedGraph& g, Parallelism par = {});
std::uint64_t triangle_count_trace(const Graph& g, Parallelism par = {});

struct MotifCountResult {
  double ordered_count = 0.0;
  std::optional<std::uint64_t> set_count;
  std::optional<std::uint64_t> automorphisms;

  /// ordered == aut * set. Empty unless both optional fields are present.
  std::optional<bool> identity_holds() const;
};

/// Ordered, set and automorphism counts of one binary instance.
MotifCountResult count_motif(const Graph& g, const Motif& m,
                             Parallelism par = {});

}  // namespace motifx
