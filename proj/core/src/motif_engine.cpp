#include "motifx/motif_engine.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "motifx/error.hpp"

namespace motifx {
namespace {

template <typename G>
void check_compatible(const G& g, const Motif& m, const char* op) {
  if (g.directed() != m.directed()) {
    throw ValidationError(std::string(op) + ": graph is " +
                          (g.directed() ? "directed" : "undirected") +
                          " but motif is " +
                          (m.directed() ? "directed" : "undirected"));
  }
  if (g.size() < m.arity()) {
    throw ValidationError(std::string(op) + ": graph has " +
                          std::to_string(g.size()) +
                          " nodes, fewer than motif arity " +
                          std::to_string(m.arity()));
  }
}

void check_tuple(const Motif& m, const NodeTuple& t, std::size_t n) {
  if (t.size() != m.arity()) {
    throw ValidationError("motif_indicator: tuple has " +
                          std::to_string(t.size()) + " nodes, motif arity is " +
                          std::to_string(m.arity()));
  }
  for (NodeIndex v : t.nodes()) {
    if (v >= n) {
      throw ValidationError("motif_indicator: tuple node " + std::to_string(v) +
                            " out of range");
    }
  }
}

// R^M * (1 - R)^(1 - M) for a single link.
inline double link_factor(double r, bool required) {
  return required ? r : 1.0 - r;
}

// Depth-first enumeration of injective tuples that start at `first`.
class BinaryTupleCounter {
 public:
  BinaryTupleCounter(const Graph& g, const Motif& m)
      : g_(g), m_(m), tuple_(m.arity()), used_(g.size(), 0) {}

  std::uint64_t count_from(NodeIndex first) {
    tuple_[0] = first;
    used_[first] = 1;
    const std::uint64_t total = extend(1);
    used_[first] = 0;
    return total;
  }

 private:
  bool consistent(std::size_t pos, NodeIndex v) const {
    for (std::size_t i = 0; i < pos; ++i) {
      const NodeIndex u = tuple_[i];
      if (g_(u, v) != m_(i, pos)) return false;
      if (m_.directed() && g_(v, u) != m_(pos, i)) return false;
    }
    return true;
  }

  std::uint64_t extend(std::size_t pos) {
    if (pos == m_.arity()) return 1;
    std::uint64_t total = 0;
    for (NodeIndex v = 0; v < g_.size(); ++v) {
      if (used_[v] || !consistent(pos, v)) continue;
      tuple_[pos] = v;
      used_[v] = 1;
      total += extend(pos + 1);
      used_[v] = 0;
    }
    return total;
  }

  const Graph& g_;
  const Motif& m_;
  std::vector<NodeIndex> tuple_;
  std::vector<std::uint8_t> used_;
};

class WeightedTupleSummer {
 public:
  WeightedTupleSummer(const WeightedGraph& g, const Motif& m)
      : g_(g), m_(m), tuple_(m.arity()), used_(g.size(), 0) {}

  double sum_from(NodeIndex first) {
    CompensatedSum sum;
    tuple_[0] = first;
    used_[first] = 1;
    extend(1, 1.0, sum);
    used_[first] = 0;
    return sum.value();
  }

 private:
  double factor(std::size_t pos, NodeIndex v) const {
    double f = 1.0;
    for (std::size_t i = 0; i < pos; ++i) {
      const NodeIndex u = tuple_[i];
      f *= link_factor(g_(u, v), m_.requires_link(i, pos));
      if (m_.directed()) f *= link_factor(g_(v, u), m_.requires_link(pos, i));
    }
    return f;
  }

  void extend(std::size_t pos, double partial, CompensatedSum& sum) {
    if (pos == m_.arity()) {
      sum.add(partial);
      return;
    }
    for (NodeIndex v = 0; v < g_.size(); ++v) {
      if (used_[v]) continue;
      const double next = partial * factor(pos, v);
      if (next == 0.0) continue;
      tuple_[pos] = v;
      used_[v] = 1;
      extend(pos + 1, next, sum);
      used_[v] = 0;
    }
  }

  const WeightedGraph& g_;
  const Motif& m_;
  std::vector<NodeIndex> tuple_;
  std::vector<std::uint8_t> used_;
};

template <typename G>
double indicator_product(const G& g, const Motif& m, const NodeTuple& t) {
  double product = 1.0;
  const std::size_t k = m.arity();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = m.directed() ? 0 : i + 1; j < k; ++j) {
      if (i == j) continue;
      product *= link_factor(static_cast<double>(g(t[i], t[j])),
                             m.requires_link(i, j));
    }
  }
  return product;
}

bool ordering_matches(const Graph& g, const Motif& m,
                      std::span<const NodeIndex> order) {
  const std::size_t k = m.arity();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = m.directed() ? 0 : i + 1; j < k; ++j) {
      if (i != j && g(order[i], order[j]) != m(i, j)) return false;
    }
  }
  return true;
}

bool subset_matches(const Graph& g, const Motif& m,
                    std::vector<NodeIndex> order) {
  // `order` arrives sorted, so next_permutation walks all k! orderings.
  do {
    if (ordering_matches(g, m, order)) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

// Sets whose smallest node is `first`, in lexicographic order.
std::uint64_t count_subsets_from(const Graph& g, const Motif& m,
                                 NodeIndex first) {
  const std::size_t n = g.size();
  const std::size_t k = m.arity();
  if (first + k > n) return 0;
  std::vector<NodeIndex> subset(k);
  subset[0] = first;
  std::iota(subset.begin() + 1, subset.end(), first + 1);
  std::uint64_t total = 0;
  while (true) {
    if (subset_matches(g, m, subset)) ++total;
    // Advance positions 1..k-1 to the next combination.
    std::size_t pos = k - 1;
    while (pos >= 1 && subset[pos] == n - k + pos) --pos;
    if (pos == 0) break;
    ++subset[pos];
    for (std::size_t i = pos + 1; i < k; ++i) subset[i] = subset[i - 1] + 1;
  }
  return total;
}

template <typename Value, typename Accumulator, typename G>
Value trace_of_cube(const G& g, Parallelism par) {
  if (g.directed()) {
    throw ValidationError("triangle_count_trace requires an undirected graph");
  }
  const std::size_t n = g.size();
  const auto a = g.matrix();
  std::vector<Value> row_partials(n, Value{0});
  parallel_for(n, par, [&](std::size_t i) {
    // (A^2) row i, then its dot product with row i of A (= column i).
    std::vector<Value> square_row(n, Value{0});
    for (std::size_t mid = 0; mid < n; ++mid) {
      const Value a_i_mid = static_cast<Value>(a[i * n + mid]);
      if (a_i_mid == Value{0}) continue;
      const auto* row = a.data() + mid * n;
      for (std::size_t j = 0; j < n; ++j) {
        square_row[j] += a_i_mid * static_cast<Value>(row[j]);
      }
    }
    Value partial{0};
    const auto* row_i = a.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      partial += square_row[j] * static_cast<Value>(row_i[j]);
    }
    row_partials[i] = partial;
  });
  Accumulator total;
  for (const Value& v : row_partials) total.add(v);
  return total.value();
}

struct IntegerSum {
  std::uint64_t sum = 0;
  void add(std::uint64_t x) { sum += x; }
  std::uint64_t value() const { return sum; }
};

}  // namespace

double motif_indicator(const Graph& g, const Motif& m, const NodeTuple& t) {
  check_compatible(g, m, "motif_indicator");
  check_tuple(m, t, g.size());
  return indicator_product(g, m, t);
}

double motif_indicator(const WeightedGraph& g, const Motif& m,
                       const NodeTuple& t) {
  check_compatible(g, m, "motif_indicator");
  check_tuple(m, t, g.size());
  return indicator_product(g, m, t);
}

std::uint64_t ordered_count(const Graph& g, const Motif& m, Parallelism par) {
  check_compatible(g, m, "ordered_count");
  std::vector<std::uint64_t> partials(g.size(), 0);
  parallel_for(g.size(), par, [&](std::size_t first) {
    BinaryTupleCounter counter(g, m);
    partials[first] = counter.count_from(first);
  });
  return std::accumulate(partials.begin(), partials.end(), std::uint64_t{0});
}

double ordered_count(const WeightedGraph& g, const Motif& m, Parallelism par) {
  check_compatible(g, m, "ordered_count");
  std::vector<double> partials(g.size(), 0.0);
  parallel_for(g.size(), par, [&](std::size_t first) {
    WeightedTupleSummer summer(g, m);
    partials[first] = summer.sum_from(first);
  });
  CompensatedSum total;
  for (double p : partials) total.add(p);
  return total.value();
}

std::uint64_t set_count(const Graph& g, const Motif& m, Parallelism par) {
  check_compatible(g, m, "set_count");
  std::vector<std::uint64_t> partials(g.size(), 0);
  parallel_for(g.size(), par, [&](std::size_t first) {
    partials[first] = count_subsets_from(g, m, first);
  });
  return std::accumulate(partials.begin(), partials.end(), std::uint64_t{0});
}

std::vector<std::vector<std::size_t>> automorphisms(const Motif& m) {
  const std::size_t k = m.arity();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> found;
  do {
    bool preserves = true;
    for (std::size_t i = 0; i < k && preserves; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (m(i, j) != m(perm[i], perm[j])) {
          preserves = false;
          break;
        }
      }
    }
    if (preserves) found.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

std::uint64_t automorphism_count(const Motif& m) {
  return automorphisms(m).size();
}

double triangle_count_trace(const WeightedGraph& g, Parallelism par) {
  return trace_of_cube<double, CompensatedSum>(g, par);
}

std::uint64_t triangle_count_trace(const Graph& g, Parallelism par) {
  return trace_of_cube<std::uint64_t, IntegerSum>(g, par);
}

std::optional<bool> MotifCountResult::identity_holds() const {
  if (!set_count || !automorphisms) return std::nullopt;
  return ordered_count ==
         static_cast<double>(*automorphisms) * static_cast<double>(*set_count);
}

MotifCountResult count_motif(const Graph& g, const Motif& m, Parallelism par) {
  MotifCountResult result;
  result.ordered_count = static_cast<double>(ordered_count(g, m, par));
  result.set_count = set_count(g, m, par);
  result.automorphisms = automorphism_count(m);
  return result;
}

}  // namespace motifx
