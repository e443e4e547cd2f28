#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "motifx/graph.hpp"
#include "motifx/mixture.hpp"
#include "motifx/motif_engine.hpp"
#include "motifx/parallel.hpp"

namespace motifx {

enum class EstimateMethod {
  kConditional,  // exact E[count | z] per latent sample, averaged over z
  kNaive,        // sampled graphs, binary counts averaged
};

std::string_view to_string(EstimateMethod method);

struct EstimateReport {
  double mean = 0.0;
  /// Sample standard deviation (n - 1) divided by sqrt(samples); 0 when
  /// samples == 1 or all values agree.
  double std_error = 0.0;
  std::size_t samples = 0;
  EstimateMethod method = EstimateMethod::kConditional;
  std::uint64_t seed = 0;
};

/// Welford accumulator; adding a constant stream leaves the variance at
/// exactly zero.
class RunningMoments {
 public:
  void add(double x);
  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two values.
  double variance() const;
  double stddev() const;
  double std_error() const;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Exact E[count | z] = ordered_count(decode(z), m). No sampling.
double conditional_expected_count(const Decoder& d, const LatentVector& z,
                                  const Motif& m, Parallelism par = {});

/// Averages conditional_expected_count over latent samples drawn from the
/// prior (or supplied externally). Throws ValidationError when samples == 0
/// or when the prior dimension disagrees with a z-dependent decoder.
EstimateReport estimate_expected_count(const Decoder& d, const PriorSpec& prior,
                                       const Motif& m, std::size_t samples,
                                       Parallelism par = {});
EstimateReport estimate_expected_count(const Decoder& d,
                                       std::span<const LatentVector> latents,
                                       const Motif& m, Parallelism par = {},
                                       std::uint64_t seed = 0);

/// Direct Monte Carlo: graphs_per_z binary graphs per latent sample. Graph
/// (s, r) is sampled with seed derive(derive(derive(seed, kReplicaStream),
/// s), r). Returns the per-graph counts in (s, r) order.
std::vector<double> naive_counts(const Decoder& d,
                                 std::span<const LatentVector> latents,
                                 const Motif& m, std::size_t graphs_per_z,
                                 std::uint64_t seed, Parallelism par = {});
EstimateReport naive_estimate(const Decoder& d, const PriorSpec& prior,
                              const Motif& m, std::size_t z_samples,
                              std::size_t graphs_per_z, Parallelism par = {});
EstimateReport naive_estimate(const Decoder& d,
                              std::span<const LatentVector> latents,
                              const Motif& m, std::size_t graphs_per_z,
                              std::uint64_t seed, Parallelism par = {});

enum class SignificanceMode {
  /// Spread of E[count | z] across latent samples. Ignores Var(count | z),
  /// so it understates the model variance.
  kConditionalSpread,
  /// Spread of binary counts over sampled graphs: the full model variance.
  kTotalVariance,
};

std::string_view to_string(SignificanceMode mode);
/// Accepts "conditional-spread" and "total-variance".
std::optional<SignificanceMode> parse_significance_mode(std::string_view text);

struct SignificanceReport {
  double observed = 0.0;
  double expected_mean = 0.0;
  /// Standard deviation of the reference values (not a standard error).
  double expected_std = 0.0;
  /// (observed - expected_mean) / expected_std; empty when expected_std == 0.
  std::optional<double> score;
  SignificanceMode mode = SignificanceMode::kConditionalSpread;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Scores the observed ordered count against the model. `samples` is the
/// number of latent samples; total-variance mode draws graphs_per_z graphs
/// for each. Throws ValidationError if the observed graph's size or
/// directedness differs from the decoder's.
SignificanceReport significance(const Graph& observed, const Decoder& d,
                                const PriorSpec& prior, const Motif& m,
                                SignificanceMode mode, std::size_t samples,
                                std::size_t graphs_per_z = 1,
                                Parallelism par = {});
SignificanceReport significance(const Graph& observed, const Decoder& d,
                                std::span<const LatentVector> latents,
                                const Motif& m, SignificanceMode mode,
                                std::size_t graphs_per_z, std::uint64_t seed,
                                Parallelism par = {});

}  // namespace motifx
