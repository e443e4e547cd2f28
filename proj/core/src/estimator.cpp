#include "motifx/estimator.hpp"

#include <cmath>
#include <string>

#include "motifx/error.hpp"
#include "motifx/rng.hpp"

namespace motifx {
namespace {

void check_decoder_motif(const Decoder& d, const Motif& m) {
  if (d.directed() != m.directed()) {
    throw ValidationError("decoder is " +
                          std::string(d.directed() ? "directed" : "undirected") +
                          " but motif is " +
                          (m.directed() ? "directed" : "undirected"));
  }
  if (d.node_count() < m.arity()) {
    throw ValidationError("decoder has " + std::to_string(d.node_count()) +
                          " nodes, fewer than motif arity " +
                          std::to_string(m.arity()));
  }
}

void check_prior(const Decoder& d, const PriorSpec& prior) {
  if (d.latent_dim() != 0 && prior.dim != d.latent_dim()) {
    throw ValidationError("prior dimension " + std::to_string(prior.dim) +
                          " does not match decoder latent dimension " +
                          std::to_string(d.latent_dim()));
  }
}

EstimateReport summarize(const std::vector<double>& values,
                         EstimateMethod method, std::uint64_t seed) {
  RunningMoments moments;
  for (double v : values) moments.add(v);
  return {moments.mean(), moments.std_error(), moments.count(), method, seed};
}

}  // namespace

std::string_view to_string(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::kConditional:
      return "conditional";
    case EstimateMethod::kNaive:
      return "naive";
  }
  return "unknown";
}

std::string_view to_string(SignificanceMode mode) {
  switch (mode) {
    case SignificanceMode::kConditionalSpread:
      return "conditional-spread";
    case SignificanceMode::kTotalVariance:
      return "total-variance";
  }
  return "unknown";
}

std::optional<SignificanceMode> parse_significance_mode(std::string_view text) {
  if (text == "conditional-spread") return SignificanceMode::kConditionalSpread;
  if (text == "total-variance") return SignificanceMode::kTotalVariance;
  return std::nullopt;
}

void RunningMoments::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

double RunningMoments::variance() const {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double RunningMoments::stddev() const { return std::sqrt(variance()); }

double RunningMoments::std_error() const {
  return count_ == 0 ? 0.0 : stddev() / std::sqrt(static_cast<double>(count_));
}

double conditional_expected_count(const Decoder& d, const LatentVector& z,
                                  const Motif& m, Parallelism par) {
  check_decoder_motif(d, m);
  return ordered_count(d.decode(z), m, par);
}

EstimateReport estimate_expected_count(const Decoder& d, const PriorSpec& prior,
                                       const Motif& m, std::size_t samples,
                                       Parallelism par) {
  if (samples == 0) {
    throw ValidationError("estimate_expected_count: samples must be >= 1");
  }
  check_prior(d, prior);
  const auto latents = sample_latent(prior, samples);
  return estimate_expected_count(d, latents, m, par, prior.seed);
}

EstimateReport estimate_expected_count(const Decoder& d,
                                       std::span<const LatentVector> latents,
                                       const Motif& m, Parallelism par,
                                       std::uint64_t seed) {
  if (latents.empty()) {
    throw ValidationError("estimate_expected_count: no latent samples");
  }
  check_decoder_motif(d, m);
  std::vector<double> values(latents.size());
  // One latent sample per task; the inner count stays serial so the
  // per-sample values never depend on the worker count.
  parallel_for(latents.size(), par, [&](std::size_t s) {
    values[s] = ordered_count(d.decode(latents[s]), m);
  });
  return summarize(values, EstimateMethod::kConditional, seed);
}

std::vector<double> naive_counts(const Decoder& d,
                                 std::span<const LatentVector> latents,
                                 const Motif& m, std::size_t graphs_per_z,
                                 std::uint64_t seed, Parallelism par) {
  if (latents.empty() || graphs_per_z == 0) {
    throw ValidationError(
        "naive_estimate: latent samples and graphs per latent must be >= 1");
  }
  check_decoder_motif(d, m);
  const std::uint64_t stream = rng::derive(seed, rng::kReplicaStream);
  std::vector<double> counts(latents.size() * graphs_per_z);
  for (std::size_t s = 0; s < latents.size(); ++s) {
    const WeightedGraph wg = d.decode(latents[s]);
    const std::uint64_t sample_key = rng::derive(stream, s);
    parallel_for(graphs_per_z, par, [&](std::size_t r) {
      const Graph g = sample_graph(wg, rng::derive(sample_key, r));
      counts[s * graphs_per_z + r] = static_cast<double>(ordered_count(g, m));
    });
  }
  return counts;
}

EstimateReport naive_estimate(const Decoder& d, const PriorSpec& prior,
                              const Motif& m, std::size_t z_samples,
                              std::size_t graphs_per_z, Parallelism par) {
  if (z_samples == 0) {
    throw ValidationError("naive_estimate: z_samples must be >= 1");
  }
  check_prior(d, prior);
  const auto latents = sample_latent(prior, z_samples);
  return naive_estimate(d, latents, m, graphs_per_z, prior.seed, par);
}

EstimateReport naive_estimate(const Decoder& d,
                              std::span<const LatentVector> latents,
                              const Motif& m, std::size_t graphs_per_z,
                              std::uint64_t seed, Parallelism par) {
  return summarize(naive_counts(d, latents, m, graphs_per_z, seed, par),
                   EstimateMethod::kNaive, seed);
}

SignificanceReport significance(const Graph& observed, const Decoder& d,
                                const PriorSpec& prior, const Motif& m,
                                SignificanceMode mode, std::size_t samples,
                                std::size_t graphs_per_z, Parallelism par) {
  if (samples == 0) {
    throw ValidationError("significance: samples must be >= 1");
  }
  check_prior(d, prior);
  const auto latents = sample_latent(prior, samples);
  return significance(observed, d, latents, m, mode, graphs_per_z, prior.seed,
                      par);
}

SignificanceReport significance(const Graph& observed, const Decoder& d,
                                std::span<const LatentVector> latents,
                                const Motif& m, SignificanceMode mode,
                                std::size_t graphs_per_z, std::uint64_t seed,
                                Parallelism par) {
  if (observed.size() != d.node_count() ||
      observed.directed() != d.directed()) {
    throw ValidationError(
        "significance: observed graph has " + std::to_string(observed.size()) +
        (observed.directed() ? " directed" : " undirected") +
        " nodes, decoder has " + std::to_string(d.node_count()) +
        (d.directed() ? " directed" : " undirected") + " nodes");
  }
  if (latents.empty()) {
    throw ValidationError("significance: no latent samples");
  }
  check_decoder_motif(d, m);

  std::vector<double> reference;
  if (mode == SignificanceMode::kConditionalSpread) {
    reference.resize(latents.size());
    parallel_for(latents.size(), par, [&](std::size_t s) {
      reference[s] = ordered_count(d.decode(latents[s]), m);
    });
  } else {
    reference = naive_counts(d, latents, m, graphs_per_z, seed, par);
  }
  RunningMoments moments;
  for (double v : reference) moments.add(v);

  SignificanceReport report;
  report.observed = static_cast<double>(ordered_count(observed, m, par));
  report.expected_mean = moments.mean();
  report.expected_std = moments.stddev();
  report.mode = mode;
  report.samples = reference.size();
  report.seed = seed;
  if (report.expected_std > 0.0) {
    report.score =
        (report.observed - report.expected_mean) / report.expected_std;
  }
  return report;
}

}  // namespace motifx
