#include "cli/commands.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "motifx/error.hpp"
#include "motifx/estimator.hpp"
#include "motifx/io.hpp"
#include "motifx/mixture.hpp"
#include "motifx/motif_engine.hpp"
#include "motifx/oracle.hpp"

#ifndef MOTIFX_VERSION
#define MOTIFX_VERSION "dev"
#endif

namespace motifx::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kVerifyTolerance = 1e-9;
constexpr std::uint64_t kDefaultSeed = 0;

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  usage error (bad command line)\n"
    "  2  input error (file missing, unreadable or malformed)\n"
    "  3  validation error (invariant violated, size or directedness mismatch)\n"
    "  4  size limit exceeded (arity or oracle link bound)\n"
    "  5  numerical flag (report written, but a check failed or the\n"
    "     significance score is undefined because the reference spread is 0)\n";

struct Options {
  std::string graph;
  std::string motif;
  std::string decoder;
  std::string latents;
  std::size_t samples = 100;
  std::size_t graphs_per_z = 0;
  std::uint64_t seed = kDefaultSeed;
  bool directed = false;
  std::string mode = "total-variance";
  std::string format = "json";
  unsigned threads = 1;
  std::size_t max_arity = kDefaultMaxArity;
  std::size_t max_oracle_links = kDefaultMaxOracleLinks;
  std::size_t trials = 200;
};

struct InputFile {
  std::string bytes;
  std::string digest;
};

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "fnv1a64:%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

InputFile read_input(const std::string& path) {
  InputFile file;
  file.bytes = read_file(path);
  file.digest = fnv1a64(file.bytes);
  return file;
}

Json provenance(const char* command, std::optional<std::uint64_t> seed,
                Json inputs) {
  Json p;
  p["command"] = command;
  p["version"] = MOTIFX_VERSION;
  if (seed) p["seed"] = *seed;
  p["inputs"] = std::move(inputs);
  return p;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

void flatten(const Json& value, const std::string& prefix,
             std::vector<std::string>& header, std::vector<std::string>& row) {
  for (const auto& [key, item] : value.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (item.is_object()) {
      flatten(item, name, header, row);
      continue;
    }
    header.push_back(name);
    row.push_back(item.is_string() ? item.get<std::string>() : item.dump());
  }
}

void emit(std::ostream& out, const Json& report, const std::string& format) {
  if (format == "csv") {
    std::vector<std::string> header;
    std::vector<std::string> row;
    flatten(report, "", header, row);
    for (std::size_t i = 0; i < header.size(); ++i) {
      out << (i ? "," : "") << csv_field(header[i]);
    }
    out << '\n';
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_field(row[i]);
    }
    out << '\n';
    return;
  }
  out << report.dump() << '\n';
}

double falling_factorial(std::size_t n, std::size_t k) {
  double total = 1.0;
  for (std::size_t i = 0; i < k && i < n; ++i) total *= static_cast<double>(n - i);
  return k > n ? 0.0 : total;
}

void note_arity_cost(const Options& opt, std::size_t n, const Motif& m,
                     std::ostream& err) {
  if (opt.max_arity <= kDefaultMaxArity) return;
  char buffer[160];
  std::snprintf(buffer, sizeof buffer,
                "note: --max-arity %zu is above the default %zu; arity %zu on "
                "%zu nodes enumerates up to %.3g ordered tuples\n",
                opt.max_arity, kDefaultMaxArity, m.arity(), n,
                falling_factorial(n, m.arity()));
  err << buffer;
}

void note_oracle_cost(const Options& opt, std::size_t n, bool directed,
                      const Motif& m, std::ostream& err) {
  if (opt.max_oracle_links <= kDefaultMaxOracleLinks) return;
  const std::size_t links = independent_link_count(n, directed);
  char buffer[200];
  std::snprintf(buffer, sizeof buffer,
                "note: --max-oracle-links %zu is above the default %zu; L = %zu "
                "means 2^%zu = %.3g graphs x %.3g tuples each\n",
                opt.max_oracle_links, kDefaultMaxOracleLinks, links, links,
                std::ldexp(1.0, static_cast<int>(links)),
                falling_factorial(n, m.arity()));
  err << buffer;
}

void check_directedness(bool graph_directed, const Motif& m) {
  if (graph_directed != m.directed()) {
    throw ValidationError(
        std::string("graph was loaded as ") +
        (graph_directed ? "directed" : "undirected") + " but the motif is " +
        (m.directed() ? "directed (pass --directed)" : "undirected"));
  }
}

LabeledGraph load_observed(const InputFile& file, const Options& opt,
                           std::ostream& err) {
  LabeledGraph lg = parse_edge_list(file.bytes, opt.directed);
  for (const auto& warning : lg.warnings) err << "warning: " << warning << '\n';
  return lg;
}

std::vector<LatentVector> latent_samples(const Options& opt, const Decoder& d,
                                         std::size_t count, Json& inputs) {
  if (!opt.latents.empty()) {
    const InputFile file = read_input(opt.latents);
    inputs["latents"] = file.digest;
    return parse_latents(file.bytes);
  }
  inputs["latents"] = "prior:standard_normal";
  return sample_latent(PriorSpec::for_decoder(d, opt.seed), count);
}

Json estimate_json(const EstimateReport& r) {
  Json j;
  j["mean"] = r.mean;
  j["std_error"] = r.std_error;
  j["samples"] = r.samples;
  j["method"] = std::string(to_string(r.method));
  return j;
}

int cmd_count(const Options& opt, std::ostream& out, std::ostream& err) {
  const InputFile graph_file = read_input(opt.graph);
  const InputFile motif_file = read_input(opt.motif);
  const Motif motif = parse_motif(motif_file.bytes, opt.max_arity);
  const LabeledGraph lg = load_observed(graph_file, opt, err);
  check_directedness(lg.graph.directed(), motif);
  note_arity_cost(opt, lg.graph.size(), motif, err);

  const Parallelism par{opt.threads};
  const std::uint64_t ordered = ordered_count(lg.graph, motif, par);
  const std::uint64_t subsets = set_count(lg.graph, motif, par);
  const std::uint64_t aut = automorphism_count(motif);

  Json report;
  report["ordered"] = ordered;
  report["set"] = subsets;
  report["aut"] = aut;
  report["identity_holds"] = ordered == aut * subsets;
  report["nodes"] = lg.graph.size();
  report["edges"] = lg.graph.edge_count();
  report["directed"] = lg.graph.directed();
  report["provenance"] =
      provenance("count", std::nullopt,
                 {{"graph", graph_file.digest}, {"motif", motif_file.digest}});
  emit(out, report, opt.format);
  return kOk;
}

int cmd_expected(const Options& opt, std::ostream& out, std::ostream&) {
  const InputFile decoder_file = read_input(opt.decoder);
  const InputFile motif_file = read_input(opt.motif);
  const auto decoder = parse_decoder(decoder_file.bytes);
  const Motif motif = parse_motif(motif_file.bytes, opt.max_arity);
  Json inputs = {{"decoder", decoder_file.digest}, {"motif", motif_file.digest}};
  const auto latents = latent_samples(opt, *decoder, opt.samples, inputs);

  const Parallelism par{opt.threads};
  const EstimateReport conditional =
      estimate_expected_count(*decoder, latents, motif, par, opt.seed);

  Json report = estimate_json(conditional);
  report["decoder"] = std::string(decoder->kind());
  report["nodes"] = decoder->node_count();
  if (opt.graphs_per_z > 0) {
    Json naive = estimate_json(
        naive_estimate(*decoder, latents, motif, opt.graphs_per_z, opt.seed, par));
    naive["graphs_per_z"] = opt.graphs_per_z;
    report["naive"] = std::move(naive);
  }
  report["provenance"] = provenance("expected", opt.seed, std::move(inputs));
  emit(out, report, opt.format);
  return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const InputFile decoder_file = read_input(opt.decoder);
  const InputFile motif_file = read_input(opt.motif);
  const auto decoder = parse_decoder(decoder_file.bytes);
  const Motif motif = parse_motif(motif_file.bytes, opt.max_arity);
  Json inputs = {{"decoder", decoder_file.digest}, {"motif", motif_file.digest}};
  const auto latents = latent_samples(opt, *decoder, 1, inputs);

  const WeightedGraph wg = decoder->decode(latents.front());
  check_directedness(wg.directed(), motif);
  note_oracle_cost(opt, wg.size(), wg.directed(), motif, err);
  const OracleOptions oracle_options{opt.max_oracle_links, Parallelism{opt.threads}};
  // Fails fast with the computed L before any counting.
  const GraphEnumerator bound(wg.size(), wg.directed(), opt.max_oracle_links);

  const double fast = ordered_count(wg, motif, Parallelism{opt.threads});
  const double exact = exact_conditional_expectation(wg, motif, oracle_options);
  const double diff = std::abs(fast - exact);
  const bool expectation_pass = diff <= kVerifyTolerance;

  const std::uint64_t aut = automorphism_count(motif);
  const double expected_set =
      exact_count_distribution(wg, motif, true, oracle_options).mean();
  const double scaled = static_cast<double>(aut) * expected_set;
  const double set_diff = std::abs(scaled - exact);
  const ConjectureReport binary = check_conjecture(motif, opt.trials, opt.seed);
  const bool conjecture_pass = set_diff <= kVerifyTolerance && binary.holds();

  Json conjecture;
  conjecture["aut"] = aut;
  conjecture["expected_set"] = expected_set;
  conjecture["aut_times_expected_set"] = scaled;
  conjecture["abs_diff"] = set_diff;
  conjecture["binary_graphs_checked"] =
      binary.exhaustive_graphs + binary.random_graphs;
  if (binary.counterexample) {
    const auto& c = *binary.counterexample;
    conjecture["counterexample"] = {
        {"edge_list", to_edge_list(c.graph, default_labels(c.graph.size()))},
        {"ordered", c.ordered},
        {"set", c.set},
        {"aut", c.automorphisms}};
  } else {
    conjecture["counterexample"] = nullptr;
  }
  conjecture["pass"] = conjecture_pass;

  Json report;
  report["fast_path"] = fast;
  report["oracle"] = exact;
  report["abs_diff"] = diff;
  report["tolerance"] = kVerifyTolerance;
  report["pass"] = expectation_pass;
  report["nodes"] = wg.size();
  report["links"] = bound.link_count();
  report["conjecture"] = std::move(conjecture);
  report["provenance"] = provenance("verify", opt.seed, std::move(inputs));
  emit(out, report, opt.format);
  return expectation_pass && conjecture_pass ? kOk : kNumericalFlag;
}

int cmd_significance(const Options& opt, std::ostream& out, std::ostream& err) {
  const InputFile graph_file = read_input(opt.graph);
  const InputFile decoder_file = read_input(opt.decoder);
  const InputFile motif_file = read_input(opt.motif);
  const auto decoder = parse_decoder(decoder_file.bytes);
  const Motif motif = parse_motif(motif_file.bytes, opt.max_arity);
  const LabeledGraph lg = load_observed(graph_file, opt, err);
  check_directedness(lg.graph.directed(), motif);
  const SignificanceMode mode = *parse_significance_mode(opt.mode);
  Json inputs = {{"graph", graph_file.digest},
                 {"decoder", decoder_file.digest},
                 {"motif", motif_file.digest}};
  const auto latents = latent_samples(opt, *decoder, opt.samples, inputs);
  const std::size_t graphs_per_z = std::max<std::size_t>(opt.graphs_per_z, 1);

  const SignificanceReport r =
      significance(lg.graph, *decoder, latents, motif, mode, graphs_per_z,
                   opt.seed, Parallelism{opt.threads});

  Json report;
  report["observed"] = r.observed;
  report["expected_mean"] = r.expected_mean;
  report["expected_std"] = r.expected_std;
  report["score"] = r.score ? Json(*r.score) : Json(nullptr);
  report["score_defined"] = r.score.has_value();
  report["mode"] = std::string(to_string(r.mode));
  report["samples"] = r.samples;
  report["latent_samples"] = latents.size();
  if (mode == SignificanceMode::kTotalVariance) report["graphs_per_z"] = graphs_per_z;
  report["provenance"] = provenance("significance", opt.seed, std::move(inputs));
  emit(out, report, opt.format);
  if (!r.score) {
    err << "flag: reference spread is zero, score is undefined\n";
    return kNumericalFlag;
  }
  return kOk;
}

int cmd_aut(const Options& opt, std::ostream& out, std::ostream&) {
  const InputFile motif_file = read_input(opt.motif);
  const Motif motif = parse_motif(motif_file.bytes, opt.max_arity);
  const auto perms = automorphisms(motif);
  Json report;
  report["aut"] = perms.size();
  report["k"] = motif.arity();
  report["directed"] = motif.directed();
  Json list = Json::array();
  for (const auto& p : perms) list.push_back(p);
  report["automorphisms"] = std::move(list);
  report["provenance"] =
      provenance("aut", std::nullopt, {{"motif", motif_file.digest}});
  emit(out, report, opt.format);
  return kOk;
}

void add_format(CLI::App* sub, Options& opt) {
  sub->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--max-arity", opt.max_arity,
                  "Largest accepted motif arity (cost grows as n^k)")
      ->check(CLI::Range(2, 12))
      ->capture_default_str();
}

void add_threads(CLI::App* sub, Options& opt) {
  sub->add_option("--threads", opt.threads,
                  "Worker threads; results do not depend on this value")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
}

void add_sampling(CLI::App* sub, Options& opt) {
  sub->add_option("--latents", opt.latents,
                  "Latent samples file (one vector per line); overrides prior sampling");
  sub->add_option("--seed", opt.seed, "Seed for all sampling")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options opt;
  CLI::App app{"motifx: exact and Monte Carlo expected motif counts under "
               "mixture graph models with conditionally independent links"};
  app.set_version_flag("--version", MOTIFX_VERSION);
  app.footer(kExitCodeHelp);
  app.require_subcommand(1, 1);

  auto* count = app.add_subcommand(
      "count", "Ordered, set and automorphism counts of a motif in a graph");
  count->add_option("--graph", opt.graph, "Edge-list file")->required();
  count->add_option("--motif", opt.motif, "Motif JSON file")->required();
  count->add_flag("--directed", opt.directed, "Read the edge list as directed");
  add_threads(count, opt);
  add_format(count, opt);

  auto* expected = app.add_subcommand(
      "expected", "Expected ordered motif count: mean over latent samples of "
                  "the exact conditional expectation");
  expected->add_option("--decoder", opt.decoder, "Decoder JSON file")->required();
  expected->add_option("--motif", opt.motif, "Motif JSON file")->required();
  expected->add_option("--samples", opt.samples, "Latent samples drawn from the prior")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  expected->add_option("--graphs-per-z", opt.graphs_per_z,
                       "Also run the graph-sampling estimator with this many "
                       "graphs per latent sample (0 = off)")
      ->capture_default_str();
  add_sampling(expected, opt);
  add_threads(expected, opt);
  add_format(expected, opt);

  auto* verify = app.add_subcommand(
      "verify", "Compare the expected-matrix count with exhaustive enumeration "
                "and check the automorphism identity");
  verify->add_option("--decoder", opt.decoder,
                     "Decoder JSON file (a table decoder is a weighted graph)")
      ->required();
  verify->add_option("--motif", opt.motif, "Motif JSON file")->required();
  verify->add_option("--trials", opt.trials,
                     "Random binary graphs for the automorphism identity")
      ->capture_default_str();
  verify->add_option("--max-oracle-links", opt.max_oracle_links,
                     "Largest number of independent links to enumerate")
      ->check(CLI::Range(std::size_t{1}, kHardMaxOracleLinks))
      ->capture_default_str();
  add_sampling(verify, opt);
  add_threads(verify, opt);
  add_format(verify, opt);

  auto* signif = app.add_subcommand(
      "significance", "Standardized score of an observed motif count");
  signif->add_option("--graph", opt.graph, "Observed edge-list file")->required();
  signif->add_option("--decoder", opt.decoder, "Decoder JSON file")->required();
  signif->add_option("--motif", opt.motif, "Motif JSON file")->required();
  signif->add_flag("--directed", opt.directed, "Read the edge list as directed");
  signif->add_option("--mode", opt.mode, "Reference spread")
      ->check(CLI::IsMember({"conditional-spread", "total-variance"}))
      ->capture_default_str();
  signif->add_option("--samples", opt.samples, "Latent samples drawn from the prior")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  signif->add_option("--graphs-per-z", opt.graphs_per_z,
                     "Graphs per latent sample in total-variance mode (min 1)")
      ->capture_default_str();
  add_sampling(signif, opt);
  add_threads(signif, opt);
  add_format(signif, opt);

  auto* aut = app.add_subcommand("aut", "Enumerate automorphisms of a motif");
  aut->add_option("--motif", opt.motif, "Motif JSON file")->required();
  add_format(aut, opt);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*count) return cmd_count(opt, out, err);
    if (*expected) return cmd_expected(opt, out, err);
    if (*verify) return cmd_verify(opt, out, err);
    if (*signif) return cmd_significance(opt, out, err);
    if (*aut) return cmd_aut(opt, out, err);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << '\n';
    return kSizeLimit;
  }
  return kUsage;
}

}  // namespace motifx::cli
