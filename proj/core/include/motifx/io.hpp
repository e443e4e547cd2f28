#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "motifx/graph.hpp"
#include "motifx/mixture.hpp"

namespace motifx {

/// A graph together with the external labels of its nodes; labels[i] names
/// node i.
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;
  /// Non-fatal notices such as duplicate edges.
  std::vector<std::string> warnings;
};

// Edge-list format: one edge per line as two whitespace-separated labels.
// Blank lines and lines starting with '#' are ignored. A line
// "%nodes a b c" declares nodes without edges. Labels get dense indices in
// order of first appearance, whether in a declaration or an edge.

/// Throws ParseError on malformed lines and ValidationError on self-loops.
/// Duplicate edges (including u v followed by v u when undirected) are
/// recorded in warnings and otherwise ignored.
LabeledGraph parse_edge_list(std::string_view text, bool directed);
LabeledGraph load_graph(const std::filesystem::path& path, bool directed);

/// Writes a %nodes line with every label followed by one line per edge.
void write_edge_list(std::ostream& out, const Graph& g,
                     const std::vector<std::string>& labels);
std::string to_edge_list(const Graph& g,
                         const std::vector<std::string>& labels);
/// Labels nodes "0", "1", ...
std::vector<std::string> default_labels(std::size_t n);

// Motif file: {"k": int, "directed": bool, "matrix": [[0|1, ...], ...]}
Motif parse_motif(std::string_view json_text,
                  std::size_t max_arity = kDefaultMaxArity);
Motif load_motif(const std::filesystem::path& path,
                 std::size_t max_arity = kDefaultMaxArity);

// Decoder file:
//   {"type":"table","directed":bool,"probs":[[...],...]}
//   {"type":"inner_product","directed":bool,"dim":t,
//    "embeddings":[[...],...],"bias":b}
std::unique_ptr<Decoder> parse_decoder(std::string_view json_text);
std::unique_ptr<Decoder> load_decoder(const std::filesystem::path& path);

/// One whitespace-separated real vector per non-empty line. Throws
/// ParseError on non-numeric tokens or rows of differing length.
std::vector<LatentVector> parse_latents(std::string_view text);
std::vector<LatentVector> load_latents(const std::filesystem::path& path);

/// Reads a whole file; throws ParseError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace motifx
