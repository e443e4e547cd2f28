#include "motifx/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "motifx/error.hpp"

namespace motifx {
namespace {

using nlohmann::json;

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) {
      ++pos;
    }
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) {
      ++pos;
    }
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

const json& require(const json& object, const char* key, const char* what) {
  if (!object.is_object() || !object.contains(key)) {
    throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
  }
  return object.at(key);
}

bool require_bool(const json& object, const char* key, const char* what) {
  const json& value = require(object, key, what);
  if (!value.is_boolean()) {
    throw ParseError(std::string(what) + ": field \"" + key + "\" must be a boolean");
  }
  return value.get<bool>();
}

double require_number(const json& value, const char* what) {
  if (!value.is_number()) {
    throw ParseError(std::string(what) + ": expected a number, got " + value.dump());
  }
  return value.get<double>();
}

std::size_t require_count(const json& object, const char* key, const char* what) {
  const json& value = require(object, key, what);
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw ParseError(std::string(what) + ": field \"" + key +
                     "\" must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

// Square matrix of numbers; returns row-major values and the side length.
std::pair<std::size_t, std::vector<double>> require_square(const json& matrix,
                                                           const char* what) {
  if (!matrix.is_array()) {
    throw ParseError(std::string(what) + ": matrix must be an array of rows");
  }
  const std::size_t n = matrix.size();
  std::vector<double> values;
  values.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = matrix[i];
    if (!row.is_array() || row.size() != n) {
      throw ParseError(std::string(what) + ": row " + std::to_string(i) +
                       " must have " + std::to_string(n) + " entries");
    }
    for (const json& entry : row) values.push_back(require_number(entry, what));
  }
  return {n, std::move(values)};
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

LabeledGraph parse_edge_list(std::string_view text, bool directed) {
  std::vector<std::string> labels;
  std::map<std::string, NodeIndex, std::less<>> index;
  auto intern = [&](std::string_view label) {
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    const NodeIndex id = labels.size();
    labels.emplace_back(label);
    index.emplace(std::string(label), id);
    return id;
  };

  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::vector<std::string> warnings;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto tokens = split_whitespace(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    const std::string where = "line " + std::to_string(line_number);
    if (tokens.front().front() == '%') {
      if (tokens.front() != "%nodes") {
        throw ParseError(where + ": unknown directive " + std::string(tokens.front()));
      }
      for (std::size_t i = 1; i < tokens.size(); ++i) intern(tokens[i]);
      continue;
    }
    if (tokens.size() != 2) {
      throw ParseError(where + ": expected two node labels, found " +
                       std::to_string(tokens.size()) + " tokens");
    }
    if (tokens[0] == tokens[1]) {
      throw ValidationError(where + ": self-loop on node " + std::string(tokens[0]));
    }
    const NodeIndex u = intern(tokens[0]);
    const NodeIndex v = intern(tokens[1]);
    const Edge key = directed ? Edge{u, v} : Edge{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) {
      warnings.push_back(where + ": duplicate edge " + std::string(tokens[0]) +
                         " " + std::string(tokens[1]) + " ignored");
      continue;
    }
    edges.emplace_back(u, v);
  }
  if (labels.empty()) throw ParseError("edge list declares no nodes");
  Graph g = Graph::from_edges(labels.size(), directed, edges);
  return {std::move(g), std::move(labels), std::move(warnings)};
}

LabeledGraph load_graph(const std::filesystem::path& path, bool directed) {
  return parse_edge_list(read_file(path), directed);
}

void write_edge_list(std::ostream& out, const Graph& g,
                     const std::vector<std::string>& labels) {
  if (labels.size() != g.size()) {
    throw ValidationError("write_edge_list: one label per node required");
  }
  out << "%nodes";
  for (const auto& label : labels) out << ' ' << label;
  out << '\n';
  for (const auto& [u, v] : g.edges()) out << labels[u] << ' ' << labels[v] << '\n';
}

std::string to_edge_list(const Graph& g, const std::vector<std::string>& labels) {
  std::ostringstream out;
  write_edge_list(out, g, labels);
  return out.str();
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

Motif parse_motif(std::string_view json_text, std::size_t max_arity) {
  constexpr const char* what = "motif";
  const json doc = parse_json(json_text, what);
  const std::size_t k = require_count(doc, "k", what);
  const bool directed = require_bool(doc, "directed", what);
  auto [side, values] = require_square(require(doc, "matrix", what), what);
  if (side != k) {
    throw ParseError("motif: matrix is " + std::to_string(side) + "x" +
                     std::to_string(side) + " but k = " + std::to_string(k));
  }
  std::vector<std::uint8_t> pattern;
  pattern.reserve(values.size());
  for (double v : values) {
    if (v != 0.0 && v != 1.0) {
      throw ValidationError("motif: matrix entries must be 0 or 1");
    }
    pattern.push_back(static_cast<std::uint8_t>(v));
  }
  return Motif::from_matrix(k, directed, std::move(pattern), max_arity);
}

Motif load_motif(const std::filesystem::path& path, std::size_t max_arity) {
  return parse_motif(read_file(path), max_arity);
}

std::unique_ptr<Decoder> parse_decoder(std::string_view json_text) {
  constexpr const char* what = "decoder";
  const json doc = parse_json(json_text, what);
  const json& type = require(doc, "type", what);
  if (!type.is_string()) throw ParseError("decoder: \"type\" must be a string");
  const bool directed = require_bool(doc, "directed", what);

  if (type == "table") {
    auto [n, probs] = require_square(require(doc, "probs", what), what);
    return std::make_unique<TableDecoder>(
        WeightedGraph::from_matrix(n, directed, std::move(probs)));
  }
  if (type == "inner_product") {
    const std::size_t dim = require_count(doc, "dim", what);
    const json& rows = require(doc, "embeddings", what);
    if (!rows.is_array()) throw ParseError("decoder: \"embeddings\" must be an array");
    std::vector<std::vector<double>> embeddings;
    for (const json& row : rows) {
      if (!row.is_array()) throw ParseError("decoder: embedding rows must be arrays");
      std::vector<double> values;
      for (const json& entry : row) values.push_back(require_number(entry, what));
      embeddings.push_back(std::move(values));
    }
    const double bias = require_number(require(doc, "bias", what), what);
    return std::make_unique<InnerProductDecoder>(directed, dim,
                                                 std::move(embeddings), bias);
  }
  throw ParseError("decoder: unknown type " + type.dump());
}

std::unique_ptr<Decoder> load_decoder(const std::filesystem::path& path) {
  return parse_decoder(read_file(path));
}

std::vector<LatentVector> parse_latents(std::string_view text) {
  std::vector<LatentVector> latents;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    const auto tokens = split_whitespace(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    std::vector<double> values;
    for (std::string_view token : tokens) {
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("latents line " + std::to_string(line_number) +
                         ": not a number: " + std::string(token));
      }
      values.push_back(value);
    }
    if (!latents.empty() && values.size() != latents.front().dim()) {
      throw ParseError("latents line " + std::to_string(line_number) + ": has " +
                       std::to_string(values.size()) + " values, expected " +
                       std::to_string(latents.front().dim()));
    }
    latents.emplace_back(std::move(values));
  }
  if (latents.empty()) throw ParseError("latents file contains no vectors");
  return latents;
}

std::vector<LatentVector> load_latents(const std::filesystem::path& path) {
  return parse_latents(read_file(path));
}

}  // namespace motifx
