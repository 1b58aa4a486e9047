#include "ultrafit/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>

#include "ultrafit/error.hpp"

namespace ultrafit {

namespace {

/// Comma-separated cells (whitespace-trimmed, empty cells kept) when the line
/// has a comma; whitespace-separated tokens otherwise.
std::vector<std::string_view> split(std::string_view line) {
  constexpr std::string_view ws = " \t\r";
  std::vector<std::string_view> out;
  if (line.find(',') != std::string_view::npos) {
    std::size_t begin = 0;
    while (true) {
      const std::size_t comma = line.find(',', begin);
      std::string_view cell = line.substr(begin, comma - begin);
      const std::size_t lo = cell.find_first_not_of(ws);
      cell = lo == std::string_view::npos
                 ? std::string_view{}
                 : cell.substr(lo, cell.find_last_not_of(ws) - lo + 1);
      out.push_back(cell);
      if (comma == std::string_view::npos) break;
      begin = comma + 1;
    }
    return out;
  }
  std::size_t i = line.find_first_not_of(ws);
  while (i != std::string_view::npos) {
    const std::size_t j = line.find_first_of(ws, i);
    out.push_back(line.substr(i, j - i));
    i = line.find_first_not_of(ws, j);
  }
  return out;
}

/// Blank lines and `#` comments are skipped by every reader.
bool is_blank(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#';
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last && first != last;
}

template <typename T>
T number(std::string_view token, std::size_t line_no, const char* what) {
  T value{};
  if (!parse_number(token, value)) {
    fail(line_no, std::string("cannot parse ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

/// Reads the next non-blank line; false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_blank(line)) return true;
  }
  return false;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

WeightedGraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) fail(line_no, "missing `N M` header");
  auto header = split(line);
  if (header.size() != 2) fail(line_no, "header must be `N M`");
  const auto n = number<std::size_t>(header[0], line_no, "vertex count");
  const auto m = number<std::size_t>(header[1], line_no, "edge count");

  std::vector<Edge> edges;
  EdgeWeights weights;
  edges.reserve(m);
  weights.reserve(m);
  while (edges.size() < m && next_line(in, line, line_no)) {
    const auto tok = split(line);
    if (tok.size() != 3) fail(line_no, "expected `x y w`");
    edges.push_back({number<std::size_t>(tok[0], line_no, "vertex"),
                     number<std::size_t>(tok[1], line_no, "vertex")});
    weights.push_back(number<double>(tok[2], line_no, "weight"));
  }
  if (edges.size() != m) {
    fail(line_no, "expected " + std::to_string(m) + " edges, found " +
                      std::to_string(edges.size()));
  }
  if (next_line(in, line, line_no)) fail(line_no, "trailing content after edges");
  check_finite(weights);
  return {Graph::build(n, edges), std::move(weights)};
}

void write_edge_list(std::ostream& out, const Graph& graph,
                     std::span<const double> weights) {
  check_length(graph, weights);
  out << graph.vertex_count() << ' ' << graph.edge_count() << '\n';
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    out << graph.edge(e).source << ' ' << graph.edge(e).target << ' '
        << format_double(weights[e]) << '\n';
  }
}

Dendrogram read_linkage(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<Dendrogram::Merge> merges;
  std::vector<std::size_t> sizes;
  while (next_line(in, line, line_no)) {
    const auto tok = split(line);
    if (tok.size() != 4) fail(line_no, "expected `child1 child2 altitude size`");
    merges.push_back({number<std::size_t>(tok[0], line_no, "child"),
                      number<std::size_t>(tok[1], line_no, "child"),
                      number<double>(tok[2], line_no, "altitude")});
    sizes.push_back(number<std::size_t>(tok[3], line_no, "size"));
  }
  const std::size_t leaves = merges.size() + 1;
  Dendrogram tree = [&] {
    try {
      return Dendrogram::from_merges(leaves, merges);
    } catch (const Error& e) {
      throw Error(Errc::parse_error, std::string("invalid linkage: ") + e.what());
    }
  }();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (tree.size(leaves + i) != sizes[i]) {
      throw Error(Errc::parse_error, "invalid linkage: size column of merge " +
                                         std::to_string(i) + " is inconsistent");
    }
  }
  return tree;
}

void write_linkage(std::ostream& out, const Dendrogram& tree) {
  for (NodeId n = tree.leaf_count(); n < tree.node_count(); ++n) {
    const auto& c = tree.children(n);
    out << c[0] << ' ' << c[1] << ' ' << format_double(tree.altitude(n)) << ' '
        << tree.size(n) << '\n';
  }
}

void write_trace_csv(std::ostream& out, std::span<const double> trace) {
  out << "iteration,cost\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << i << ',' << format_double(trace[i]) << '\n';
  }
}

PointSet read_points_csv(std::istream& in, bool labeled) {
  PointSet points;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (next_line(in, line, line_no)) {
    const auto tok = split(line);
    if (tok.empty() || (labeled && tok.size() < 2)) fail(line_no, "too few columns");
    const std::size_t dim = labeled ? tok.size() - 1 : tok.size();
    double probe = 0.0;
    if (first && !parse_number(tok[0], probe)) {
      first = false;  // header
      continue;
    }
    first = false;
    if (points.dimension == 0) {
      points.dimension = dim;
    } else if (dim != points.dimension) {
      fail(line_no, "expected " + std::to_string(points.dimension) + " coordinates");
    }
    for (std::size_t i = 0; i < dim; ++i) {
      points.coordinates.push_back(number<double>(tok[i], line_no, "coordinate"));
    }
    if (labeled) {
      const std::string_view cell = tok.back();
      if (cell.empty() || cell == "?") {
        points.labels.emplace_back();
      } else {
        points.labels.emplace_back(number<int>(cell, line_no, "label"));
      }
    }
  }
  if (points.dimension == 0) fail(line_no, "no points");
  check_finite(points.coordinates);
  if (!labeled) points.labels.assign(points.size(), std::nullopt);
  return points;
}

std::vector<ClassLabel> read_vertex_labels(std::istream& in) {
  std::vector<ClassLabel> labels;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (next_line(in, line, line_no)) {
    const auto tok = split(line);
    if (tok.size() != 2) fail(line_no, "expected `vertex label`");
    std::size_t v = 0;
    if (first && !parse_number(tok[0], v)) {
      first = false;
      continue;
    }
    first = false;
    v = number<std::size_t>(tok[0], line_no, "vertex");
    const int label = number<int>(tok[1], line_no, "label");
    if (v >= labels.size()) labels.resize(v + 1);
    if (labels[v]) fail(line_no, "vertex " + std::to_string(v) + " labeled twice");
    labels[v] = label;
  }
  return labels;
}

void write_labels_csv(std::ostream& out, std::span<const std::size_t> labels) {
  out << "vertex,label\n";
  for (std::size_t v = 0; v < labels.size(); ++v) out << v << ',' << labels[v] << '\n';
}

TripletSet read_triplets(std::istream& in) {
  TripletSet triplets;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    const auto tok = split(line);
    if (tok.size() != 3) fail(line_no, "expected `ref pos neg`");
    triplets.push_back({number<std::size_t>(tok[0], line_no, "ref"),
                        number<std::size_t>(tok[1], line_no, "pos"),
                        number<std::size_t>(tok[2], line_no, "neg")});
  }
  return triplets;
}

}  // namespace ultrafit
