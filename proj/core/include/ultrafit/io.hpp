#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ultrafit/costs.hpp"
#include "ultrafit/hierarchy.hpp"
#include "ultrafit/preprocessing.hpp"

namespace ultrafit {

/// Shortest-free, round-trippable decimal: 17 significant digits.
std::string format_double(double value);

/// Edge list: header `N M`, then M lines `x y w`; edge id = line order.
WeightedGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& graph,
                     std::span<const double> weights);

/// Linkage matrix: one line `child1 child2 altitude size` per internal node,
/// in node order. Leaves are 0..N-1, so N is the line count plus one.
Dendrogram read_linkage(std::istream& in);
void write_linkage(std::ostream& out, const Dendrogram& tree);

/// `iteration,cost` CSV with header.
void write_trace_csv(std::ostream& out, std::span<const double> trace);

/// One point per row, comma separated. With `labeled`, the last column is an
/// integer class; an empty cell or `?` marks an unlabeled point. A
/// non-numeric first line is treated as a header.
PointSet read_points_csv(std::istream& in, bool labeled);

/// `vertex,label` (or whitespace separated) lines, optional header. Returns
/// one entry per vertex up to the largest id seen; missing vertices are
/// unlabeled.
std::vector<ClassLabel> read_vertex_labels(std::istream& in);
void write_labels_csv(std::ostream& out, std::span<const std::size_t> labels);

/// `ref pos neg` lines.
TripletSet read_triplets(std::istream& in);

}  // namespace ultrafit
