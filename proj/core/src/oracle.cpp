#include "ultrafit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "ultrafit/error.hpp"

namespace ultrafit::oracle {

namespace {

void require_at_most(const Graph& graph, std::size_t limit, const char* what) {
  if (graph.vertex_count() > limit) {
    throw Error(Errc::too_large, std::string(what) + " supports at most " +
                                     std::to_string(limit) + " vertices");
  }
}

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

class ClosestSearch {
 public:
  ClosestSearch(const Graph& graph, std::span<const double> w)
      : graph_(graph), w_(w), n_(graph.vertex_count()) {
    best_.cost = std::numeric_limits<double>::infinity();
    parent_.assign(2 * n_ - 1, npos);
  }

  ClosestOptimum run() {
    if (n_ == 1) return {EdgeWeights{}, 0.0};
    std::vector<std::size_t> active(n_);
    std::iota(active.begin(), active.end(), std::size_t{0});
    recurse(active, n_);
    return best_;
  }

 private:
  void recurse(std::vector<std::size_t>& active, std::size_t next) {
    if (active.size() == 1) {
      evaluate();
      return;
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const std::size_t a = active[i], b = active[j];
        parent_[a] = parent_[b] = next;
        std::vector<std::size_t> rest;
        rest.reserve(active.size() - 1);
        for (std::size_t k = 0; k < active.size(); ++k) {
          if (k != i && k != j) rest.push_back(active[k]);
        }
        rest.push_back(next);
        recurse(rest, next + 1);
        parent_[a] = parent_[b] = npos;
      }
    }
  }

  std::size_t lca(std::size_t a, std::size_t b) const {
    std::vector<char> mark(parent_.size(), 0);
    for (std::size_t x = a; x != npos; x = parent_[x]) mark[x] = 1;
    for (std::size_t y = b; y != npos; y = parent_[y]) {
      if (mark[y]) return y;
    }
    return npos;
  }

  void evaluate() {
    const std::size_t internal = n_ - 1;
    std::vector<double> sum(internal, 0.0);
    std::vector<double> count(internal, 0.0);
    std::vector<std::size_t> edge_node(graph_.edge_count());
    for (EdgeId e = 0; e < graph_.edge_count(); ++e) {
      const std::size_t node = lca(graph_.edge(e).source, graph_.edge(e).target) - n_;
      edge_node[e] = node;
      sum[node] += w_[e];
      count[node] += 1.0;
    }
    // Parent-child constraints between internal nodes.
    std::vector<std::pair<std::size_t, std::size_t>> links;
    for (std::size_t i = 0; i < internal; ++i) {
      const std::size_t p = parent_[n_ + i];
      if (p != npos) links.emplace_back(i, p - n_);
    }
    const std::size_t subsets = std::size_t{1} << links.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<std::size_t> block(internal);
      std::iota(block.begin(), block.end(), std::size_t{0});
      auto find = [&](std::size_t x) {
        while (block[x] != x) x = block[x] = block[block[x]];
        return x;
      };
      for (std::size_t l = 0; l < links.size(); ++l) {
        if (mask >> l & 1) block[find(links[l].first)] = find(links[l].second);
      }
      std::vector<double> bsum(internal, 0.0), bcount(internal, 0.0);
      for (std::size_t i = 0; i < internal; ++i) {
        bsum[find(i)] += sum[i];
        bcount[find(i)] += count[i];
      }
      std::vector<double> value(internal, std::numeric_limits<double>::quiet_NaN());
      for (std::size_t i = 0; i < internal; ++i) {
        const std::size_t b = find(i);
        if (bcount[b] > 0) value[i] = bsum[b] / bcount[b];
      }
      if (!feasible(value)) continue;
      double cost = 0.0;
      for (EdgeId e = 0; e < graph_.edge_count(); ++e) {
        const double d = value[edge_node[e]] - w_[e];
        cost += d * d;
      }
      if (cost < best_.cost) {
        best_.cost = cost;
        best_.ultrametric.resize(graph_.edge_count());
        for (EdgeId e = 0; e < graph_.edge_count(); ++e) {
          best_.ultrametric[e] = value[edge_node[e]];
        }
      }
    }
  }

  /// Nodes without data can take any value, so only ancestor pairs that both
  /// carry a value constrain each other.
  bool feasible(const std::vector<double>& value) const {
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (std::isnan(value[i])) continue;
      for (std::size_t a = parent_[n_ + i]; a != npos; a = parent_[a]) {
        const double va = value[a - n_];
        if (!std::isnan(va) && value[i] > va + 1e-12 * (1.0 + std::abs(va))) return false;
      }
    }
    return true;
  }

  const Graph& graph_;
  std::span<const double> w_;
  std::size_t n_;
  std::vector<std::size_t> parent_;
  ClosestOptimum best_;
};

}  // namespace

DistanceMatrix minmax_bruteforce(const Graph& graph, std::span<const double> weights) {
  require_at_most(graph, 512, "minmax_bruteforce");
  check_length(graph, weights);
  const std::size_t n = graph.vertex_count();
  const double inf = std::numeric_limits<double>::infinity();
  DistanceMatrix d{n, std::vector<double>(n * n, inf)};
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const auto [x, y] = graph.edge(e);
    d.values[x * n + y] = std::min(d.values[x * n + y], weights[e]);
    d.values[y * n + x] = d.values[x * n + y];
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double dik = d.values[i * n + k];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k || j == i) continue;
        const double via = std::max(dik, d.values[k * n + j]);
        if (via < d.values[i * n + j]) d.values[i * n + j] = via;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) d.values[i * n + i] = 0.0;
  return d;
}

bool ultrametric_cycle_check(const Graph& graph, std::span<const double> u,
                             double tolerance) {
  require_at_most(graph, 8, "ultrametric_cycle_check");
  check_length(graph, u);
  const std::size_t n = graph.vertex_count();

  std::vector<EdgeId> path_edges;
  std::vector<char> on_path(n, 0);
  bool ok = true;

  auto check_cycle = [&](EdgeId closing) {
    path_edges.push_back(closing);
    for (std::size_t i = 0; i < path_edges.size() && ok; ++i) {
      double others = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < path_edges.size(); ++j) {
        if (j != i) others = std::max(others, u[path_edges[j]]);
      }
      if (u[path_edges[i]] > others + tolerance) ok = false;
    }
    path_edges.pop_back();
  };

  // Cycles are enumerated from their smallest vertex `start`.
  std::function<void(VertexId, VertexId)> extend = [&](VertexId start, VertexId v) {
    for (const Incidence& inc : graph.neighbors(v)) {
      if (!ok) return;
      if (inc.neighbor == start && path_edges.size() >= 2) {
        check_cycle(inc.edge);
      } else if (inc.neighbor > start && !on_path[inc.neighbor]) {
        on_path[inc.neighbor] = 1;
        path_edges.push_back(inc.edge);
        extend(start, inc.neighbor);
        path_edges.pop_back();
        on_path[inc.neighbor] = 0;
      }
    }
  };
  for (VertexId s = 0; s < n && ok; ++s) {
    on_path[s] = 1;
    extend(s, s);
    on_path[s] = 0;
  }
  return ok;
}

ClosestOptimum closest_ultrametric_exhaustive(const Graph& graph,
                                              std::span<const double> weights) {
  require_at_most(graph, 6, "closest_ultrametric_exhaustive");
  check_length(graph, weights);
  return ClosestSearch(graph, weights).run();
}

Dendrogram average_linkage(const Graph& graph, std::span<const double> weights) {
  check_length(graph, weights);
  const std::size_t n = graph.vertex_count();
  // links[c][d] = (sum of weights, number of edges) between clusters c and d.
  std::map<std::size_t, std::map<std::size_t, std::pair<double, double>>> links;
  for (VertexId v = 0; v < n; ++v) links[v];
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const auto [x, y] = graph.edge(e);
    auto& a = links[x][y];
    a.first += weights[e];
    a.second += 1.0;
    links[y][x] = a;
  }

  std::vector<Dendrogram::Merge> merges;
  double floor = -std::numeric_limits<double>::infinity();
  for (std::size_t next = n; next < 2 * n - 1; ++next) {
    std::size_t best_a = npos, best_b = npos;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [c, nbrs] : links) {
      for (const auto& [d, sc] : nbrs) {
        if (d <= c) continue;
        const double avg = sc.first / sc.second;
        if (avg < best) {
          best = avg;
          best_a = c;
          best_b = d;
        }
      }
    }
    // Mean of a union lies between the means of its parts; clamp rounding.
    floor = std::max(floor, best);
    merges.push_back({best_a, best_b, floor});
    std::map<std::size_t, std::pair<double, double>> merged;
    for (const std::size_t c : {best_a, best_b}) {
      for (const auto& [d, sc] : links[c]) {
        if (d == best_a || d == best_b) continue;
        auto& m = merged[d];
        m.first += sc.first;
        m.second += sc.second;
        links[d].erase(c);
      }
      links.erase(c);
    }
    for (const auto& [d, sc] : merged) links[d][next] = sc;
    links[next] = std::move(merged);
  }
  return Dendrogram::from_merges(n, merges);
}

std::vector<double> finite_difference_grad(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double h) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

std::vector<double> soft_cardinal_direct(const SubdominantResult& res,
                                         double temperature) {
  const Graph& graph = *res.graph;
  const Dendrogram& tree = res.dendrogram;
  const DistanceMatrix d = minmax_bruteforce(graph, res.ultrametric);
  std::vector<double> card(tree.node_count(), 1.0);
  for (NodeId n = tree.leaf_count(); n < tree.node_count(); ++n) {
    const Edge& e = graph.edge(tree.canonical_edge(n));
    double total = 0.0;
    for (const VertexId x : {e.source, e.target}) {
      for (VertexId y = 0; y < graph.vertex_count(); ++y) {
        total += sigmoid((tree.altitude(n) - d(x, y)) / temperature);
      }
    }
    card[n] = 0.5 * total;
  }
  return card;
}

}  // namespace ultrafit::oracle
