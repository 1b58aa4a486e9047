#include "ultrafit/costs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ultrafit/error.hpp"

namespace ultrafit {

namespace {

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

void check_reference(const SubdominantResult& res, std::span<const double> w) {
  check_length(*res.graph, w);
}

/// Distance between two vertices read on the pass edge of their lca, together
/// with that edge (npos when a == b).
std::pair<double, EdgeId> pass_distance(const SubdominantResult& res,
                                        VertexId a, VertexId b) {
  if (a == b) return {0.0, npos};
  const EdgeId e = res.dendrogram.canonical_edge(res.lca.lca(a, b));
  return {res.ultrametric[e], e};
}

/// Evaluates the soft cardinal of every internal node. When `grad` is non-null
/// it also accumulates d(sum_n coeff[n] card(n)) / du into it.
///
/// For a node n with altitude a and canonical edge (s, t),
///   card(n) = 1/2 sum_{x in {s,t}} [ sig(a) + sum_{y strict ancestor of x} other_x(y) sig(a - alt(y)) ]
/// with sig(z) = sigmoid(z / temperature). The ancestors of n itself are shared
/// by both extremities, so that part of the walk is done once.
///
/// sigmoid((a - b) / T) = e_a / (e_a + e_b) with e_v = exp((v - c) / T), which
/// trades an exp per step for a division. The shift c centres the altitude range;
/// when the range is too wide for that, the plain sigmoid is used instead.
void soft_cardinal_pass(const SubdominantResult& res, double temperature,
                        std::span<const double> coeff, std::vector<double>& card,
                        std::vector<double>* grad) {
  const Dendrogram& tree = res.dendrogram;
  const Graph& graph = *res.graph;
  const std::size_t nodes = tree.node_count();
  const NodeId leaves = tree.leaf_count();
  const double inv_t = 1.0 / temperature;

  // Node-indexed walk records: parent, the size of the sibling subtree seen
  // when stepping from this node to its parent, and the altitude terms.
  struct Step {
    NodeId parent;
    double other;
    double alt;
    double expo;
  };
  std::vector<Step> step(nodes, Step{npos, 0.0, 0.0, 0.0});
  double lo = 0.0, hi = 0.0;
  for (NodeId n = 0; n < nodes; ++n) {
    Step& r = step[n];
    if (n >= leaves) {
      r.alt = res.ultrametric[tree.canonical_edge(n)];
      lo = n == leaves ? r.alt : std::min(lo, r.alt);
      hi = n == leaves ? r.alt : std::max(hi, r.alt);
    }
    r.parent = tree.parent(n);
    if (r.parent != npos) r.other = static_cast<double>(tree.size(r.parent) - tree.size(n));
  }

  const double centre = 0.5 * (lo + hi);
  const bool fast = (hi - lo) * inv_t < 1000.0;
  if (fast) {
    for (NodeId n = leaves; n < nodes; ++n) step[n].expo = std::exp((step[n].alt - centre) * inv_t);
  }

  // Returns s = sigmoid((a - alt(y)) / T) and writes s * (1 - s) when asked.
  auto sig = [&](double a, double ea, const Step& y, double* slope) {
    if (fast) {
      const double inv = 1.0 / (ea + y.expo);
      const double s = ea * inv;
      if (slope) *slope = s * (y.expo * inv);
      return s;
    }
    const double v = sigmoid((a - y.alt) * inv_t);
    if (slope) *slope = v * (1.0 - v);
    return v;
  };

  std::vector<double> node_grad(grad ? nodes : 0, 0.0);
  card.assign(nodes, 1.0);
  for (NodeId n = leaves; n < nodes; ++n) {
    const EdgeId en = tree.canonical_edge(n);
    const double a = step[n].alt;
    const double ea = step[n].expo;
    const double scale = grad ? 0.5 * coeff[n] * inv_t : 0.0;
    double slope = 0.0;
    double* slope_out = grad && scale != 0.0 ? &slope : nullptr;

    const double self = sigmoid(a * inv_t);
    double total = 2.0 * self;
    if (slope_out) (*grad)[en] += 2.0 * scale * self * (1.0 - self);

    // Walks strictly below n from each extremity, plus the step into n.
    for (const VertexId x : {graph.edge(en).source, graph.edge(en).target}) {
      NodeId c = x;
      for (NodeId y = step[c].parent; y != n; c = y, y = step[y].parent) {
        const double s = sig(a, ea, step[y], slope_out);
        total += step[c].other * s;
        if (slope_out) {
          const double d = scale * step[c].other * slope;
          node_grad[n] += d;
          node_grad[y] -= d;
        }
      }
      // y == n: a - alt(n) = 0 exactly, so the sigmoid is 1/2 and the two
      // gradient contributions cancel.
      total += 0.5 * step[c].other;
    }
    // Ancestors of n, counted once for each extremity.
    double above = 0.0, above_grad = 0.0;
    for (NodeId c = n, y = step[n].parent; y != npos; c = y, y = step[y].parent) {
      const double s = sig(a, ea, step[y], slope_out);
      above += step[c].other * s;
      if (slope_out) {
        const double d = 2.0 * scale * step[c].other * slope;
        above_grad += d;
        node_grad[y] -= d;
      }
    }
    total += 2.0 * above;
    if (slope_out) node_grad[n] += above_grad;
    card[n] = 0.5 * total;
  }

  if (grad) {
    for (NodeId n = leaves; n < nodes; ++n) (*grad)[tree.canonical_edge(n)] += node_grad[n];
  }
}

void check_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(Errc::invalid_argument, "temperature must be positive and finite");
  }
}

}  // namespace

CostValue cost_closest(const SubdominantResult& res,
                       std::span<const double> reference) {
  check_reference(res, reference);
  CostValue out{0.0, std::vector<double>(reference.size())};
  for (EdgeId e = 0; e < reference.size(); ++e) {
    const double diff = res.ultrametric[e] - reference[e];
    out.value += diff * diff;
    out.gradient[e] = 2.0 * diff;
  }
  return out;
}

CostValue cost_cluster_size(const SubdominantResult& res, std::size_t top_k) {
  const NodeAttributes attrs = node_attributes(res.dendrogram);
  const std::size_t m = res.ultrametric.size();
  CostValue out{0.0, std::vector<double>(m, 0.0)};
  for (EdgeId e = 0; e < m; ++e) {
    const NodeId n = res.pass_node[e];
    if (res.dendrogram.rank(n) > top_k) continue;
    const double inv_gamma = 1.0 / static_cast<double>(attrs.min_child_size[n]);
    out.value += res.ultrametric[e] * inv_gamma;
    out.gradient[e] = inv_gamma;
  }
  return out;
}

CostValue cost_triplet(const SubdominantResult& res,
                       std::span<const Triplet> triplets, double margin) {
  const std::size_t n = res.dendrogram.leaf_count();
  CostValue out{0.0, std::vector<double>(res.ultrametric.size(), 0.0)};
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const Triplet& t = triplets[i];
    if (t.ref >= n || t.pos >= n || t.neg >= n) {
      throw Error(Errc::vertex_out_of_range,
                  "triplet " + std::to_string(i) + " references a vertex outside [0, " +
                      std::to_string(n) + ")");
    }
    const auto [d_pos, e_pos] = pass_distance(res, t.ref, t.pos);
    const auto [d_neg, e_neg] = pass_distance(res, t.ref, t.neg);
    const double hinge = margin + d_pos - d_neg;
    if (hinge <= 0.0) continue;
    out.value += hinge;
    if (e_pos != npos) out.gradient[e_pos] += 1.0;
    if (e_neg != npos) out.gradient[e_neg] -= 1.0;
  }
  return out;
}

std::vector<double> soft_cardinal(const SubdominantResult& res, double temperature) {
  check_temperature(temperature);
  std::vector<double> card;
  soft_cardinal_pass(res, temperature, {}, card, nullptr);
  return card;
}

CostValue cost_dasgupta(const SubdominantResult& res,
                        std::span<const double> reference, double temperature) {
  check_reference(res, reference);
  check_temperature(temperature);
  for (EdgeId e = 0; e < reference.size(); ++e) {
    if (!(reference[e] > 0.0)) {
      throw Error(Errc::nonpositive_weight,
                  "Dasgupta cost needs positive weights; edge " + std::to_string(e) +
                      " has weight " + std::to_string(reference[e]));
    }
  }

  // d value / d card(n) = sum of 1 / w(e) over edges whose pass node is n.
  std::vector<double> coeff(res.dendrogram.node_count(), 0.0);
  for (EdgeId e = 0; e < reference.size(); ++e) {
    coeff[res.pass_node[e]] += 1.0 / reference[e];
  }

  CostValue out{0.0, std::vector<double>(reference.size(), 0.0)};
  std::vector<double> card;
  soft_cardinal_pass(res, temperature, coeff, card, &out.gradient);
  for (EdgeId e = 0; e < reference.size(); ++e) {
    out.value += card[res.pass_node[e]] / reference[e];
  }
  return out;
}

void CostSpec::validate() const {
  if (terms.empty()) {
    throw Error(Errc::invalid_argument, "cost specification has no terms");
  }
  for (const WeightedTerm& wt : terms) {
    if (!std::isfinite(wt.weight) || wt.weight < 0.0) {
      throw Error(Errc::invalid_argument, "term weights must be finite and >= 0");
    }
    if (const auto* t = std::get_if<TripletTerm>(&wt.term)) {
      if (!(t->margin > 0.0) || !std::isfinite(t->margin)) {
        throw Error(Errc::invalid_argument, "triplet margin must be positive");
      }
      for (const Triplet& tr : t->triplets) {
        if (tr.ref == tr.neg) {
          throw Error(Errc::invalid_argument,
                      "triplet with ref == neg (vertex " + std::to_string(tr.ref) + ")");
        }
      }
    }
    if (const auto* d = std::get_if<DasguptaTerm>(&wt.term)) {
      check_temperature(d->temperature);
    }
  }
}

CostValue cost_composite(const CostSpec& spec, const SubdominantResult& res,
                         std::span<const double> reference) {
  spec.validate();
  CostValue total{0.0, std::vector<double>(res.ultrametric.size(), 0.0)};
  for (const WeightedTerm& wt : spec.terms) {
    if (wt.weight == 0.0) continue;
    const CostValue part = std::visit(
        [&](const auto& term) -> CostValue {
          using T = std::decay_t<decltype(term)>;
          if constexpr (std::is_same_v<T, ClosestTerm>) {
            return cost_closest(res, reference);
          } else if constexpr (std::is_same_v<T, ClusterSizeTerm>) {
            return cost_cluster_size(res, term.top_k);
          } else if constexpr (std::is_same_v<T, TripletTerm>) {
            return cost_triplet(res, term.triplets, term.margin);
          } else {
            return cost_dasgupta(res, reference, term.temperature);
          }
        },
        wt.term);
    total.value += wt.weight * part.value;
    for (std::size_t i = 0; i < total.gradient.size(); ++i) {
      total.gradient[i] += wt.weight * part.gradient[i];
    }
  }
  return total;
}

}  // namespace ultrafit
