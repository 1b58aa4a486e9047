#include "ultrafit/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ultrafit/error.hpp"

namespace ultrafit {

namespace {

std::vector<std::size_t> compact(std::span<const int> labels, std::size_t& count) {
  std::map<int, std::size_t> ids;
  for (const int l : labels) ids.emplace(l, 0);
  std::size_t next = 0;
  for (auto& [label, id] : ids) id = next++;
  count = next;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
  return out;
}

/// Minimum-cost perfect assignment on an n x n matrix (shortest augmenting
/// paths with potentials). Returns the column assigned to each row.
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based internally; column 0 is a sentinel.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

double clustering_accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw Error(Errc::length_mismatch,
                "predicted labels have " + std::to_string(predicted.size()) +
                    " entries, ground truth has " + std::to_string(truth.size()));
  }
  if (predicted.empty()) return 1.0;
  std::size_t clusters = 0, classes = 0;
  const auto pred = compact(predicted, clusters);
  const auto real = compact(truth, classes);
  const std::size_t n = std::max(clusters, classes);
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < pred.size(); ++i) cost[pred[i]][real[i]] -= 1.0;
  const auto match = hungarian(cost);
  double agree = 0.0;
  for (std::size_t r = 0; r < n; ++r) agree -= cost[r][match[r]];
  return agree / static_cast<double>(predicted.size());
}

}  // namespace ultrafit
