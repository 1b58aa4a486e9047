#pragma once

#include <span>

namespace ultrafit {

/// Fraction of points whose predicted cluster maps to their true class under
/// the cluster-to-class assignment that maximizes agreement (Hungarian
/// matching on the contingency table). Labels are arbitrary integers; the
/// spans must have equal length. Throws LengthMismatch otherwise.
double clustering_accuracy(std::span<const int> predicted, std::span<const int> truth);

}  // namespace ultrafit
