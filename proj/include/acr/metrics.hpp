#pragma once

#include <optional>
#include <vector>

#include "acr/types.hpp"

namespace acr {

// Root mean square error of estimated scale values against ground truth.
double rmse(const std::vector<double>& est, const GroundTruth& truth);

// Root mean square difference between two reconstructions; symmetric.
double rmsd(const std::vector<double>& est_a, const std::vector<double>& est_b);

// Outlier classification counts; "positive" = classified as outlier,
// ground-truth positives are attacker rows.
struct ClassificationCounts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::size_t total() const { return tp + fp + tn + fn; }
};

ClassificationCounts classification_counts(const std::vector<bool>& inlier_mask,
                                           const std::vector<bool>& attacker_flags);

struct ClassificationMetrics {
  std::optional<double> fpr;  // genuine rows removed / genuine rows
  std::optional<double> fnr;  // attackers kept / attackers; absent with no attackers
  double acc = 0.0;           // correctly classified rows / all rows
};

ClassificationMetrics classification_metrics(const std::vector<bool>& inlier_mask,
                                             const std::vector<bool>& attacker_flags);

// Remaining attacker influence: the attackers' share of normalized weight
// (soft) or of the inlier set (hard). Always in [0, 1].
double rai(const DetectionResult& result, const std::vector<bool>& attacker_flags);

}  // namespace acr
