#include "acr/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace acr {

double rmse(const std::vector<double>& est, const GroundTruth& truth) {
  if (est.size() != truth.size())
    throw std::invalid_argument("rmse: length mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < est.size(); ++j) {
    const double e = est[j] - truth.mu[j];
    s += e * e;
  }
  return std::sqrt(s / static_cast<double>(est.size()));
}

double rmsd(const std::vector<double>& est_a, const std::vector<double>& est_b) {
  if (est_a.size() != est_b.size())
    throw std::invalid_argument("rmsd: length mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < est_a.size(); ++j) {
    const double e = est_a[j] - est_b[j];
    s += e * e;
  }
  return std::sqrt(s / static_cast<double>(est_a.size()));
}

ClassificationCounts classification_counts(const std::vector<bool>& inlier_mask,
                                           const std::vector<bool>& attacker_flags) {
  if (inlier_mask.size() != attacker_flags.size())
    throw std::invalid_argument("classification: length mismatch");
  ClassificationCounts c;
  for (std::size_t i = 0; i < inlier_mask.size(); ++i) {
    const bool removed = !inlier_mask[i];
    const bool attacker = attacker_flags[i];
    if (attacker && removed) ++c.tp;
    else if (attacker && !removed) ++c.fn;
    else if (!attacker && removed) ++c.fp;
    else ++c.tn;
  }
  return c;
}

ClassificationMetrics classification_metrics(const std::vector<bool>& inlier_mask,
                                             const std::vector<bool>& attacker_flags) {
  const ClassificationCounts c = classification_counts(inlier_mask, attacker_flags);
  ClassificationMetrics m;
  const std::size_t genuine = c.fp + c.tn;
  const std::size_t attackers = c.tp + c.fn;
  if (genuine > 0) m.fpr = static_cast<double>(c.fp) / static_cast<double>(genuine);
  if (attackers > 0) m.fnr = static_cast<double>(c.fn) / static_cast<double>(attackers);
  m.acc = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  return m;
}

double rai(const DetectionResult& result, const std::vector<bool>& attacker_flags) {
  if (result.kind == DetectionResult::Kind::Hard) {
    if (result.inlier_mask.size() != attacker_flags.size())
      throw std::invalid_argument("rai: length mismatch");
    std::size_t inliers = 0, attackers_kept = 0;
    for (std::size_t i = 0; i < attacker_flags.size(); ++i) {
      if (!result.inlier_mask[i]) continue;
      ++inliers;
      if (attacker_flags[i]) ++attackers_kept;
    }
    if (inliers == 0) throw std::logic_error("rai: empty inlier set");
    return static_cast<double>(attackers_kept) / static_cast<double>(inliers);
  }

  if (result.row_weights.size() != attacker_flags.size())
    throw std::invalid_argument("rai: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < attacker_flags.size(); ++i)
    if (attacker_flags[i]) s += result.row_weights[i];
  return s;
}

}  // namespace acr
