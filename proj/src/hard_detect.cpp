#include "acr/hard_detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "acr/stats.hpp"

namespace acr {

std::string to_string(HardMethod m) {
  switch (m) {
    case HardMethod::NoOpt: return "NoOpt";
    case HardMethod::KB: return "KB";
    case HardMethod::CB: return "CB";
    case HardMethod::LPCC: return "LPCC";
    case HardMethod::HB: return "HB";
    case HardMethod::MAZ: return "MAZ";
    case HardMethod::NLL: return "NLL";
  }
  return "?";
}

void HardDetectorConfig::validate() const {
  if (lpcc_threshold <= 0 || maz_threshold <= 0 || nll_threshold <= 0)
    throw std::invalid_argument("detector thresholds must be positive");
  if (nll_alpha <= 0) throw std::invalid_argument("nll smoothing alpha must be positive");
  if (kb_extreme_fraction <= 0 || kb_balance_ratio <= 0 || kb_normal_factor <= 0)
    throw std::invalid_argument("kb constants must be positive");
  if (cb_std_coefficient <= 0)
    throw std::invalid_argument("cb std coefficient must be positive");
  if (min_inliers < 1) throw std::invalid_argument("min_inliers must be >= 1");
}

namespace {

std::size_t count_true(const std::vector<bool>& mask) {
  std::size_t n = 0;
  for (bool b : mask) n += b ? 1 : 0;
  return n;
}

// Single-pass detectors can in principle flag almost everyone. If fewer than
// min_inliers rows survive, re-admit the least suspicious removed rows
// (lowest score first, then lowest index) until the floor holds.
void enforce_min_inliers(std::vector<bool>& mask, const std::vector<double>& suspicion,
                         std::size_t min_inliers) {
  std::size_t kept = count_true(mask);
  if (kept >= min_inliers) return;

  std::vector<std::size_t> removed;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (!mask[i]) removed.push_back(i);
  std::stable_sort(removed.begin(), removed.end(), [&](std::size_t a, std::size_t b) {
    return suspicion[a] < suspicion[b];
  });
  for (std::size_t i : removed) {
    if (kept >= min_inliers) break;
    mask[i] = true;
    ++kept;
  }
}

std::vector<double> row_as_doubles(const RatingMatrix& m, std::size_t i) {
  std::vector<double> out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out[j] = static_cast<double>(m.at(i, j));
  return out;
}

// k * ln k with k an integer count; table avoids log calls in the greedy
// entropy loops.
class XLogXTable {
 public:
  explicit XLogXTable(std::size_t max_count) : values_(max_count + 1, 0.0) {
    for (std::size_t k = 2; k <= max_count; ++k)
      values_[k] = static_cast<double>(k) * std::log(static_cast<double>(k));
  }
  double operator()(std::size_t k) const { return values_[k]; }

 private:
  std::vector<double> values_;
};

}  // namespace

std::vector<bool> detect_kb(const RatingMatrix& m, const HardDetectorConfig& cfg) {
  cfg.validate();
  const std::size_t I = m.rows(), J = m.cols();
  if (I < 2) throw std::invalid_argument("detect_kb: need at least 2 rows");

  const double nonnormal_factor = std::sqrt(20.0);
  std::vector<double> upper(J), lower(J);
  std::vector<double> col(I);
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t i = 0; i < I; ++i) col[i] = static_cast<double>(m.at(i, j));
    const double mu = mean(col);
    const double m2 = population_variance(col, mu);
    double m4 = 0.0;
    for (double x : col) {
      const double d = (x - mu) * (x - mu);
      m4 += d * d;
    }
    m4 /= static_cast<double>(I);
    // Zero-variance columns have undefined kurtosis; their bounds collapse to
    // the mean either way, so the factor choice is irrelevant.
    const bool near_normal =
        m2 == 0.0 || (m4 / (m2 * m2) >= cfg.kb_kurtosis_low && m4 / (m2 * m2) <= cfg.kb_kurtosis_high);
    const double factor = near_normal ? cfg.kb_normal_factor : nonnormal_factor;
    const double sd = std::sqrt(m2);
    upper[j] = mu + factor * sd;
    lower[j] = mu - factor * sd;
  }

  std::vector<bool> mask(I, true);
  std::vector<double> suspicion(I, 0.0);
  for (std::size_t i = 0; i < I; ++i) {
    std::size_t p = 0, q = 0;
    for (std::size_t j = 0; j < J; ++j) {
      const double r = static_cast<double>(m.at(i, j));
      if (r > upper[j]) ++p;
      if (r < lower[j]) ++q;
    }
    const double total = static_cast<double>(p + q);
    suspicion[i] = total / static_cast<double>(J);
    if (p + q == 0) continue;
    const double balance = std::abs(static_cast<double>(p) - static_cast<double>(q)) / total;
    if (suspicion[i] > cfg.kb_extreme_fraction && balance < cfg.kb_balance_ratio)
      mask[i] = false;
  }
  enforce_min_inliers(mask, suspicion, cfg.min_inliers);
  return mask;
}

std::vector<bool> detect_cb(const RatingMatrix& m, const HardDetectorConfig& cfg) {
  cfg.validate();
  const std::size_t I = m.rows();
  if (I < 3) throw std::invalid_argument("detect_cb: need at least 3 rows");
  if (m.cols() < 2) throw std::invalid_argument("detect_cb: need at least 2 columns");

  const std::vector<double> mos = column_means(m);
  std::vector<double> c(I);
  for (std::size_t i = 0; i < I; ++i) {
    const std::vector<double> row = row_as_doubles(m, i);
    c[i] = std::min(pearson(row, mos), spearman(row, mos));
  }
  const double mu = mean(c);
  const double sd = population_std(c, mu);
  const double threshold = mu - cfg.cb_std_coefficient * sd;

  std::vector<bool> mask(I, true);
  std::vector<double> suspicion(I);
  for (std::size_t i = 0; i < I; ++i) {
    suspicion[i] = -c[i];  // lower correlation = more suspicious
    if (c[i] < threshold) mask[i] = false;
  }
  enforce_min_inliers(mask, suspicion, cfg.min_inliers);
  return mask;
}

std::vector<bool> detect_lpcc(const RatingMatrix& m, const HardDetectorConfig& cfg,
                              std::vector<std::size_t>* removal_order) {
  cfg.validate();
  const std::size_t I = m.rows();
  if (I < 2) throw std::invalid_argument("detect_lpcc: need at least 2 rows");

  std::vector<bool> mask(I, true);
  std::size_t inliers = I;
  while (inliers > cfg.min_inliers) {
    const std::vector<double> mos = column_means(m, mask);
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_idx = 0;
    for (std::size_t i = 0; i < I; ++i) {
      if (!mask[i]) continue;
      const double c = pearson(row_as_doubles(m, i), mos);
      if (c < worst) {
        worst = c;
        worst_idx = i;
      }
    }
    if (worst >= cfg.lpcc_threshold) break;
    mask[worst_idx] = false;
    if (removal_order) removal_order->push_back(worst_idx);
    --inliers;
  }
  return mask;
}

std::vector<bool> detect_hb(const RatingMatrix& m, const HardDetectorConfig& cfg,
                            std::vector<std::size_t>* removal_order) {
  cfg.validate();
  const std::size_t I = m.rows(), J = m.cols();
  if (I <= cfg.hb_outlier_count)
    throw std::invalid_argument("detect_hb: outlier count must be below the row count");

  const XLogXTable xlogx(I);
  std::vector<bool> mask(I, true);
  std::size_t inliers = I;

  // counts[j][c] over current inliers; total entropy in nats is
  //   sum_j ( ln n - (1/n) sum_c counts ln counts ).
  std::vector<std::array<std::size_t, kNumLevels>> counts(J);
  for (std::size_t j = 0; j < J; ++j) counts[j].fill(0);
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t j = 0; j < J; ++j)
      ++counts[j][static_cast<std::size_t>(m.at(i, j) - 1)];

  auto total_entropy = [&](std::size_t n) {
    double h = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < kNumLevels; ++c) s += xlogx(counts[j][c]);
      h += std::log(static_cast<double>(n)) - s / static_cast<double>(n);
    }
    return h;
  };

  for (std::size_t step = 0; step < cfg.hb_outlier_count; ++step) {
    if (inliers <= cfg.min_inliers) break;
    const double current = total_entropy(inliers);

    // Per column, the candidate's removal only shifts one count bucket.
    std::vector<double> col_sum(J, 0.0);
    for (std::size_t j = 0; j < J; ++j)
      for (std::size_t c = 0; c < kNumLevels; ++c) col_sum[j] += xlogx(counts[j][c]);

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    const double n_after = static_cast<double>(inliers - 1);
    for (std::size_t i = 0; i < I; ++i) {
      if (!mask[i]) continue;
      double h = 0.0;
      for (std::size_t j = 0; j < J; ++j) {
        const std::size_t c = static_cast<std::size_t>(m.at(i, j) - 1);
        const double s = col_sum[j] - xlogx(counts[j][c]) + xlogx(counts[j][c] - 1);
        h += std::log(n_after) - s / n_after;
      }
      if (h < best) {
        best = h;
        best_idx = i;
      }
    }

    // Entropy that cannot strictly improve does not justify a removal; this
    // also keeps fully unanimous matrices intact.
    if (!(best < current - 1e-12)) break;

    mask[best_idx] = false;
    if (removal_order) removal_order->push_back(best_idx);
    --inliers;
    for (std::size_t j = 0; j < J; ++j)
      --counts[j][static_cast<std::size_t>(m.at(best_idx, j) - 1)];
  }
  return mask;
}

std::vector<bool> detect_maz(const RatingMatrix& m, const HardDetectorConfig& cfg) {
  cfg.validate();
  const std::size_t I = m.rows(), J = m.cols();
  if (I < 2) throw std::invalid_argument("detect_maz: need at least 2 rows");

  const RealMatrix z = zscore_columns(m);
  std::vector<bool> mask(I, true);
  std::vector<double> score(I);
  for (std::size_t i = 0; i < I; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < J; ++j) s += std::abs(z.at(i, j));
    score[i] = s / static_cast<double>(J);
    if (score[i] > cfg.maz_threshold) mask[i] = false;
  }
  enforce_min_inliers(mask, score, cfg.min_inliers);
  return mask;
}

std::vector<bool> detect_nll(const RatingMatrix& m, const HardDetectorConfig& cfg,
                             std::vector<std::size_t>* removal_order) {
  cfg.validate();
  const std::size_t I = m.rows(), J = m.cols();
  if (I < 2) throw std::invalid_argument("detect_nll: need at least 2 rows");

  std::vector<bool> mask(I, true);
  std::size_t inliers = I;
  std::vector<std::array<std::size_t, kNumLevels>> counts(J);
  for (std::size_t j = 0; j < J; ++j) counts[j].fill(0);
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t j = 0; j < J; ++j)
      ++counts[j][static_cast<std::size_t>(m.at(i, j) - 1)];

  while (inliers > cfg.min_inliers) {
    const double log_denominator =
        std::log(static_cast<double>(inliers) + kNumLevels * cfg.nll_alpha);
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t worst_idx = 0;
    for (std::size_t i = 0; i < I; ++i) {
      if (!mask[i]) continue;
      double s = 0.0;
      for (std::size_t j = 0; j < J; ++j) {
        const std::size_t c = static_cast<std::size_t>(m.at(i, j) - 1);
        s += log_denominator - std::log(static_cast<double>(counts[j][c]) + cfg.nll_alpha);
      }
      const double score = s / static_cast<double>(J);  // per-item mean NLL
      if (score > worst) {
        worst = score;
        worst_idx = i;
      }
    }
    if (worst <= cfg.nll_threshold) break;
    mask[worst_idx] = false;
    if (removal_order) removal_order->push_back(worst_idx);
    --inliers;
    for (std::size_t j = 0; j < J; ++j)
      --counts[j][static_cast<std::size_t>(m.at(worst_idx, j) - 1)];
  }
  return mask;
}

std::vector<bool> detect_none(const RatingMatrix& m) {
  return std::vector<bool>(m.rows(), true);
}

std::vector<bool> detect(const RatingMatrix& m, const HardDetectorConfig& cfg) {
  switch (cfg.method) {
    case HardMethod::NoOpt: return detect_none(m);
    case HardMethod::KB: return detect_kb(m, cfg);
    case HardMethod::CB: return detect_cb(m, cfg);
    case HardMethod::LPCC: return detect_lpcc(m, cfg);
    case HardMethod::HB: return detect_hb(m, cfg);
    case HardMethod::MAZ: return detect_maz(m, cfg);
    case HardMethod::NLL: return detect_nll(m, cfg);
  }
  throw std::logic_error("unknown detector");
}

}  // namespace acr
