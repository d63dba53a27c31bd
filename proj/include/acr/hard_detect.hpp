#pragma once

#include <string>
#include <vector>

#include "acr/types.hpp"

namespace acr {

enum class HardMethod { NoOpt, KB, CB, LPCC, HB, MAZ, NLL };

std::string to_string(HardMethod m);

// Thresholds and constants of the hard detectors. KB's extreme-vote bounds
// and decision constants follow ITU-R BT.500; the rest are the methods'
// published defaults.
struct HardDetectorConfig {
  HardMethod method = HardMethod::NoOpt;

  double lpcc_threshold = 0.75;   // remove while min correlation < this
  double maz_threshold = 1.0;     // remove if mean |z| exceeds this
  double nll_threshold = 1.31;    // per-item mean NLL stopping level
  double nll_alpha = 0.5;         // additive smoothing pseudo-count
  std::size_t hb_outlier_count = 5;

  double kb_extreme_fraction = 0.05;  // (P+Q)/J must exceed this
  double kb_balance_ratio = 0.3;      // |P-Q|/(P+Q) must stay below this
  double kb_normal_factor = 2.0;      // bound factor for near-normal columns
  double kb_kurtosis_low = 2.0;       // near-normality kurtosis window
  double kb_kurtosis_high = 4.0;

  double cb_std_coefficient = 1.0;  // threshold = mean(c) - coeff * std(c)

  std::size_t min_inliers = 2;  // no detector may leave fewer rows than this

  void validate() const;
};

// Each detector maps a rating matrix to an inlier mask (true = kept). All of
// them are pure functions and keep at least cfg.min_inliers rows. The
// iterative detectors optionally report their removal order.
std::vector<bool> detect_kb(const RatingMatrix& m, const HardDetectorConfig& cfg);
std::vector<bool> detect_cb(const RatingMatrix& m, const HardDetectorConfig& cfg);
std::vector<bool> detect_lpcc(const RatingMatrix& m, const HardDetectorConfig& cfg,
                              std::vector<std::size_t>* removal_order = nullptr);
std::vector<bool> detect_hb(const RatingMatrix& m, const HardDetectorConfig& cfg,
                            std::vector<std::size_t>* removal_order = nullptr);
std::vector<bool> detect_maz(const RatingMatrix& m, const HardDetectorConfig& cfg);
std::vector<bool> detect_nll(const RatingMatrix& m, const HardDetectorConfig& cfg,
                             std::vector<std::size_t>* removal_order = nullptr);
std::vector<bool> detect_none(const RatingMatrix& m);

std::vector<bool> detect(const RatingMatrix& m, const HardDetectorConfig& cfg);

}  // namespace acr
