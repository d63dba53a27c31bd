#pragma once

#include <vector>

#include "acr/types.hpp"

namespace acr {

// Solver knobs for the soft reconstructors.
struct SoftConfig {
  std::size_t max_iterations = 500;
  double convergence_tol = 1e-6;      // max absolute parameter change per sweep
  double esqr_surprise_floor = 0.02;  // lower bound on -log p before inverting
  double smoothing_alpha = 0.5;       // additive pmf smoothing, shared with NLL
  double min_inconsistency = 0.05;    // floor on estimated per-subject sigma

  void validate() const;
};

// Estimated additive subject model: quality psi per stimulus, bias and
// inconsistency per observer.
struct SubjectModelEstimate {
  std::vector<double> psi;
  std::vector<double> delta_hat;
  std::vector<double> v_hat;
};

// Plain MOS over the rows an inlier mask keeps.
std::vector<double> mos(const RatingMatrix& m, const std::vector<bool>& mask);
std::vector<double> mos(const RatingMatrix& m);

struct SurealResult {
  std::vector<double> scores;        // psi
  std::vector<double> row_weights;   // 1/v^2, normalized to sum 1
  SubjectModelEstimate estimate;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<double> objective_history;  // Gaussian NLL after each sweep
};

// Alternating MLE fit of r_ij ~ Normal(psi_j + delta_i, v_i^2) with the
// zero-mean-bias gauge. Non-convergence returns the last iterate with
// converged = false.
SurealResult sureal(const RatingMatrix& m, const SoftConfig& cfg = {});
SurealResult sureal_real(const RealMatrix& m, const SoftConfig& cfg = {});

struct EsqrResult {
  std::vector<double> scores;
  RealMatrix cell_weights;          // 1 / surprisal per (row, stimulus)
  std::vector<double> row_weights;  // per-subject share, normalized to sum 1
};

// Surprisal weighting: every score is weighted by the inverse of its
// negative log probability under the stimulus's smoothed rating pmf.
EsqrResult esqr(const RatingMatrix& m, const SoftConfig& cfg = {});

struct ZrecResult {
  std::vector<double> scores;
  std::vector<double> row_weights;  // 1/sigma^2, normalized to sum 1
  std::vector<double> bias;
  std::vector<double> inconsistency;
};

// Z-score style recovery: estimate each subject's bias and residual spread
// against the plain column means, then average bias-corrected ratings with
// inverse-variance weights.
ZrecResult zrec(const RatingMatrix& m, const SoftConfig& cfg = {});

}  // namespace acr
