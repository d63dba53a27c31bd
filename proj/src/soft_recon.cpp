#include "acr/soft_recon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "acr/stats.hpp"

namespace acr {

void SoftConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (convergence_tol <= 0) throw std::invalid_argument("convergence_tol must be positive");
  if (esqr_surprise_floor <= 0) throw std::invalid_argument("esqr_surprise_floor must be positive");
  if (smoothing_alpha <= 0) throw std::invalid_argument("smoothing_alpha must be positive");
  if (min_inconsistency <= 0) throw std::invalid_argument("min_inconsistency must be positive");
}

std::vector<double> mos(const RatingMatrix& m, const std::vector<bool>& mask) {
  return column_means(m, mask);
}

std::vector<double> mos(const RatingMatrix& m) { return column_means(m); }

namespace {

RealMatrix to_real(const RatingMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = static_cast<double>(m.at(i, j));
  return r;
}

std::vector<double> normalized(const std::vector<double>& w) {
  double total = 0.0;
  for (double x : w) total += x;
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] / total;
  return out;
}

// Gaussian negative log-likelihood of the additive model, up to the constant
// I*J*log(2*pi)/2.
double sureal_objective(const RealMatrix& m, const std::vector<double>& psi,
                        const std::vector<double>& delta, const std::vector<double>& v) {
  double nll = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double var = v[i] * v[i];
    double sq = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) {
      const double e = m.at(i, j) - psi[j] - delta[i];
      sq += e * e;
    }
    nll += static_cast<double>(m.cols) * std::log(v[i]) + 0.5 * sq / var;
  }
  return nll;
}

}  // namespace

SurealResult sureal_real(const RealMatrix& m, const SoftConfig& cfg) {
  cfg.validate();
  const std::size_t I = m.rows, J = m.cols;
  if (I < 3) throw std::invalid_argument("sureal: need at least 3 rows");
  if (J < 2) throw std::invalid_argument("sureal: need at least 2 columns");

  // psi starts at the plain column means, delta at 0, v at 1.
  std::vector<double> psi(J, 0.0);
  for (std::size_t j = 0; j < J; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < I; ++i) s += m.at(i, j);
    psi[j] = s / static_cast<double>(I);
  }
  std::vector<double> delta(I, 0.0), v(I, 1.0);

  SurealResult res;
  bool converged = false;
  std::size_t it = 0;
  for (; it < cfg.max_iterations; ++it) {
    double max_change = 0.0;

    // psi_j: inverse-variance weighted mean of bias-corrected ratings.
    double wsum = 0.0;
    for (std::size_t i = 0; i < I; ++i) wsum += 1.0 / (v[i] * v[i]);
    for (std::size_t j = 0; j < J; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < I; ++i) s += (m.at(i, j) - delta[i]) / (v[i] * v[i]);
      const double next = s / wsum;
      max_change = std::max(max_change, std::abs(next - psi[j]));
      psi[j] = next;
    }

    // delta_i: mean residual per subject.
    for (std::size_t i = 0; i < I; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < J; ++j) s += m.at(i, j) - psi[j];
      const double next = s / static_cast<double>(J);
      max_change = std::max(max_change, std::abs(next - delta[i]));
      delta[i] = next;
    }

    // Zero-mean-bias gauge, applied as a transformation so residuals (and the
    // objective) are untouched.
    double dbar = 0.0;
    for (double d : delta) dbar += d;
    dbar /= static_cast<double>(I);
    for (double& d : delta) d -= dbar;
    for (double& p : psi) p += dbar;

    // v_i: rms residual, floored.
    for (std::size_t i = 0; i < I; ++i) {
      double sq = 0.0;
      for (std::size_t j = 0; j < J; ++j) {
        const double e = m.at(i, j) - psi[j] - delta[i];
        sq += e * e;
      }
      const double next = std::max(std::sqrt(sq / static_cast<double>(J)), cfg.min_inconsistency);
      max_change = std::max(max_change, std::abs(next - v[i]));
      v[i] = next;
    }

    res.objective_history.push_back(sureal_objective(m, psi, delta, v));
    if (max_change < cfg.convergence_tol) {
      converged = true;
      ++it;
      break;
    }
  }

  std::vector<double> w(I);
  for (std::size_t i = 0; i < I; ++i) w[i] = 1.0 / (v[i] * v[i]);

  res.scores = psi;
  res.row_weights = normalized(w);
  res.estimate = SubjectModelEstimate{std::move(psi), std::move(delta), std::move(v)};
  res.converged = converged;
  res.iterations = it;
  return res;
}

SurealResult sureal(const RatingMatrix& m, const SoftConfig& cfg) {
  return sureal_real(to_real(m), cfg);
}

EsqrResult esqr(const RatingMatrix& m, const SoftConfig& cfg) {
  cfg.validate();
  const std::size_t I = m.rows(), J = m.cols();
  if (I < 2) throw std::invalid_argument("esqr: need at least 2 rows");

  EsqrResult res;
  res.scores.resize(J);
  res.cell_weights = RealMatrix(I, J);

  for (std::size_t j = 0; j < J; ++j) {
    std::array<std::size_t, kNumLevels> counts{};
    for (std::size_t i = 0; i < I; ++i) ++counts[static_cast<std::size_t>(m.at(i, j) - 1)];

    double wsum = 0.0, wrsum = 0.0;
    bool all_equal = true;
    double first_w = 0.0;
    for (std::size_t i = 0; i < I; ++i) {
      const int r = m.at(i, j);
      const double p = smoothed_prob(counts[static_cast<std::size_t>(r - 1)], I, cfg.smoothing_alpha);
      const double surprise = std::max(-std::log(p), cfg.esqr_surprise_floor);
      const double w = 1.0 / surprise;
      res.cell_weights.at(i, j) = w;
      if (i == 0)
        first_w = w;
      else if (w != first_w)
        all_equal = false;
      wsum += w;
      wrsum += w * static_cast<double>(r);
    }
    if (all_equal) {
      // Equal weights reduce to the plain mean; compute it that way so the
      // reduction is exact.
      double s = 0.0;
      for (std::size_t i = 0; i < I; ++i) s += static_cast<double>(m.at(i, j));
      res.scores[j] = s / static_cast<double>(I);
    } else {
      res.scores[j] = wrsum / wsum;
    }
  }

  std::vector<double> row_totals(I, 0.0);
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t j = 0; j < J; ++j) row_totals[i] += res.cell_weights.at(i, j);
  res.row_weights = normalized(row_totals);
  return res;
}

ZrecResult zrec(const RatingMatrix& m, const SoftConfig& cfg) {
  cfg.validate();
  const std::size_t I = m.rows(), J = m.cols();
  if (I < 3) throw std::invalid_argument("zrec: need at least 3 rows");
  if (J < 2) throw std::invalid_argument("zrec: need at least 2 columns");

  const std::vector<double> col_mean = column_means(m);

  ZrecResult res;
  res.bias.resize(I);
  res.inconsistency.resize(I);
  std::vector<double> w(I);
  for (std::size_t i = 0; i < I; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < J; ++j) s += static_cast<double>(m.at(i, j)) - col_mean[j];
    res.bias[i] = s / static_cast<double>(J);

    double sq = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
      const double e = static_cast<double>(m.at(i, j)) - col_mean[j] - res.bias[i];
      sq += e * e;
    }
    res.inconsistency[i] =
        std::max(std::sqrt(sq / static_cast<double>(J)), cfg.min_inconsistency);
    w[i] = 1.0 / (res.inconsistency[i] * res.inconsistency[i]);
  }

  bool all_equal = true;
  for (std::size_t i = 1; i < I; ++i)
    if (w[i] != w[0]) all_equal = false;

  res.scores.resize(J);
  for (std::size_t j = 0; j < J; ++j) {
    if (all_equal) {
      double s = 0.0;
      for (std::size_t i = 0; i < I; ++i) s += static_cast<double>(m.at(i, j)) - res.bias[i];
      res.scores[j] = s / static_cast<double>(I);
    } else {
      double wsum = 0.0, wrsum = 0.0;
      for (std::size_t i = 0; i < I; ++i) {
        wsum += w[i];
        wrsum += w[i] * (static_cast<double>(m.at(i, j)) - res.bias[i]);
      }
      res.scores[j] = wrsum / wsum;
    }
  }
  res.row_weights = normalized(w);
  return res;
}

}  // namespace acr
