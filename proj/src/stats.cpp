#include "acr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace acr {

double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double population_variance(std::span<const double> xs, double mu) {
  double s = 0.0;
  for (double x : xs) s += (x - mu) * (x - mu);
  return s / static_cast<double>(xs.size());
}

double population_std(std::span<const double> xs, double mu) {
  return std::sqrt(population_variance(xs, mu));
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  if (n != b.size()) throw std::invalid_argument("pearson: length mismatch");
  if (n == 0) throw std::invalid_argument("pearson: empty input");
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 && sbb == 0.0) return 1.0;
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

std::vector<double> average_ranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;  // mean of 1-based positions
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  return pearson(ra, rb);
}

double shannon_entropy(const Pmf& pmf) {
  double h = 0.0;
  for (double p : pmf.p)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

double smoothed_prob(std::size_t count, std::size_t n, double alpha) {
  return (static_cast<double>(count) + alpha) /
         (static_cast<double>(n) + static_cast<double>(kNumLevels) * alpha);
}

Pmf empirical_pmf(std::span<const int> column) {
  if (column.empty()) throw std::invalid_argument("empty stimulus column");
  std::array<double, kNumLevels> p{};
  for (int r : column) {
    if (!is_valid_rating(r))
      throw std::invalid_argument("rating out of range: " + std::to_string(r));
    p[static_cast<std::size_t>(r - 1)] += 1.0;
  }
  const double n = static_cast<double>(column.size());
  for (double& x : p) x /= n;
  return Pmf(p);
}

RealMatrix zscore_columns(const RatingMatrix& m) {
  const std::size_t I = m.rows(), J = m.cols();
  RealMatrix z(I, J);
  std::vector<double> col(I);
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t i = 0; i < I; ++i) col[i] = static_cast<double>(m.at(i, j));
    const double mu = mean(col);
    const double sd = population_std(col, mu);
    for (std::size_t i = 0; i < I; ++i)
      z.at(i, j) = sd == 0.0 ? 0.0 : (col[i] - mu) / sd;
  }
  return z;
}

std::vector<double> column_means(const RatingMatrix& m, const std::vector<bool>& mask) {
  if (mask.size() != m.rows())
    throw std::invalid_argument("column_means: mask length mismatch");
  std::size_t kept = 0;
  for (bool b : mask) kept += b ? 1 : 0;
  if (kept == 0) throw std::invalid_argument("column_means: empty mask");

  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (mask[i]) s += static_cast<double>(m.at(i, j));
    out[j] = s / static_cast<double>(kept);
  }
  return out;
}

std::vector<double> column_means(const RatingMatrix& m) {
  return column_means(m, std::vector<bool>(m.rows(), true));
}

StackedMatrix stack(const Dataset& d, const AttackMatrix& a) {
  if (a.cols() != d.ratings.cols())
    throw std::invalid_argument("stack: attack column count does not match dataset");
  const std::size_t I = d.ratings.rows(), K = a.attackers(), J = d.ratings.cols();

  std::vector<int> entries;
  entries.reserve((I + K) * J);
  entries.insert(entries.end(), d.ratings.data().begin(), d.ratings.data().end());
  entries.insert(entries.end(), a.ratings.data().begin(), a.ratings.data().end());

  StackedMatrix s{RatingMatrix(I + K, J, std::move(entries)), std::vector<bool>(I + K, false)};
  for (std::size_t i = I; i < I + K; ++i) s.attacker_flags[i] = true;
  return s;
}

}  // namespace acr
