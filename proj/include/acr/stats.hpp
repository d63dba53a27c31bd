#pragma once

#include <span>
#include <vector>

#include "acr/types.hpp"

namespace acr {

// Shared numeric helpers. Standard deviations over stimulus columns are
// population (divide-by-n) everywhere; tests pin that choice.

double mean(std::span<const double> xs);
double population_variance(std::span<const double> xs, double mu);
double population_std(std::span<const double> xs, double mu);

// Pearson correlation with pinned degenerate cases: if exactly one side has
// zero variance the correlation is 0 (a flat rater against a varying
// consensus carries no agreement); if both sides are flat it is 1 (nothing
// to disagree about).
double pearson(std::span<const double> a, std::span<const double> b);

// Average ranks (1-based, ties share the mean of their positions).
std::vector<double> average_ranks(std::span<const double> xs);

// Spearman = Pearson on average ranks, same degenerate rules.
double spearman(std::span<const double> a, std::span<const double> b);

// Shannon entropy in nats; 0 log 0 := 0.
double shannon_entropy(const Pmf& pmf);

// Additively smoothed probability of one category: (count + alpha) / (n + 5 alpha).
double smoothed_prob(std::size_t count, std::size_t n, double alpha);

// -- core operations ---------------------------------------------------------

// Relative frequency of each ACR level in a stimulus column.
Pmf empirical_pmf(std::span<const int> column);

// Per-column z-scores with population std; zero-variance columns map to all
// zeros.
RealMatrix zscore_columns(const RatingMatrix& m);

// Column means over the rows selected by the mask.
std::vector<double> column_means(const RatingMatrix& m, const std::vector<bool>& mask);
std::vector<double> column_means(const RatingMatrix& m);

}  // namespace acr
