#include <doctest.h>

#include <cmath>

#include "acr/metrics.hpp"
#include "acr/rng.hpp"

using namespace acr;

TEST_CASE("rmse basics") {
  const GroundTruth truth(std::vector<double>{3.0, 4.0});
  CHECK(rmse({3.0, 4.0}, truth) == 0.0);
  CHECK(rmse({3.5, 4.5}, truth) == doctest::Approx(0.5));
  CHECK(rmse({3.3, 4.4}, truth) == doctest::Approx(std::sqrt(0.125)));
  CHECK_THROWS_AS(rmse({1.0}, truth), std::invalid_argument);
}

TEST_CASE("rmse scale identity rmse(x+c, x) == |c|") {
  Rng rng(3);
  std::vector<double> x(9), shifted(9);
  const double c = -0.73;
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = 1.0 + 4.0 * rng.uniform();
    shifted[i] = x[i] + c;
  }
  CHECK(rmse(shifted, GroundTruth(x)) == doctest::Approx(std::abs(c)).epsilon(1e-12));
}

TEST_CASE("rmsd symmetry") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> b{1.5, 1.5, 3.5};
  CHECK(rmsd(a, a) == 0.0);
  CHECK(rmsd(a, b) == rmsd(b, a));
  CHECK(rmsd(a, b) == doctest::Approx(std::sqrt((0.25 + 0.25 + 0.25) / 3.0)));
}

namespace {

std::vector<bool> flags_with_attackers(std::size_t genuine, std::size_t attackers) {
  std::vector<bool> f(genuine + attackers, false);
  for (std::size_t i = genuine; i < f.size(); ++i) f[i] = true;
  return f;
}

}  // namespace

TEST_CASE("classification metrics: NoOpt row of the ranking table") {
  const auto flags = flags_with_attackers(30, 5);
  const std::vector<bool> all_true(35, true);
  const ClassificationMetrics m = classification_metrics(all_true, flags);
  CHECK(*m.fpr == 0.0);
  CHECK(*m.fnr == 1.0);
  CHECK(m.acc == 30.0 / 35.0);
}

TEST_CASE("classification metrics: perfect and degenerate masks") {
  const auto flags = flags_with_attackers(30, 5);

  std::vector<bool> perfect(35, true);
  for (std::size_t i = 30; i < 35; ++i) perfect[i] = false;
  const ClassificationMetrics p = classification_metrics(perfect, flags);
  CHECK(*p.fpr == 0.0);
  CHECK(*p.fnr == 0.0);
  CHECK(p.acc == 1.0);

  // Keep only 2 genuine rows: everything else classified as outlier.
  std::vector<bool> tiny(35, false);
  tiny[0] = tiny[1] = true;
  const ClassificationMetrics t = classification_metrics(tiny, flags);
  CHECK(*t.fpr == doctest::Approx(28.0 / 30.0));
  CHECK(*t.fnr == 0.0);
  CHECK(t.acc == doctest::Approx(7.0 / 35.0));
}

TEST_CASE("fnr absent without attackers") {
  const std::vector<bool> flags(10, false);
  std::vector<bool> mask(10, true);
  mask[3] = false;
  const ClassificationMetrics m = classification_metrics(mask, flags);
  CHECK(!m.fnr.has_value());
  CHECK(*m.fpr == doctest::Approx(0.1));
}

TEST_CASE("classification metrics are permutation invariant") {
  Rng rng(17);
  std::vector<bool> mask(12), flags(12);
  for (std::size_t i = 0; i < 12; ++i) {
    mask[i] = rng.uniform() < 0.7;
    flags[i] = i >= 9;
  }
  const ClassificationMetrics base = classification_metrics(mask, flags);

  auto perm = rng.sample_without_replacement(12, 12);
  std::vector<bool> pm(12), pf(12);
  for (std::size_t i = 0; i < 12; ++i) {
    pm[i] = mask[perm[i]];
    pf[i] = flags[perm[i]];
  }
  const ClassificationMetrics permuted = classification_metrics(pm, pf);
  CHECK(base.acc == permuted.acc);
  CHECK(*base.fpr == *permuted.fpr);
  CHECK(base.fnr.value_or(-1) == permuted.fnr.value_or(-1));
}

TEST_CASE("rai for hard masks") {
  const auto flags = flags_with_attackers(30, 5);

  DetectionResult keep_all;
  keep_all.kind = DetectionResult::Kind::Hard;
  keep_all.inlier_mask.assign(35, true);
  CHECK(rai(keep_all, flags) == 5.0 / 35.0);

  DetectionResult no_attackers = keep_all;
  for (std::size_t i = 30; i < 35; ++i) no_attackers.inlier_mask[i] = false;
  CHECK(rai(no_attackers, flags) == 0.0);
}

TEST_CASE("rai stays in [0,1] and vanishes only without attacker influence") {
  Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 3 + rng.uniform_index(12);
    std::vector<bool> flags(n);
    for (std::size_t i = 0; i < n; ++i) flags[i] = rng.uniform() < 0.3;

    DetectionResult hard;
    hard.kind = DetectionResult::Kind::Hard;
    hard.inlier_mask.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) hard.inlier_mask[i] = rng.uniform() < 0.7;
    if (std::none_of(hard.inlier_mask.begin(), hard.inlier_mask.end(), [](bool b) { return b; }))
      hard.inlier_mask[0] = true;
    const double hv = rai(hard, flags);
    CHECK(hv >= 0.0);
    CHECK(hv <= 1.0);
    bool attacker_kept = false;
    for (std::size_t i = 0; i < n; ++i)
      attacker_kept = attacker_kept || (flags[i] && hard.inlier_mask[i]);
    CHECK((hv == 0.0) == !attacker_kept);

    DetectionResult soft;
    soft.kind = DetectionResult::Kind::Soft;
    std::vector<double> w(n);
    double total = 0.0;
    for (double& x : w) {
      x = rng.uniform();
      total += x;
    }
    for (double& x : w) x /= total;
    soft.row_weights = w;
    const double sv = rai(soft, flags);
    CHECK(sv >= 0.0);
    CHECK(sv <= 1.0 + 1e-12);
  }
}

TEST_CASE("rai for soft weights") {
  const auto flags = flags_with_attackers(30, 5);
  DetectionResult soft;
  soft.kind = DetectionResult::Kind::Soft;
  soft.row_weights.assign(35, 1.0 / 35.0);
  CHECK(rai(soft, flags) == doctest::Approx(5.0 / 35.0).epsilon(1e-12));

  // All attacker weight removed.
  for (std::size_t i = 30; i < 35; ++i) soft.row_weights[i] = 0.0;
  CHECK(rai(soft, flags) == 0.0);
}
