#include <doctest.h>

#include <cmath>

#include "acr/ga.hpp"
#include "acr/metrics.hpp"
#include "acr/sim.hpp"
#include "acr/soft_recon.hpp"
#include "acr/stats.hpp"

using namespace acr;

namespace {

Dataset manual_dataset(RatingMatrix m, std::vector<double> truth) {
  const std::size_t I = m.rows();
  return Dataset(std::move(m), GroundTruth(std::move(truth)),
                 SubjectParams(std::vector<double>(I, 0.0), std::vector<double>(I, 0.0)), 0);
}

Dataset small_synth_dataset(std::size_t I, std::size_t J, std::uint64_t seed) {
  const ParameterPool pool = synth_pool(4 * I, 4 * J, seed);
  return sample_dataset(pool, {I, J, seed});
}

}  // namespace

TEST_CASE("fitness: direct arithmetic on the 2x1 dataset") {
  const Dataset d = manual_dataset(RatingMatrix(2, 1, {3, 3}), {3.0});
  const AttackMatrix a(RatingMatrix(1, 1, {5}));
  const MethodUnderTest noopt = MethodUnderTest::make(MethodId::NoOpt);
  CHECK(fitness(a, d, noopt) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("fitness: NoOpt+mos equals stacked column-mean error") {
  const Dataset d = small_synth_dataset(8, 3, 5);
  const AttackMatrix a = make_spammers(2, 3, 9);
  const MethodUnderTest noopt = MethodUnderTest::make(MethodId::NoOpt);
  const StackedMatrix s = stack(d, a);
  CHECK(fitness(a, d, noopt) == rmse(mos(s.ratings), d.truth));
}

TEST_CASE("fitness: attack repeating the consensus row has no effect") {
  const Dataset d = manual_dataset(RatingMatrix(3, 2, {2, 4, 2, 4, 2, 4}), {2.0, 4.0});
  const MethodUnderTest noopt = MethodUnderTest::make(MethodId::NoOpt);
  const double clean_error = rmse(mos(d.ratings), d.truth);
  CHECK(clean_error == 0.0);
  CHECK(fitness(AttackMatrix(RatingMatrix(1, 2, {2, 4})), d, noopt) == clean_error);
}

TEST_CASE("ga with zero generations returns the best random individual") {
  const Dataset d = small_synth_dataset(8, 4, 11);
  GaConfig cfg;
  cfg.population_size = 20;
  cfg.generations = 0;
  cfg.seed = 3;
  const AttackOutcome out = ga_optimize(d, MethodUnderTest::make(MethodId::NoOpt), 2, cfg);
  CHECK(out.evaluations == 20);  // no duplicate genomes at this seed
  CHECK(out.history.size() == 1);
  CHECK(out.all_fitness.size() == 20);
  CHECK(out.best_fitness == out.history[0].best);
}

TEST_CASE("elitism keeps per-generation best non-decreasing") {
  const Dataset d = small_synth_dataset(10, 4, 17);
  GaConfig cfg;
  cfg.population_size = 16;
  cfg.generations = 25;
  cfg.seed = 8;
  const AttackOutcome out = ga_optimize(d, MethodUnderTest::make(MethodId::MAZ), 2, cfg);
  REQUIRE(out.history.size() == 26);
  for (std::size_t g = 1; g < out.history.size(); ++g)
    CHECK(out.history[g].best >= out.history[g - 1].best);
  CHECK(out.best_fitness == out.history.back().best);
  CHECK(out.evaluations <= 16 * 26);
  CHECK(out.all_fitness.size() == 16 * 26);
}

TEST_CASE("ga is deterministic given the seed") {
  const Dataset d = small_synth_dataset(8, 3, 23);
  GaConfig cfg;
  cfg.population_size = 12;
  cfg.generations = 10;
  cfg.seed = 77;
  const MethodUnderTest mut = MethodUnderTest::make(MethodId::NoOpt);
  const AttackOutcome a = ga_optimize(d, mut, 2, cfg);
  const AttackOutcome b = ga_optimize(d, mut, 2, cfg);
  CHECK(a.best_attack == b.best_attack);
  CHECK(a.best_fitness == b.best_fitness);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.all_fitness == b.all_fitness);
}

TEST_CASE("random_search basics and determinism") {
  const Dataset d = small_synth_dataset(8, 3, 29);
  const MethodUnderTest mut = MethodUnderTest::make(MethodId::NoOpt);

  const AttackOutcome one = random_search(d, mut, 2, 1, 5);
  CHECK(one.evaluations == 1);
  CHECK(one.all_fitness.size() == 1);
  CHECK(one.best_fitness == one.all_fitness[0]);

  const AttackOutcome a = random_search(d, mut, 2, 300, 6);
  const AttackOutcome b = random_search(d, mut, 2, 300, 6);
  CHECK(a.best_attack == b.best_attack);
  CHECK(a.best_fitness == b.best_fitness);
  for (double f : a.all_fitness) CHECK(f <= a.best_fitness);
}

TEST_CASE("brute force enumerates exactly 5^(K*J) attacks") {
  const Dataset d = manual_dataset(RatingMatrix(2, 1, {3, 3}), {3.0});
  const MethodUnderTest noopt = MethodUnderTest::make(MethodId::NoOpt);
  const AttackOutcome tiny = brute_force_best(d, noopt, 1);
  CHECK(tiny.evaluations == 5);
  // mu = 3: the farthest single rating is 1 -> (3+3+1)/3 = 7/3.
  CHECK(tiny.best_fitness == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const Dataset d2 = manual_dataset(RatingMatrix(2, 2, {3, 3, 3, 3}), {3.0, 3.0});
  CHECK(brute_force_best(d2, noopt, 1).evaluations == 25);

  const Dataset big = small_synth_dataset(6, 20, 31);
  CHECK_THROWS_AS(brute_force_best(big, noopt, 5), std::invalid_argument);
}

TEST_CASE("oracle dominates ga and random search on the same instance") {
  const Dataset d = small_synth_dataset(8, 2, 37);
  for (MethodId id : {MethodId::NoOpt, MethodId::MAZ}) {
    const MethodUnderTest mut = MethodUnderTest::make(id);
    const AttackOutcome oracle = brute_force_best(d, mut, 1);
    GaConfig cfg;
    cfg.population_size = 10;
    cfg.generations = 10;
    cfg.seed = 1;
    CHECK(ga_optimize(d, mut, 1, cfg).best_fitness <= oracle.best_fitness + 1e-12);
    CHECK(random_search(d, mut, 1, 200, 2).best_fitness <= oracle.best_fitness + 1e-12);
  }
}

TEST_CASE("ga finds the exhaustive optimum on a 25-point space almost always") {
  const Dataset d = small_synth_dataset(8, 2, 41);
  const MethodUnderTest mut = MethodUnderTest::make(MethodId::NoOpt);
  const double oracle = brute_force_best(d, mut, 1).best_fitness;

  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GaConfig cfg;
    cfg.population_size = 20;
    cfg.generations = 30;
    cfg.mutation_rate = 0.2;  // ~1 expected mutation per 2-gene child
    cfg.seed = seed;
    if (ga_optimize(d, mut, 1, cfg).best_fitness >= oracle - 1e-9) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("ga config validation") {
  GaConfig cfg;
  cfg.population_size = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.population_size = 150;
  cfg.mutation_rate = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.mutation_rate = 0.005;
  CHECK(cfg.elite_count() == 5);  // round(0.03 * 150)
  cfg.elitism_rate = 0.0;
  CHECK(cfg.elite_count() == 1);  // floor of one elite
}
