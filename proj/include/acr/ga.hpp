#pragma once

#include <cstdint>
#include <vector>

#include "acr/method.hpp"
#include "acr/types.hpp"

namespace acr {

struct GaConfig {
  std::size_t population_size = 150;
  std::size_t generations = 300;
  double mutation_rate = 0.005;  // per gene
  double elitism_rate = 0.03;
  std::uint64_t seed = 0;
  int children_per_pair = 2;             // 1 or 2
  bool selection_with_replacement = true;

  std::size_t elite_count() const;  // round(elitism_rate * population), at least 1
  void validate() const;
};

struct GenerationStats {
  double best = 0.0;
  double mean = 0.0;
};

struct AttackOutcome {
  AttackMatrix best_attack;
  double best_fitness = 0.0;
  std::vector<GenerationStats> history;  // one entry per evaluated generation
  std::vector<double> all_fitness;       // every individual, generation order
  std::size_t evaluations = 0;           // distinct fitness computations

  explicit AttackOutcome(AttackMatrix a) : best_attack(std::move(a)) {}
};

// Ground-truth RMSE of the reconstruction after stacking the attack onto the
// dataset and running the method. The GA maximizes this.
double fitness(const AttackMatrix& a, const Dataset& d, const MethodUnderTest& mut);

// Roulette selection, row/column-swap crossover, per-gene mutation, elitism.
AttackOutcome ga_optimize(const Dataset& d, const MethodUnderTest& mut, std::size_t attackers,
                          const GaConfig& cfg);

// Baseline: the best of `budget` i.i.d. uniform attacks.
AttackOutcome random_search(const Dataset& d, const MethodUnderTest& mut, std::size_t attackers,
                            std::size_t budget, std::uint64_t seed);

// Exhaustive enumeration for tiny instances (5^(K*J) bounded).
AttackOutcome brute_force_best(const Dataset& d, const MethodUnderTest& mut,
                               std::size_t attackers);

}  // namespace acr
