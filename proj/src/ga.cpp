#include "acr/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "acr/metrics.hpp"
#include "acr/rng.hpp"
#include "acr/sim.hpp"
#include "acr/stats.hpp"

namespace acr {

std::size_t GaConfig::elite_count() const {
  const auto n = static_cast<std::size_t>(
      std::llround(elitism_rate * static_cast<double>(population_size)));
  return std::max<std::size_t>(1, n);
}

void GaConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("ga: population must be >= 2");
  if (mutation_rate < 0 || mutation_rate > 1)
    throw std::invalid_argument("ga: mutation rate must be in [0,1]");
  if (elitism_rate < 0 || elitism_rate > 1)
    throw std::invalid_argument("ga: elitism rate must be in [0,1]");
  if (children_per_pair != 1 && children_per_pair != 2)
    throw std::invalid_argument("ga: children per pair must be 1 or 2");
  if (elite_count() >= population_size)
    throw std::invalid_argument("ga: elite count must leave room for offspring");
}

double fitness(const AttackMatrix& a, const Dataset& d, const MethodUnderTest& mut) {
  const StackedMatrix s = stack(d, a);
  const DetectionResult res = mut.apply(s.ratings);
  return rmse(res.reconstructed, d.truth);
}

namespace {

std::string genome_key(const RatingMatrix& m) {
  std::string key;
  key.reserve(m.data().size());
  for (int v : m.data()) key.push_back(static_cast<char>(v));
  return key;
}

class FitnessEvaluator {
 public:
  FitnessEvaluator(const Dataset& d, const MethodUnderTest& mut) : d_(d), mut_(mut) {}

  double evaluate_cached(const RatingMatrix& genome,
                         std::unordered_map<std::string, double>& cache) {
    const std::string key = genome_key(genome);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;
    const double f = fitness(AttackMatrix(genome), d_, mut_);
    ++evaluations_;
    cache.emplace(std::move(key), f);
    return f;
  }

  double evaluate(const RatingMatrix& genome) {
    ++evaluations_;
    return fitness(AttackMatrix(genome), d_, mut_);
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const Dataset& d_;
  const MethodUnderTest& mut_;
  std::size_t evaluations_ = 0;
};

// Roulette wheel over raw fitness (RMSE is >= 0); degenerates to uniform when
// every fitness is zero.
std::size_t roulette(const std::vector<double>& cumulative, double total, Rng& rng) {
  const std::size_t n = cumulative.size();
  if (total <= 0.0) return rng.uniform_index(n);
  const double u = rng.uniform() * total;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  const auto idx = static_cast<std::size_t>(it - cumulative.begin());
  return std::min(idx, n - 1);
}

// Swap a random set of rows, then a random set of columns, between the two
// parents. Both children use the same row/column choice.
std::pair<RatingMatrix, RatingMatrix> crossover(const RatingMatrix& a, const RatingMatrix& b,
                                                Rng& rng) {
  const std::size_t K = a.rows(), J = a.cols();
  const auto n_rows = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(K)));
  const auto rows = rng.sample_without_replacement(K, n_rows);
  const auto n_cols = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(J)));
  const auto cols = rng.sample_without_replacement(J, n_cols);

  RatingMatrix c1 = a, c2 = b;
  for (std::size_t r : rows)
    for (std::size_t j = 0; j < J; ++j) {
      c1.set(r, j, b.at(r, j));
      c2.set(r, j, a.at(r, j));
    }
  for (std::size_t c : cols)
    for (std::size_t i = 0; i < K; ++i) {
      c1.set(i, c, b.at(i, c));
      c2.set(i, c, a.at(i, c));
    }
  return {std::move(c1), std::move(c2)};
}

void mutate(RatingMatrix& m, double rate, Rng& rng) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (rng.uniform() < rate) m.set(i, j, rng.uniform_int(kMinRating, kMaxRating));
}

GenerationStats stats_of(const std::vector<double>& fit) {
  GenerationStats g;
  g.best = *std::max_element(fit.begin(), fit.end());
  g.mean = mean(fit);
  return g;
}

}  // namespace

AttackOutcome ga_optimize(const Dataset& d, const MethodUnderTest& mut, std::size_t attackers,
                          const GaConfig& cfg) {
  cfg.validate();
  if (attackers < 1) throw std::invalid_argument("ga: need at least one attacker");
  const std::size_t J = d.ratings.cols();
  const std::size_t pop_size = cfg.population_size;
  const std::size_t elite = cfg.elite_count();

  Rng rng(cfg.seed);
  FitnessEvaluator eval(d, mut);

  std::vector<RatingMatrix> pop;
  pop.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i)
    pop.push_back(uniform_rating_matrix(attackers, J, rng));

  std::vector<double> fit(pop_size);
  AttackOutcome out{AttackMatrix(pop[0])};
  out.all_fitness.reserve(pop_size * (cfg.generations + 1));

  {
    std::unordered_map<std::string, double> cache;
    for (std::size_t i = 0; i < pop_size; ++i) fit[i] = eval.evaluate_cached(pop[i], cache);
  }
  out.history.push_back(stats_of(fit));
  out.all_fitness.insert(out.all_fitness.end(), fit.begin(), fit.end());

  std::vector<std::size_t> order(pop_size);
  for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
    // Rank by fitness, stable so ties keep the lower index first.
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return fit[x] > fit[y]; });

    std::vector<RatingMatrix> next;
    std::vector<double> next_fit;
    next.reserve(pop_size);
    next_fit.reserve(pop_size);

    std::unordered_map<std::string, double> cache;
    for (std::size_t e = 0; e < elite; ++e) {
      next.push_back(pop[order[e]]);
      next_fit.push_back(fit[order[e]]);
      cache.emplace(genome_key(pop[order[e]]), fit[order[e]]);
    }

    std::vector<double> cumulative(pop_size);
    double total = 0.0;
    for (std::size_t i = 0; i < pop_size; ++i) {
      total += fit[i];
      cumulative[i] = total;
    }

    while (next.size() < pop_size) {
      const std::size_t pa = roulette(cumulative, total, rng);
      std::size_t pb = roulette(cumulative, total, rng);
      if (!cfg.selection_with_replacement && pop_size > 1) {
        for (int tries = 0; pb == pa && tries < 100; ++tries)
          pb = roulette(cumulative, total, rng);
        if (pb == pa) pb = (pa + 1) % pop_size;
      }

      auto [c1, c2] = crossover(pop[pa], pop[pb], rng);
      mutate(c1, cfg.mutation_rate, rng);
      next.push_back(std::move(c1));
      next_fit.push_back(eval.evaluate_cached(next.back(), cache));
      if (cfg.children_per_pair == 2 && next.size() < pop_size) {
        mutate(c2, cfg.mutation_rate, rng);
        next.push_back(std::move(c2));
        next_fit.push_back(eval.evaluate_cached(next.back(), cache));
      }
    }

    pop = std::move(next);
    fit = std::move(next_fit);
    out.history.push_back(stats_of(fit));
    out.all_fitness.insert(out.all_fitness.end(), fit.begin(), fit.end());
  }

  // Best of the final generation; elitism makes it the best seen overall.
  std::size_t best_idx = 0;
  for (std::size_t i = 1; i < pop_size; ++i)
    if (fit[i] > fit[best_idx]) best_idx = i;
  out.best_attack = AttackMatrix(pop[best_idx]);
  out.best_fitness = fit[best_idx];
  out.evaluations = eval.evaluations();
  return out;
}

AttackOutcome random_search(const Dataset& d, const MethodUnderTest& mut, std::size_t attackers,
                            std::size_t budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("random_search: budget must be >= 1");
  if (attackers < 1) throw std::invalid_argument("random_search: need at least one attacker");

  Rng rng(seed);
  FitnessEvaluator eval(d, mut);

  AttackOutcome out{AttackMatrix(uniform_rating_matrix(attackers, d.ratings.cols(), rng))};
  out.best_fitness = eval.evaluate(out.best_attack.ratings);
  out.all_fitness.reserve(budget);
  out.all_fitness.push_back(out.best_fitness);

  for (std::size_t i = 1; i < budget; ++i) {
    RatingMatrix candidate = uniform_rating_matrix(attackers, d.ratings.cols(), rng);
    const double f = eval.evaluate(candidate);
    out.all_fitness.push_back(f);
    if (f > out.best_fitness) {
      out.best_fitness = f;
      out.best_attack = AttackMatrix(std::move(candidate));
    }
  }
  out.history.push_back(stats_of(out.all_fitness));
  out.evaluations = eval.evaluations();
  return out;
}

AttackOutcome brute_force_best(const Dataset& d, const MethodUnderTest& mut,
                               std::size_t attackers) {
  if (attackers < 1) throw std::invalid_argument("brute_force: need at least one attacker");
  const std::size_t J = d.ratings.cols();
  const std::size_t genes = attackers * J;

  constexpr double kMaxInstances = 1e7;
  const double instances = std::pow(5.0, static_cast<double>(genes));
  if (instances > kMaxInstances)
    throw std::invalid_argument("brute_force: 5^" + std::to_string(genes) +
                                " attacks exceed the 1e7 enumeration bound");

  FitnessEvaluator eval(d, mut);
  RatingMatrix genome = RatingMatrix::filled(attackers, J, kMinRating);

  AttackOutcome out{AttackMatrix(genome)};
  out.best_fitness = eval.evaluate(genome);
  double sum = out.best_fitness;

  // Odometer enumeration over all 5^(K*J) matrices.
  std::vector<int> digits(genes, 0);
  while (true) {
    std::size_t pos = 0;
    while (pos < genes && digits[pos] == kNumLevels - 1) {
      digits[pos] = 0;
      genome.set(pos / J, pos % J, kMinRating);
      ++pos;
    }
    if (pos == genes) break;
    ++digits[pos];
    genome.set(pos / J, pos % J, kMinRating + digits[pos]);

    const double f = eval.evaluate(genome);
    sum += f;
    if (f > out.best_fitness) {
      out.best_fitness = f;
      out.best_attack = AttackMatrix(genome);
    }
  }

  out.evaluations = eval.evaluations();
  out.history.push_back(
      {out.best_fitness, sum / static_cast<double>(eval.evaluations())});
  return out;
}

}  // namespace acr
