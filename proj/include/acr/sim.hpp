#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "acr/rng.hpp"
#include "acr/types.hpp"

namespace acr {

// Pool of generative parameters datasets are sampled from. (bias,
// inconsistency) entries are paired per subject; mos_values are per item.
struct ParameterPool {
  std::vector<double> biases;
  std::vector<double> inconsistencies;
  std::vector<double> mos_values;

  void validate() const;
  std::size_t subjects() const { return biases.size(); }
  std::size_t items() const { return mos_values.size(); }
};

struct SimConfig {
  std::size_t observers = 30;  // I
  std::size_t stimuli = 20;    // J
  std::uint64_t seed = 0;

  void validate() const;
};

// Distribution parameters for the synthetic pool generator. Kept in config so
// a real parameter pool file can replace the synthetic one without touching
// code.
struct SynthPoolParams {
  double bias_sigma = 0.3;
  double inconsistency_mean = 0.55;
  double inconsistency_sigma = 0.2;
  double mos_low = 1.2;
  double mos_high = 4.8;
};

// Pool file format: '#' comments, a [subjects] section of "bias,inconsistency"
// lines and a [mos] section of one value per line.
ParameterPool load_pool(std::istream& in, const std::string& source_name = "<stream>");
ParameterPool load_pool_file(const std::string& path);
std::string pool_to_text(const ParameterPool& pool);

ParameterPool synth_pool(std::size_t n_subjects, std::size_t n_items, std::uint64_t seed,
                         const SynthPoolParams& params = {});

// One rating: round mu+delta+v*X half away from zero, then clamp into 1..5.
int sample_rating(double mu, double delta, double v, Rng& rng);

// Draw I (bias, inconsistency) pairs and J mos values uniformly without
// replacement, then fill the I x J matrix.
Dataset sample_dataset(const ParameterPool& pool, const SimConfig& cfg);

// Uniform random K x J matrix drawn from an existing stream.
RatingMatrix uniform_rating_matrix(std::size_t rows, std::size_t cols, Rng& rng);

// K spammers submitting i.i.d. uniform ACR ratings.
AttackMatrix make_spammers(std::size_t attackers, std::size_t stimuli, std::uint64_t seed);

}  // namespace acr
