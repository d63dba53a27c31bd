#include "acr/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "acr/csv.hpp"

namespace acr {

void ParameterPool::validate() const {
  if (biases.size() != inconsistencies.size())
    throw ConfigError("pool: bias and inconsistency counts differ");
  if (biases.empty()) throw ConfigError("pool: no subject entries");
  if (mos_values.empty()) throw ConfigError("pool: no mos entries");
  for (double v : inconsistencies)
    if (!(v >= 0.0)) throw ConfigError("pool: inconsistency must be >= 0");
}

void SimConfig::validate() const {
  if (observers < 2) throw ConfigError("sim: need at least 2 observers");
  if (stimuli < 1) throw ConfigError("sim: need at least 1 stimulus");
}

namespace {

// Strips comments and whitespace; returns false for lines to skip.
bool clean_line(std::string& line) {
  if (const auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
    line.pop_back();
  std::size_t start = 0;
  while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
  line.erase(0, start);
  return !line.empty();
}

double parse_real(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    if (!std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a real number, got '" + text + "'");
  }
}

}  // namespace

ParameterPool load_pool(std::istream& in, const std::string& source_name) {
  ParameterPool pool;
  enum class Section { None, Subjects, Mos } section = Section::None;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!clean_line(line)) continue;
    const std::string where = source_name + " line " + std::to_string(line_no);

    if (line == "[subjects]") {
      section = Section::Subjects;
      continue;
    }
    if (line == "[mos]") {
      section = Section::Mos;
      continue;
    }
    if (line.front() == '[')
      throw ConfigError(where + ": unknown section " + line);

    switch (section) {
      case Section::None:
        throw ConfigError(where + ": data before any [subjects]/[mos] section");
      case Section::Subjects: {
        const auto comma = line.find(',');
        if (comma == std::string::npos)
          throw ConfigError(where + ": expected 'bias,inconsistency'");
        const double bias = parse_real(line.substr(0, comma), where);
        const double inc = parse_real(line.substr(comma + 1), where);
        if (inc < 0.0)
          throw ConfigError(where + ": inconsistency must be >= 0, got " + line.substr(comma + 1));
        pool.biases.push_back(bias);
        pool.inconsistencies.push_back(inc);
        break;
      }
      case Section::Mos:
        pool.mos_values.push_back(parse_real(line, where));
        break;
    }
  }
  pool.validate();
  return pool;
}

ParameterPool load_pool_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pool file " + path);
  return load_pool(in, path);
}

std::string pool_to_text(const ParameterPool& pool) {
  std::ostringstream out;
  out << "[subjects]\n";
  out.precision(17);
  for (std::size_t i = 0; i < pool.subjects(); ++i)
    out << pool.biases[i] << ',' << pool.inconsistencies[i] << '\n';
  out << "[mos]\n";
  for (double m : pool.mos_values) out << m << '\n';
  return out.str();
}

ParameterPool synth_pool(std::size_t n_subjects, std::size_t n_items, std::uint64_t seed,
                         const SynthPoolParams& params) {
  if (n_subjects < 1 || n_items < 1)
    throw ConfigError("synth_pool: counts must be >= 1");
  Rng rng(seed);
  ParameterPool pool;
  pool.biases.reserve(n_subjects);
  pool.inconsistencies.reserve(n_subjects);
  pool.mos_values.reserve(n_items);
  for (std::size_t i = 0; i < n_subjects; ++i) {
    pool.biases.push_back(rng.normal(0.0, params.bias_sigma));
    pool.inconsistencies.push_back(
        std::abs(rng.normal(params.inconsistency_mean, params.inconsistency_sigma)));
  }
  for (std::size_t j = 0; j < n_items; ++j)
    pool.mos_values.push_back(params.mos_low + (params.mos_high - params.mos_low) * rng.uniform());
  pool.validate();
  return pool;
}

int sample_rating(double mu, double delta, double v, Rng& rng) {
  const double raw = mu + delta + v * rng.normal();
  // Round half away from zero, then clamp into the scale.
  const double rounded = std::round(raw);
  const int r = static_cast<int>(rounded);
  return std::clamp(r, kMinRating, kMaxRating);
}

Dataset sample_dataset(const ParameterPool& pool, const SimConfig& cfg) {
  cfg.validate();
  pool.validate();
  if (pool.subjects() < cfg.observers)
    throw ConfigError("pool has " + std::to_string(pool.subjects()) + " subjects, need " +
                      std::to_string(cfg.observers));
  if (pool.items() < cfg.stimuli)
    throw ConfigError("pool has " + std::to_string(pool.items()) + " mos values, need " +
                      std::to_string(cfg.stimuli));

  Rng rng(cfg.seed);
  const auto subject_idx = rng.sample_without_replacement(pool.subjects(), cfg.observers);
  const auto item_idx = rng.sample_without_replacement(pool.items(), cfg.stimuli);

  std::vector<double> bias(cfg.observers), inc(cfg.observers), mu(cfg.stimuli);
  for (std::size_t i = 0; i < cfg.observers; ++i) {
    bias[i] = pool.biases[subject_idx[i]];
    inc[i] = pool.inconsistencies[subject_idx[i]];
  }
  for (std::size_t j = 0; j < cfg.stimuli; ++j) mu[j] = pool.mos_values[item_idx[j]];

  std::vector<int> entries(cfg.observers * cfg.stimuli);
  for (std::size_t i = 0; i < cfg.observers; ++i)
    for (std::size_t j = 0; j < cfg.stimuli; ++j)
      entries[i * cfg.stimuli + j] = sample_rating(mu[j], bias[i], inc[i], rng);

  return Dataset(RatingMatrix(cfg.observers, cfg.stimuli, std::move(entries)),
                 GroundTruth(std::move(mu)), SubjectParams(std::move(bias), std::move(inc)),
                 cfg.seed);
}

RatingMatrix uniform_rating_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<int> entries(rows * cols);
  for (int& e : entries) e = rng.uniform_int(kMinRating, kMaxRating);
  return RatingMatrix(rows, cols, std::move(entries));
}

AttackMatrix make_spammers(std::size_t attackers, std::size_t stimuli, std::uint64_t seed) {
  if (attackers < 1 || stimuli < 1)
    throw std::invalid_argument("make_spammers: counts must be >= 1");
  Rng rng(seed);
  return AttackMatrix(uniform_rating_matrix(attackers, stimuli, rng));
}

}  // namespace acr
