#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acr/ga.hpp"
#include "acr/method.hpp"
#include "acr/sim.hpp"
#include "acr/types.hpp"

namespace acr {

using json = nlohmann::ordered_json;

// Where datasets come from: a pool file, or the synthetic generator.
struct PoolSpec {
  std::string file;  // non-empty selects the file source
  std::size_t synth_subjects = 400;
  std::size_t synth_items = 600;
  std::uint64_t synth_seed = 0;
  SynthPoolParams synth_params;

  ParameterPool realize() const;
};

struct ExperimentConfig {
  PoolSpec pool;
  std::size_t n_datasets = 250;
  std::size_t observers = 30;  // I
  std::size_t stimuli = 20;    // J
  std::size_t attackers = 5;   // K
  std::vector<MethodId> methods = all_methods();
  GaConfig ga;
  HardDetectorConfig detector;
  SoftConfig soft;
  std::uint64_t master_seed = 0;
  std::size_t parallelism = 0;  // 0 = hardware concurrency
  std::string output_dir = "out";

  void validate(bool allow_zero_attackers = false) const;

  // Derived seeds; stable per (master_seed, dataset, method id), so adding or
  // reordering methods never perturbs existing results.
  std::uint64_t dataset_seed(std::size_t dataset_index) const;
  std::uint64_t attack_seed(std::size_t dataset_index, MethodId id) const;
  std::uint64_t spam_seed(std::size_t dataset_index) const;
};

ExperimentConfig experiment_config_from_json(const json& j);
ExperimentConfig load_experiment_config(const std::string& path);
json experiment_config_to_json(const ExperimentConfig& cfg);

struct MethodDatasetRow {
  std::size_t dataset_index = 0;
  std::uint64_t dataset_seed = 0;
  std::uint64_t attack_seed = 0;
  double rmse = 0.0;
  double rmsd = 0.0;
  std::optional<double> fpr, fnr, acc;  // hard methods only
  double rai = 0.0;
};

struct MethodAggregate {
  std::string method;
  double mean_rmse = 0.0;
  double mean_rmsd = 0.0;
  std::optional<double> mean_fpr, mean_fnr, mean_acc;
  double mean_rai = 0.0;
  std::size_t rmse_rank = 0;  // 1 = most accurate
  std::size_t rmsd_rank = 0;  // 1 = most robust
  std::vector<MethodDatasetRow> rows;
};

struct ExperimentReport {
  std::string kind;  // "worst-case" or "spammers"
  json config_echo;
  double clean_mos_rmse_mean = 0.0;
  std::vector<MethodAggregate> methods;  // sorted by mean_rmse ascending
  std::vector<std::string> warnings;
};

// The main experiment: GA worst-case attack per (dataset, method).
ExperimentReport run_worst_case(const ExperimentConfig& cfg);

// The literature-style experiment: random spammers instead of the GA.
// attackers == 0 is allowed here and yields RMSD == 0 for every method.
ExperimentReport run_spammers(const ExperimentConfig& cfg);

// One GA run and one equal-budget random search on dataset 0; per-evaluation
// fitness values for density plots.
struct AblationResult {
  std::vector<double> ga_fitness;
  std::vector<double> random_fitness;
};
AblationResult run_ablation(const ExperimentConfig& cfg, MethodId method);

// Full-fidelity report round-trip.
json report_to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const json& j);
void save_report(const ExperimentReport& r, const std::string& path);
ExperimentReport load_report(const std::string& path);

// summary.(csv|json), one density_<method>.csv per method, config.echo.json.
// Numbers carry 6 significant digits; re-export is byte-identical.
void export_report(const ExperimentReport& r, const std::string& format,
                   const std::string& out_dir);

// Small persistence helpers shared with the CLI.
json dataset_meta_to_json(const Dataset& d);
Dataset dataset_from_parts(RatingMatrix m, const json& meta);
json detection_result_to_json(const DetectionResult& res, const std::string& method);
json attack_outcome_to_json(const AttackOutcome& o, const std::string& method,
                            std::uint64_t seed);
GaConfig ga_config_from_json(const json& j);
HardDetectorConfig detector_config_from_json(const json& j);
SoftConfig soft_config_from_json(const json& j);

std::string format_sig6(double v);

}  // namespace acr
