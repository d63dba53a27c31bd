// Command-line front end: dataset simulation, outlier detection, scale
// reconstruction, adversarial attacks, and the full experiment harness.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "acr/csv.hpp"
#include "acr/ga.hpp"
#include "acr/harness.hpp"
#include "acr/hard_detect.hpp"
#include "acr/method.hpp"
#include "acr/metrics.hpp"
#include "acr/sim.hpp"
#include "acr/soft_recon.hpp"

namespace {

using acr::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw acr::ConfigError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw acr::ConfigError(path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

struct SimulateArgs {
  std::string pool_file;
  bool synth = false;
  std::size_t pool_subjects = 400;
  std::size_t pool_items = 600;
  std::uint64_t pool_seed = 0;
  std::size_t subjects = 30;
  std::size_t items = 20;
  std::uint64_t seed = 0;
  std::string out;
  std::string meta;
};

int cmd_simulate(const SimulateArgs& a) {
  if (a.pool_file.empty() && !a.synth)
    throw acr::ConfigError("simulate: need --pool FILE or --synth");
  const acr::ParameterPool pool = a.pool_file.empty()
                                      ? acr::synth_pool(a.pool_subjects, a.pool_items, a.pool_seed)
                                      : acr::load_pool_file(a.pool_file);
  const acr::Dataset ds = acr::sample_dataset(pool, {a.subjects, a.items, a.seed});
  acr::write_rating_matrix_csv(ds.ratings, a.out);
  const std::string meta_path = a.meta.empty() ? a.out + ".meta.json" : a.meta;
  write_json_file(meta_path, acr::dataset_meta_to_json(ds));
  if (!ds.truth.in_recommended_range())
    std::cerr << "warning: ground truth outside [1,5]\n";
  std::cout << "wrote " << a.out << " and " << meta_path << "\n";
  return kExitOk;
}

int cmd_detect(const std::string& method, const std::string& in_path,
               const std::string& config_path) {
  acr::HardDetectorConfig cfg;
  if (!config_path.empty()) cfg = acr::detector_config_from_json(load_json_file(config_path));
  const acr::MethodId id = acr::method_from_name(method);
  if (acr::is_soft(id))
    throw acr::ConfigError("detect: " + method + " is a soft method; use 'reconstruct'");

  const acr::RatingMatrix m = acr::read_rating_matrix_csv(in_path);
  const acr::MethodUnderTest mut = acr::MethodUnderTest::make(id, cfg);
  const acr::DetectionResult res = mut.apply(m);
  std::cout << acr::detection_result_to_json(res, method).dump(2) << "\n";
  return kExitOk;
}

int cmd_reconstruct(const std::string& method, const std::string& in_path,
                    const std::string& mask_path, const std::string& config_path) {
  acr::SoftConfig cfg;
  if (!config_path.empty()) cfg = acr::soft_config_from_json(load_json_file(config_path));
  const acr::RatingMatrix m = acr::read_rating_matrix_csv(in_path);

  json out;
  if (method == "mos") {
    std::vector<bool> mask(m.rows(), true);
    if (!mask_path.empty()) {
      const json mj = load_json_file(mask_path);
      try {
        mask = mj.at("inliers").get<std::vector<bool>>();
      } catch (const json::exception& e) {
        throw acr::ConfigError(mask_path + ": " + e.what());
      }
      if (mask.size() != m.rows())
        throw acr::ConfigError("mask length does not match matrix rows");
    }
    out["method"] = "mos";
    out["scores"] = acr::mos(m, mask);
  } else if (method == "sureal") {
    const auto r = acr::sureal(m, cfg);
    out["method"] = "sureal";
    out["scores"] = r.scores;
    out["row_weights"] = r.row_weights;
    out["bias"] = r.estimate.delta_hat;
    out["inconsistency"] = r.estimate.v_hat;
    out["converged"] = r.converged;
    out["iterations"] = r.iterations;
  } else if (method == "esqr") {
    const auto r = acr::esqr(m, cfg);
    out["method"] = "esqr";
    out["scores"] = r.scores;
    out["row_weights"] = r.row_weights;
  } else if (method == "zrec") {
    const auto r = acr::zrec(m, cfg);
    out["method"] = "zrec";
    out["scores"] = r.scores;
    out["row_weights"] = r.row_weights;
    out["bias"] = r.bias;
    out["inconsistency"] = r.inconsistency;
  } else {
    throw acr::ConfigError("reconstruct: unknown method " + method);
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

struct AttackArgs {
  std::string dataset;
  std::string meta;
  std::string method;
  std::string ga_config;
  std::size_t attackers = 5;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_attack(const AttackArgs& a) {
  acr::GaConfig ga;
  if (!a.ga_config.empty()) ga = acr::ga_config_from_json(load_json_file(a.ga_config));
  if (a.seed) ga.seed = *a.seed;

  acr::RatingMatrix m = acr::read_rating_matrix_csv(a.dataset);
  const std::string meta_path = a.meta.empty() ? a.dataset + ".meta.json" : a.meta;
  const acr::Dataset ds = acr::dataset_from_parts(std::move(m), load_json_file(meta_path));

  const acr::MethodUnderTest mut = acr::MethodUnderTest::make(acr::method_from_name(a.method));
  const acr::AttackOutcome outcome = acr::ga_optimize(ds, mut, a.attackers, ga);
  write_json_file(a.out, acr::attack_outcome_to_json(outcome, a.method, ga.seed));
  std::cout << "best fitness " << outcome.best_fitness << " after " << outcome.evaluations
            << " evaluations -> " << a.out << "\n";
  return kExitOk;
}

acr::ExperimentConfig load_experiment(const std::string& config_path,
                                      const std::optional<std::uint64_t>& seed,
                                      const std::string& out_dir) {
  acr::ExperimentConfig cfg = acr::load_experiment_config(config_path);
  if (seed) cfg.master_seed = *seed;
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  return cfg;
}

int cmd_experiment(bool worst_case, const acr::ExperimentConfig& cfg, const std::string& format) {
  const acr::ExperimentReport report =
      worst_case ? acr::run_worst_case(cfg) : acr::run_spammers(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  acr::save_report(report, cfg.output_dir + "/report.json");
  acr::export_report(report, format, cfg.output_dir);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "clean plain-MOS baseline RMSE: " << acr::format_sig6(report.clean_mos_rmse_mean)
            << "\n";
  for (const auto& m : report.methods)
    std::cout << m.method << ": mean RMSE " << acr::format_sig6(m.mean_rmse) << ", mean RMSD "
              << acr::format_sig6(m.mean_rmsd) << "\n";
  std::cout << "report in " << cfg.output_dir << "\n";
  return kExitOk;
}

int cmd_ablation(const acr::ExperimentConfig& cfg, const std::string& method,
                 const std::string& out_path) {
  const acr::AblationResult res = acr::run_ablation(cfg, acr::method_from_name(method));
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << "ga,random\n";
  for (std::size_t i = 0; i < res.ga_fitness.size(); ++i)
    out << acr::format_sig6(res.ga_fitness[i]) << ',' << acr::format_sig6(res.random_fitness[i])
        << "\n";
  std::cout << "wrote " << res.ga_fitness.size() << " evaluation pairs to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial stress testing of MOS outlier detection"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Sample a synthetic ACR dataset");
  simulate->add_option("--pool", sim.pool_file, "Parameter pool file");
  simulate->add_flag("--synth", sim.synth, "Use the synthetic parameter pool");
  simulate->add_option("--pool-subjects", sim.pool_subjects, "Synthetic pool subject count");
  simulate->add_option("--pool-items", sim.pool_items, "Synthetic pool item count");
  simulate->add_option("--pool-seed", sim.pool_seed, "Synthetic pool seed");
  simulate->add_option("--subjects", sim.subjects, "Observers I")->required();
  simulate->add_option("--items", sim.items, "Stimuli J")->required();
  simulate->add_option("--seed", sim.seed, "Dataset seed");
  simulate->add_option("--out", sim.out, "Output ratings CSV")->required();
  simulate->add_option("--meta", sim.meta, "Output meta JSON (default: <out>.meta.json)");

  std::string det_method, det_in, det_config;
  auto* detect_cmd = app.add_subcommand("detect", "Run a hard outlier detector");
  detect_cmd->add_option("--method", det_method, "NoOpt|KB|CB|LPCC|HB|MAZ|NLL")->required();
  detect_cmd->add_option("--in", det_in, "Ratings CSV")->required();
  detect_cmd->add_option("--config", det_config, "Detector config JSON");

  std::string rec_method, rec_in, rec_mask, rec_config;
  auto* rec = app.add_subcommand("reconstruct", "Reconstruct per-stimulus scores");
  rec->add_option("--method", rec_method, "mos|sureal|esqr|zrec")->required();
  rec->add_option("--in", rec_in, "Ratings CSV")->required();
  rec->add_option("--mask", rec_mask, "Inlier mask JSON (mos only)");
  rec->add_option("--config", rec_config, "Solver config JSON");

  AttackArgs atk;
  auto* attack = app.add_subcommand("attack", "GA attack against one method");
  attack->add_option("--dataset", atk.dataset, "Ratings CSV")->required();
  attack->add_option("--meta", atk.meta, "Dataset meta JSON (default: <dataset>.meta.json)");
  attack->add_option("--method", atk.method, "Method under test")->required();
  attack->add_option("--ga-config", atk.ga_config, "GA config JSON");
  attack->add_option("--attackers", atk.attackers, "Attacker count K");
  attack->add_option("--seed", atk.seed, "GA seed override");
  attack->add_option("--out", atk.out, "Outcome JSON path")->required();

  std::string exp_config, exp_out_dir, exp_format = "csv";
  std::optional<std::uint64_t> exp_seed;
  auto* worst = app.add_subcommand("worst-case", "GA worst-case experiment over many datasets");
  worst->add_option("--config", exp_config, "Experiment config JSON")->required();
  worst->add_option("--out-dir", exp_out_dir, "Output directory override");
  worst->add_option("--format", exp_format, "Summary format: csv|json");
  worst->add_option("--seed", exp_seed, "Master seed override");

  std::string spam_config, spam_out_dir, spam_format = "csv";
  std::optional<std::uint64_t> spam_seed;
  auto* spam = app.add_subcommand("spam-eval", "Random-spammer experiment over many datasets");
  spam->add_option("--config", spam_config, "Experiment config JSON")->required();
  spam->add_option("--out-dir", spam_out_dir, "Output directory override");
  spam->add_option("--format", spam_format, "Summary format: csv|json");
  spam->add_option("--seed", spam_seed, "Master seed override");

  std::string abl_config, abl_method = "KB", abl_out;
  std::optional<std::uint64_t> abl_seed;
  auto* abl = app.add_subcommand("ablation", "GA vs equal-budget random search densities");
  abl->add_option("--config", abl_config, "Experiment config JSON")->required();
  abl->add_option("--method", abl_method, "Method under test");
  abl->add_option("--out", abl_out, "Output CSV path")->required();
  abl->add_option("--seed", abl_seed, "Master seed override");

  std::string rep_in, rep_format = "csv", rep_out_dir;
  auto* rep = app.add_subcommand("report", "Re-export a saved report");
  rep->add_option("--in", rep_in, "report.json path")->required();
  rep->add_option("--format", rep_format, "csv|json");
  rep->add_option("--out-dir", rep_out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (detect_cmd->parsed()) return cmd_detect(det_method, det_in, det_config);
    if (rec->parsed()) return cmd_reconstruct(rec_method, rec_in, rec_mask, rec_config);
    if (attack->parsed()) return cmd_attack(atk);
    if (worst->parsed())
      return cmd_experiment(true, load_experiment(exp_config, exp_seed, exp_out_dir), exp_format);
    if (spam->parsed())
      return cmd_experiment(false, load_experiment(spam_config, spam_seed, spam_out_dir),
                            spam_format);
    if (abl->parsed())
      return cmd_ablation(load_experiment(abl_config, abl_seed, ""), abl_method, abl_out);
    if (rep->parsed()) {
      acr::export_report(acr::load_report(rep_in), rep_format, rep_out_dir);
      std::cout << "exported to " << rep_out_dir << "\n";
      return kExitOk;
    }
  } catch (const acr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
