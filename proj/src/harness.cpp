#include "acr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "acr/csv.hpp"
#include "acr/metrics.hpp"
#include "acr/soft_recon.hpp"
#include "acr/stats.hpp"

namespace acr {

namespace fs = std::filesystem;

ParameterPool PoolSpec::realize() const {
  if (!file.empty()) return load_pool_file(file);
  return synth_pool(synth_subjects, synth_items, synth_seed, synth_params);
}

void ExperimentConfig::validate(bool allow_zero_attackers) const {
  if (n_datasets < 1) throw ConfigError("config: datasets must be >= 1");
  if (observers < 2) throw ConfigError("config: observers must be >= 2");
  if (stimuli < 1) throw ConfigError("config: items must be >= 1");
  if (attackers < 1 && !allow_zero_attackers)
    throw ConfigError("config: attackers must be >= 1");
  if (methods.empty()) throw ConfigError("config: method list is empty");
  ga.validate();
  detector.validate();
  soft.validate();
}

std::uint64_t ExperimentConfig::dataset_seed(std::size_t dataset_index) const {
  return derive_seed(derive_seed(master_seed, kStreamDataset), dataset_index);
}

std::uint64_t ExperimentConfig::attack_seed(std::size_t dataset_index, MethodId id) const {
  return derive_seed(derive_seed(derive_seed(master_seed, kStreamAttack), dataset_index),
                     static_cast<std::uint64_t>(id));
}

std::uint64_t ExperimentConfig::spam_seed(std::size_t dataset_index) const {
  return derive_seed(derive_seed(master_seed, kStreamSpam), dataset_index);
}

// -- config (de)serialization ------------------------------------------------

namespace {

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

}  // namespace

GaConfig ga_config_from_json(const json& j) {
  GaConfig ga;
  ga.population_size = get_or<std::size_t>(j, "population", ga.population_size);
  ga.generations = get_or<std::size_t>(j, "generations", ga.generations);
  ga.mutation_rate = get_or<double>(j, "mutation_rate", ga.mutation_rate);
  ga.elitism_rate = get_or<double>(j, "elitism_rate", ga.elitism_rate);
  ga.seed = get_or<std::uint64_t>(j, "seed", ga.seed);
  ga.children_per_pair = get_or<int>(j, "children_per_pair", ga.children_per_pair);
  ga.selection_with_replacement =
      get_or<bool>(j, "selection_with_replacement", ga.selection_with_replacement);
  return ga;
}

HardDetectorConfig detector_config_from_json(const json& j) {
  HardDetectorConfig d;
  d.lpcc_threshold = get_or<double>(j, "lpcc_threshold", d.lpcc_threshold);
  d.maz_threshold = get_or<double>(j, "maz_threshold", d.maz_threshold);
  d.nll_threshold = get_or<double>(j, "nll_threshold", d.nll_threshold);
  d.nll_alpha = get_or<double>(j, "nll_alpha", d.nll_alpha);
  d.hb_outlier_count = get_or<std::size_t>(j, "hb_outlier_count", d.hb_outlier_count);
  d.kb_extreme_fraction = get_or<double>(j, "kb_extreme_fraction", d.kb_extreme_fraction);
  d.kb_balance_ratio = get_or<double>(j, "kb_balance_ratio", d.kb_balance_ratio);
  d.kb_normal_factor = get_or<double>(j, "kb_normal_factor", d.kb_normal_factor);
  d.kb_kurtosis_low = get_or<double>(j, "kb_kurtosis_low", d.kb_kurtosis_low);
  d.kb_kurtosis_high = get_or<double>(j, "kb_kurtosis_high", d.kb_kurtosis_high);
  d.cb_std_coefficient = get_or<double>(j, "cb_std_coefficient", d.cb_std_coefficient);
  return d;
}

SoftConfig soft_config_from_json(const json& j) {
  SoftConfig s;
  s.max_iterations = get_or<std::size_t>(j, "max_iterations", s.max_iterations);
  s.convergence_tol = get_or<double>(j, "convergence_tol", s.convergence_tol);
  s.esqr_surprise_floor = get_or<double>(j, "esqr_surprise_floor", s.esqr_surprise_floor);
  s.smoothing_alpha = get_or<double>(j, "smoothing_alpha", s.smoothing_alpha);
  s.min_inconsistency = get_or<double>(j, "min_inconsistency", s.min_inconsistency);
  return s;
}

ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig cfg;
  if (j.contains("pool")) {
    const json& p = j.at("pool");
    cfg.pool.file = get_or<std::string>(p, "file", "");
    if (p.contains("synth")) {
      const json& s = p.at("synth");
      cfg.pool.synth_subjects = get_or<std::size_t>(s, "subjects", cfg.pool.synth_subjects);
      cfg.pool.synth_items = get_or<std::size_t>(s, "items", cfg.pool.synth_items);
      cfg.pool.synth_seed = get_or<std::uint64_t>(s, "seed", cfg.pool.synth_seed);
      cfg.pool.synth_params.bias_sigma =
          get_or<double>(s, "bias_sigma", cfg.pool.synth_params.bias_sigma);
      cfg.pool.synth_params.inconsistency_mean =
          get_or<double>(s, "inconsistency_mean", cfg.pool.synth_params.inconsistency_mean);
      cfg.pool.synth_params.inconsistency_sigma =
          get_or<double>(s, "inconsistency_sigma", cfg.pool.synth_params.inconsistency_sigma);
      cfg.pool.synth_params.mos_low = get_or<double>(s, "mos_low", cfg.pool.synth_params.mos_low);
      cfg.pool.synth_params.mos_high =
          get_or<double>(s, "mos_high", cfg.pool.synth_params.mos_high);
    }
  }
  cfg.n_datasets = get_or<std::size_t>(j, "datasets", cfg.n_datasets);
  cfg.observers = get_or<std::size_t>(j, "observers", cfg.observers);
  cfg.stimuli = get_or<std::size_t>(j, "items", cfg.stimuli);
  cfg.attackers = get_or<std::size_t>(j, "attackers", cfg.attackers);
  if (j.contains("methods")) {
    cfg.methods.clear();
    for (const auto& name : j.at("methods")) {
      try {
        cfg.methods.push_back(method_from_name(name.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (j.contains("ga")) cfg.ga = ga_config_from_json(j.at("ga"));
  if (j.contains("detector")) cfg.detector = detector_config_from_json(j.at("detector"));
  if (j.contains("soft")) cfg.soft = soft_config_from_json(j.at("soft"));
  cfg.master_seed = get_or<std::uint64_t>(j, "master_seed", cfg.master_seed);
  cfg.parallelism = get_or<std::size_t>(j, "parallelism", cfg.parallelism);
  cfg.output_dir = get_or<std::string>(j, "output_dir", cfg.output_dir);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return experiment_config_from_json(j);
}

// parallelism and output_dir are runtime knobs, not experiment identity;
// leaving them out keeps reports byte-identical across schedulers.
json experiment_config_to_json(const ExperimentConfig& cfg) {
  json pool;
  if (!cfg.pool.file.empty()) {
    pool["file"] = cfg.pool.file;
  } else {
    pool["synth"] = {{"subjects", cfg.pool.synth_subjects},
                     {"items", cfg.pool.synth_items},
                     {"seed", cfg.pool.synth_seed},
                     {"bias_sigma", cfg.pool.synth_params.bias_sigma},
                     {"inconsistency_mean", cfg.pool.synth_params.inconsistency_mean},
                     {"inconsistency_sigma", cfg.pool.synth_params.inconsistency_sigma},
                     {"mos_low", cfg.pool.synth_params.mos_low},
                     {"mos_high", cfg.pool.synth_params.mos_high}};
  }
  json methods = json::array();
  for (MethodId id : cfg.methods) methods.push_back(to_string(id));
  return json{{"pool", pool},
              {"datasets", cfg.n_datasets},
              {"observers", cfg.observers},
              {"items", cfg.stimuli},
              {"attackers", cfg.attackers},
              {"methods", methods},
              {"ga",
               {{"population", cfg.ga.population_size},
                {"generations", cfg.ga.generations},
                {"mutation_rate", cfg.ga.mutation_rate},
                {"elitism_rate", cfg.ga.elitism_rate},
                {"children_per_pair", cfg.ga.children_per_pair},
                {"selection_with_replacement", cfg.ga.selection_with_replacement}}},
              {"detector",
               {{"lpcc_threshold", cfg.detector.lpcc_threshold},
                {"maz_threshold", cfg.detector.maz_threshold},
                {"nll_threshold", cfg.detector.nll_threshold},
                {"nll_alpha", cfg.detector.nll_alpha},
                {"hb_outlier_count", cfg.detector.hb_outlier_count},
                {"kb_extreme_fraction", cfg.detector.kb_extreme_fraction},
                {"kb_balance_ratio", cfg.detector.kb_balance_ratio},
                {"cb_std_coefficient", cfg.detector.cb_std_coefficient}}},
              {"soft",
               {{"max_iterations", cfg.soft.max_iterations},
                {"convergence_tol", cfg.soft.convergence_tol},
                {"esqr_surprise_floor", cfg.soft.esqr_surprise_floor},
                {"smoothing_alpha", cfg.soft.smoothing_alpha},
                {"min_inconsistency", cfg.soft.min_inconsistency}}},
              {"master_seed", cfg.master_seed}};
}

// -- experiment execution ----------------------------------------------------

namespace {

void parallel_for(std::size_t n_jobs, std::size_t workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n_jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_jobs; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_jobs) break;
      {
        std::scoped_lock lock(err_mutex);
        if (first_error) break;
      }
      try {
        body(i);
      } catch (...) {
        std::scoped_lock lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        break;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

MethodUnderTest method_under_test(const ExperimentConfig& cfg, MethodId id) {
  return MethodUnderTest::make(id, cfg.detector, cfg.soft);
}

MethodDatasetRow evaluate_attacked(const Dataset& ds, const MethodUnderTest& mut,
                                   const std::vector<double>& clean_scores,
                                   const StackedMatrix& stacked, std::size_t d_idx,
                                   std::uint64_t attack_seed_used) {
  const DetectionResult res = mut.apply(stacked.ratings);

  MethodDatasetRow row;
  row.dataset_index = d_idx;
  row.dataset_seed = ds.seed;
  row.attack_seed = attack_seed_used;
  row.rmse = rmse(res.reconstructed, ds.truth);
  row.rmsd = rmsd(res.reconstructed, clean_scores);
  row.rai = rai(res, stacked.attacker_flags);
  if (res.kind == DetectionResult::Kind::Hard) {
    const ClassificationMetrics cm =
        classification_metrics(res.inlier_mask, stacked.attacker_flags);
    row.fpr = cm.fpr;
    row.fnr = cm.fnr;
    row.acc = cm.acc;
  }
  return row;
}

std::optional<double> mean_optional(const std::vector<MethodDatasetRow>& rows,
                                    std::optional<double> MethodDatasetRow::* field) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : rows)
    if (r.*field) {
      sum += *(r.*field);
      ++n;
    }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

MethodAggregate aggregate_rows(const std::string& name, std::vector<MethodDatasetRow> rows) {
  MethodAggregate agg;
  agg.method = name;
  double rmse_sum = 0.0, rmsd_sum = 0.0, rai_sum = 0.0;
  for (const auto& r : rows) {
    rmse_sum += r.rmse;
    rmsd_sum += r.rmsd;
    rai_sum += r.rai;
  }
  const double n = static_cast<double>(rows.size());
  agg.mean_rmse = rmse_sum / n;
  agg.mean_rmsd = rmsd_sum / n;
  agg.mean_rai = rai_sum / n;
  agg.mean_fpr = mean_optional(rows, &MethodDatasetRow::fpr);
  agg.mean_fnr = mean_optional(rows, &MethodDatasetRow::fnr);
  agg.mean_acc = mean_optional(rows, &MethodDatasetRow::acc);
  agg.rows = std::move(rows);
  return agg;
}

void assign_ranks(std::vector<MethodAggregate>& methods) {
  std::vector<std::size_t> idx(methods.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});

  auto rank_by = [&](double MethodAggregate::* field, std::size_t MethodAggregate::* rank) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return methods[a].*field < methods[b].*field;
    });
    for (std::size_t pos = 0; pos < idx.size(); ++pos) methods[idx[pos]].*rank = pos + 1;
  };
  rank_by(&MethodAggregate::mean_rmse, &MethodAggregate::rmse_rank);
  rank_by(&MethodAggregate::mean_rmsd, &MethodAggregate::rmsd_rank);
}

enum class AttackKind { Ga, Spammers };

ExperimentReport run_experiment(const ExperimentConfig& cfg, AttackKind kind) {
  cfg.validate(kind == AttackKind::Spammers);
  const ParameterPool pool = cfg.pool.realize();
  const std::size_t n_methods = cfg.methods.size();
  const std::size_t n_jobs = cfg.n_datasets * n_methods;

  // Clean plain-MOS baseline per dataset; also surfaces out-of-range truth.
  std::vector<double> baseline(cfg.n_datasets);
  std::size_t truth_warnings = 0;
  for (std::size_t d = 0; d < cfg.n_datasets; ++d) {
    const Dataset ds = sample_dataset(pool, {cfg.observers, cfg.stimuli, cfg.dataset_seed(d)});
    baseline[d] = rmse(mos(ds.ratings), ds.truth);
    if (!ds.truth.in_recommended_range()) ++truth_warnings;
  }

  std::vector<MethodDatasetRow> rows(n_jobs);
  parallel_for(n_jobs, cfg.parallelism, [&](std::size_t job) {
    const std::size_t d_idx = job / n_methods;
    const std::size_t m_idx = job % n_methods;
    const MethodId id = cfg.methods[m_idx];
    const MethodUnderTest mut = method_under_test(cfg, id);

    try {
      const Dataset ds =
          sample_dataset(pool, {cfg.observers, cfg.stimuli, cfg.dataset_seed(d_idx)});
      const std::vector<double> clean_scores = mut.apply(ds.ratings).reconstructed;

      std::uint64_t attack_seed_used = 0;
      const StackedMatrix stacked = [&]() -> StackedMatrix {
        if (kind == AttackKind::Ga) {
          GaConfig ga = cfg.ga;
          ga.seed = cfg.attack_seed(d_idx, id);
          attack_seed_used = ga.seed;
          const AttackOutcome outcome = ga_optimize(ds, mut, cfg.attackers, ga);
          return stack(ds, outcome.best_attack);
        }
        if (cfg.attackers > 0) {
          attack_seed_used = cfg.spam_seed(d_idx);
          return stack(ds, make_spammers(cfg.attackers, cfg.stimuli, attack_seed_used));
        }
        return StackedMatrix{ds.ratings, std::vector<bool>(ds.ratings.rows(), false)};
      }();
      rows[job] = evaluate_attacked(ds, mut, clean_scores, stacked, d_idx, attack_seed_used);
    } catch (const std::exception& e) {
      throw std::runtime_error("dataset " + std::to_string(d_idx) + ", method " +
                               to_string(id) + ", dataset seed " +
                               std::to_string(cfg.dataset_seed(d_idx)) + ": " + e.what());
    }
  });

  ExperimentReport report;
  report.kind = kind == AttackKind::Ga ? "worst-case" : "spammers";
  report.config_echo = experiment_config_to_json(cfg);
  report.clean_mos_rmse_mean = mean(baseline);
  if (truth_warnings > 0)
    report.warnings.push_back(std::to_string(truth_warnings) +
                              " dataset(s) have ground truth outside [1,5]");

  for (std::size_t m = 0; m < n_methods; ++m) {
    std::vector<MethodDatasetRow> method_rows(cfg.n_datasets);
    for (std::size_t d = 0; d < cfg.n_datasets; ++d)
      method_rows[d] = rows[d * n_methods + m];
    report.methods.push_back(
        aggregate_rows(to_string(cfg.methods[m]), std::move(method_rows)));
  }
  assign_ranks(report.methods);
  std::stable_sort(report.methods.begin(), report.methods.end(),
                   [](const MethodAggregate& a, const MethodAggregate& b) {
                     return a.mean_rmse < b.mean_rmse;
                   });
  return report;
}

}  // namespace

ExperimentReport run_worst_case(const ExperimentConfig& cfg) {
  return run_experiment(cfg, AttackKind::Ga);
}

ExperimentReport run_spammers(const ExperimentConfig& cfg) {
  return run_experiment(cfg, AttackKind::Spammers);
}

AblationResult run_ablation(const ExperimentConfig& cfg, MethodId method) {
  cfg.validate();
  const ParameterPool pool = cfg.pool.realize();
  const Dataset ds = sample_dataset(pool, {cfg.observers, cfg.stimuli, cfg.dataset_seed(0)});
  const MethodUnderTest mut = method_under_test(cfg, method);

  GaConfig ga = cfg.ga;
  ga.seed = derive_seed(cfg.attack_seed(0, method), kStreamAblation);
  const AttackOutcome ga_out = ga_optimize(ds, mut, cfg.attackers, ga);

  const std::size_t budget = cfg.ga.population_size * (cfg.ga.generations + 1);
  const AttackOutcome rs_out = random_search(
      ds, mut, cfg.attackers, budget, derive_seed(ga.seed, kStreamAblation));

  return AblationResult{ga_out.all_fitness, rs_out.all_fitness};
}

// -- persistence ---------------------------------------------------------------

namespace {

json opt_to_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

std::optional<double> opt_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace

json report_to_json(const ExperimentReport& r) {
  json methods = json::array();
  for (const auto& m : r.methods) {
    json rows = json::array();
    for (const auto& row : m.rows)
      rows.push_back({{"dataset", row.dataset_index},
                      {"dataset_seed", row.dataset_seed},
                      {"attack_seed", row.attack_seed},
                      {"rmse", row.rmse},
                      {"rmsd", row.rmsd},
                      {"fpr", opt_to_json(row.fpr)},
                      {"fnr", opt_to_json(row.fnr)},
                      {"acc", opt_to_json(row.acc)},
                      {"rai", row.rai}});
    methods.push_back({{"name", m.method},
                       {"mean_rmse", m.mean_rmse},
                       {"mean_rmsd", m.mean_rmsd},
                       {"mean_fpr", opt_to_json(m.mean_fpr)},
                       {"mean_fnr", opt_to_json(m.mean_fnr)},
                       {"mean_acc", opt_to_json(m.mean_acc)},
                       {"mean_rai", m.mean_rai},
                       {"rmse_rank", m.rmse_rank},
                       {"rmsd_rank", m.rmsd_rank},
                       {"rows", rows}});
  }
  return json{{"kind", r.kind},
              {"config", r.config_echo},
              {"warnings", r.warnings},
              {"clean_mos_rmse_mean", r.clean_mos_rmse_mean},
              {"methods", methods}};
}

ExperimentReport report_from_json(const json& j) {
  ExperimentReport r;
  r.kind = j.at("kind").get<std::string>();
  r.config_echo = j.at("config");
  r.clean_mos_rmse_mean = j.at("clean_mos_rmse_mean").get<double>();
  for (const auto& w : j.at("warnings")) r.warnings.push_back(w.get<std::string>());
  for (const auto& mj : j.at("methods")) {
    MethodAggregate m;
    m.method = mj.at("name").get<std::string>();
    m.mean_rmse = mj.at("mean_rmse").get<double>();
    m.mean_rmsd = mj.at("mean_rmsd").get<double>();
    m.mean_fpr = opt_from_json(mj.at("mean_fpr"));
    m.mean_fnr = opt_from_json(mj.at("mean_fnr"));
    m.mean_acc = opt_from_json(mj.at("mean_acc"));
    m.mean_rai = mj.at("mean_rai").get<double>();
    m.rmse_rank = mj.at("rmse_rank").get<std::size_t>();
    m.rmsd_rank = mj.at("rmsd_rank").get<std::size_t>();
    for (const auto& rj : mj.at("rows")) {
      MethodDatasetRow row;
      row.dataset_index = rj.at("dataset").get<std::size_t>();
      row.dataset_seed = rj.at("dataset_seed").get<std::uint64_t>();
      row.attack_seed = rj.at("attack_seed").get<std::uint64_t>();
      row.rmse = rj.at("rmse").get<double>();
      row.rmsd = rj.at("rmsd").get<double>();
      row.fpr = opt_from_json(rj.at("fpr"));
      row.fnr = opt_from_json(rj.at("fnr"));
      row.acc = opt_from_json(rj.at("acc"));
      row.rai = rj.at("rai").get<double>();
      m.rows.push_back(row);
    }
    r.methods.push_back(std::move(m));
  }
  return r;
}

void save_report(const ExperimentReport& r, const std::string& path) {
  write_text_file(path, report_to_json(r).dump(2) + "\n");
}

ExperimentReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open report " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return report_from_json(j);
}

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void export_report(const ExperimentReport& r, const std::string& format,
                   const std::string& out_dir) {
  if (format != "csv" && format != "json")
    throw ConfigError("export format must be csv or json");
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  auto cell = [](const std::optional<double>& v) { return v ? format_sig6(*v) : std::string(); };

  if (format == "csv") {
    std::ostringstream out;
    out << "method,mean_rmse,mean_rmsd,fpr,fnr,acc,rai,rmse_rank,rmsd_rank\n";
    for (const auto& m : r.methods)
      out << m.method << ',' << format_sig6(m.mean_rmse) << ',' << format_sig6(m.mean_rmsd)
          << ',' << cell(m.mean_fpr) << ',' << cell(m.mean_fnr) << ',' << cell(m.mean_acc)
          << ',' << format_sig6(m.mean_rai) << ',' << m.rmse_rank << ',' << m.rmsd_rank << "\n";
    write_text_file((dir / "summary.csv").string(), out.str());
  } else {
    json methods = json::array();
    auto sig6 = [](double v) { return std::stod(format_sig6(v)); };
    for (const auto& m : r.methods) {
      json mj{{"method", m.method},
              {"mean_rmse", sig6(m.mean_rmse)},
              {"mean_rmsd", sig6(m.mean_rmsd)},
              {"fpr", m.mean_fpr ? json(sig6(*m.mean_fpr)) : json(nullptr)},
              {"fnr", m.mean_fnr ? json(sig6(*m.mean_fnr)) : json(nullptr)},
              {"acc", m.mean_acc ? json(sig6(*m.mean_acc)) : json(nullptr)},
              {"rai", sig6(m.mean_rai)},
              {"rmse_rank", m.rmse_rank},
              {"rmsd_rank", m.rmsd_rank}};
      methods.push_back(std::move(mj));
    }
    json summary{{"kind", r.kind},
                 {"clean_mos_rmse_mean", sig6(r.clean_mos_rmse_mean)},
                 {"warnings", r.warnings},
                 {"methods", methods}};
    write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");
  }

  for (const auto& m : r.methods) {
    std::ostringstream out;
    out << "rmse\n";
    for (const auto& row : m.rows) out << format_sig6(row.rmse) << "\n";
    write_text_file((dir / ("density_" + m.method + ".csv")).string(), out.str());
  }

  write_text_file((dir / "config.echo.json").string(), r.config_echo.dump(2) + "\n");
}

// -- small CLI helpers ---------------------------------------------------------

json dataset_meta_to_json(const Dataset& d) {
  return json{{"seed", d.seed},
              {"truth", d.truth.mu},
              {"bias", d.subjects.bias},
              {"inconsistency", d.subjects.inconsistency}};
}

Dataset dataset_from_parts(RatingMatrix m, const json& meta) {
  try {
    GroundTruth truth(meta.at("truth").get<std::vector<double>>());
    SubjectParams subjects(meta.at("bias").get<std::vector<double>>(),
                           meta.at("inconsistency").get<std::vector<double>>());
    const auto seed = get_or<std::uint64_t>(meta, "seed", 0);
    return Dataset(std::move(m), std::move(truth), std::move(subjects), seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("dataset meta: ") + e.what());
  }
}

json detection_result_to_json(const DetectionResult& res, const std::string& method) {
  json j{{"method", method}};
  if (res.kind == DetectionResult::Kind::Hard) {
    j["kind"] = "hard";
    j["inliers"] = res.inlier_mask;
    json removed = json::array();
    for (std::size_t i = 0; i < res.inlier_mask.size(); ++i)
      if (!res.inlier_mask[i]) removed.push_back(i);
    j["removed"] = removed;
  } else {
    j["kind"] = "soft";
    j["row_weights"] = res.row_weights;
  }
  j["scores"] = res.reconstructed;
  return j;
}

json attack_outcome_to_json(const AttackOutcome& o, const std::string& method,
                            std::uint64_t seed) {
  json best = json::array();
  for (std::size_t i = 0; i < o.best_attack.ratings.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < o.best_attack.ratings.cols(); ++j)
      row.push_back(o.best_attack.ratings.at(i, j));
    best.push_back(std::move(row));
  }
  json best_hist = json::array(), mean_hist = json::array();
  for (const auto& g : o.history) {
    best_hist.push_back(g.best);
    mean_hist.push_back(g.mean);
  }
  return json{{"method", method},
              {"seed", seed},
              {"best_fitness", o.best_fitness},
              {"evaluations", o.evaluations},
              {"best_attack", best},
              {"history", {{"best", best_hist}, {"mean", mean_hist}}},
              {"all_fitness", o.all_fitness}};
}

}  // namespace acr
