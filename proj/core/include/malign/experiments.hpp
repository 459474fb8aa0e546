#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "malign/estimators.hpp"
#include "malign/metrics.hpp"

namespace malign {

inline constexpr int kCsvSchemaVersion = 1;

/// √(8 ln n / (p n)).
double threshold_rho0(std::size_t n, std::size_t p);
/// λ s (1 − (1 − s)^{p−1}).
double threshold_er(double lambda, double s, std::size_t p);

enum class Model { gaussian, er };
Model parse_model(std::string_view name);
std::string_view to_string(Model model);

/// One resolved parameter point. `multiple` is set when the point was given
/// relative to the model threshold.
struct GridPoint {
  double rho = 0;
  double lambda = 0;
  double s = 0;
  std::optional<double> multiple;
};

struct ExperimentConfig {
  Model model = Model::gaussian;
  std::size_t n = 0;
  std::size_t p = 2;
  std::vector<GridPoint> grid;
  std::size_t trials = 1;
  EstimatorMethod estimator = EstimatorMethod::anneal;
  AnnealSchedule schedule;
  double ball_radius = 0.5;
  Metric metric = Metric::d;
  std::uint64_t seed = 0;
  std::string output;
  std::size_t threads = 1;

  /// Parses and resolves threshold multiples; throws std::invalid_argument.
  static ExperimentConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
  void validate() const;
};

struct TrialRecord {
  std::size_t grid_index = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Model model = Model::gaussian;
  std::size_t n = 0;
  std::size_t p = 0;
  GridPoint point;
  EstimatorMethod estimator = EstimatorMethod::anneal;
  double ov = 0, ov_w = 0, ov_c = 0;
  double distance = 0;  // in the configured metric
  bool exact_hit = false;
  double energy_estimate = 0;
  double energy_truth = 0;
  std::string status = "ok";  // or the failure message
  double runtime_seconds = 0; // kept out of the CSV
};

std::vector<std::string> trial_csv_header();
std::vector<std::string> trial_csv_row(const TrialRecord& r);
TrialRecord trial_from_csv_row(const std::vector<std::string>& header, const std::vector<std::string>& row);

struct PointSummary {
  std::size_t grid_index = 0;
  GridPoint point;
  std::size_t trials = 0;
  std::size_t failed = 0;
  double mean_ov = 0, se_ov = 0;
  double mean_ov_w = 0, mean_ov_c = 0;
  double hit_rate = 0, se_hit = 0;
};

struct PhaseResult {
  std::vector<TrialRecord> records;  // (grid, trial) order
  std::vector<PointSummary> summaries;
};

/// Runs one trial; exceptions are captured into the record's status.
TrialRecord run_trial(const ExperimentConfig& config, std::size_t grid_index, std::size_t trial);
PhaseResult run_phase(const ExperimentConfig& config);

void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records);
nlohmann::json summary_json(const ExperimentConfig& config, const PhaseResult& result);
/// CSV to `path`, summary to path + ".summary.json", timings and versions to path + ".meta.json".
void write_phase_outputs(const ExperimentConfig& config, const PhaseResult& result, const std::string& path,
                         double wall_seconds);

struct FreeEnergyRecord {
  double rho = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double log_z = 0;  // truth-rebased
};

struct FreeEnergyPoint {
  double rho = 0;
  std::size_t trials = 0;
  double mean_log_z = 0;
  double log_mean_z = 0;
  double jensen_gap = 0;  // log_mean_z − mean_log_z
  double min_log_z = 0;
};

struct FreeEnergyResult {
  std::vector<FreeEnergyRecord> records;
  std::vector<FreeEnergyPoint> points;
};

FreeEnergyResult run_free_energy_probe(std::size_t n, std::size_t p, const std::vector<double>& rho_grid,
                                       std::size_t trials, std::uint64_t seed, std::size_t threads = 1,
                                       std::uint64_t cap = kDefaultEnumerationCap);
void write_free_energy_csv(std::ostream& out, const FreeEnergyResult& result);

}  // namespace malign
