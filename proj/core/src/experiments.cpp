#include "malign/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "malign/csv.hpp"
#include "malign/gibbs_er.hpp"
#include "malign/gibbs_gaussian.hpp"
#include "malign/models.hpp"
#include "malign/parallel.hpp"
#include "malign/posterior.hpp"
#include "malign/rng.hpp"

#ifndef MALIGN_VERSION
#define MALIGN_VERSION "unknown"
#endif

namespace malign {

using nlohmann::json;

double threshold_rho0(std::size_t n, std::size_t p) {
  if (n < 2 || p < 2) throw std::domain_error("threshold_rho0: need n >= 2 and p >= 2");
  const double dn = static_cast<double>(n);
  return std::sqrt(8.0 * std::log(dn) / (static_cast<double>(p) * dn));
}

double threshold_er(double lambda, double s, std::size_t p) {
  if (!(lambda > 0.0)) throw std::domain_error("threshold_er: lambda must be > 0");
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("threshold_er: s must lie in (0,1)");
  if (p < 2) throw std::domain_error("threshold_er: p must be >= 2");
  return lambda * s * (1.0 - std::pow(1.0 - s, static_cast<double>(p - 1)));
}

Model parse_model(std::string_view name) {
  if (name == "gaussian") return Model::gaussian;
  if (name == "er") return Model::er;
  throw std::invalid_argument("unknown model '" + std::string(name) + "' (expected gaussian or er)");
}

std::string_view to_string(Model model) { return model == Model::gaussian ? "gaussian" : "er"; }

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  try {
    ExperimentConfig c;
    c.model = parse_model(doc.at("model").get<std::string>());
    c.n = doc.at("n").get<std::size_t>();
    c.p = doc.value("p", std::size_t{2});
    if (doc.contains("grid")) {
      for (const auto& pt : doc.at("grid")) {
        std::optional<double> m;
        if (pt.contains("threshold_multiple")) m = pt.at("threshold_multiple").get<double>();
        if (c.model == Model::gaussian) {
          c.grid.push_back({pt.at("rho").get<double>(), 0, 0, m});
        } else {
          c.grid.push_back({0, pt.at("lambda").get<double>(), pt.at("s").get<double>(), m});
        }
      }
    } else if (c.model == Model::gaussian) {
      if (doc.contains("rho_multiple_of_rho0")) {
        const double rho0 = threshold_rho0(c.n, c.p);
        for (double m : doc.at("rho_multiple_of_rho0").get<std::vector<double>>()) {
          c.grid.push_back({m * rho0, 0, 0, m});
        }
      } else {
        for (double r : doc.at("rho").get<std::vector<double>>()) c.grid.push_back({r, 0, 0, std::nullopt});
      }
    } else {
      if (doc.contains("lambda_multiple_of_threshold")) {
        const double s = doc.at("s").get<double>();
        const double unit = threshold_er(1.0, s, c.p);
        for (double m : doc.at("lambda_multiple_of_threshold").get<std::vector<double>>()) {
          c.grid.push_back({0, m / unit, s, m});
        }
      } else {
        for (const auto& pt : doc.at("points")) {
          c.grid.push_back({0, pt.at("lambda").get<double>(), pt.at("s").get<double>(), std::nullopt});
        }
      }
    }
    c.trials = doc.value("trials", std::size_t{1});
    if (doc.contains("estimator")) {
      const auto& e = doc.at("estimator");
      c.estimator = parse_estimator(e.value("method", std::string("anneal")));
      c.schedule.t0 = e.value("t0", c.schedule.t0);
      c.schedule.gamma = e.value("gamma", c.schedule.gamma);
      c.schedule.moves = e.value("moves", c.schedule.moves);
      c.schedule.moves_per_temperature = e.value("moves_per_temperature", c.schedule.moves_per_temperature);
      c.ball_radius = e.value("radius", c.ball_radius);
    }
    c.metric = parse_metric(doc.value("metric", std::string("d")));
    c.seed = doc.value("seed", std::uint64_t{0});
    c.output = doc.value("output", std::string());
    c.threads = doc.value("threads", std::size_t{1});
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

void ExperimentConfig::validate() const {
  if (grid.empty()) throw std::invalid_argument("config: parameter grid is empty");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  for (const auto& pt : grid) {
    if (model == Model::gaussian) {
      GaussianParams{n, p, pt.rho}.validate();
    } else {
      ErParams{n, p, pt.lambda, pt.s}.validate();
    }
  }
  schedule.validate();
}

json ExperimentConfig::to_json() const {
  json points = json::array();
  for (const auto& pt : grid) {
    json j;
    if (model == Model::gaussian) {
      j["rho"] = pt.rho;
    } else {
      j["lambda"] = pt.lambda;
      j["s"] = pt.s;
    }
    if (pt.multiple) j["threshold_multiple"] = *pt.multiple;
    points.push_back(j);
  }
  return json{{"model", malign::to_string(model)},
              {"n", n},
              {"p", p},
              {"grid", points},
              {"trials", trials},
              {"estimator",
               {{"method", malign::to_string(estimator)},
                {"t0", schedule.t0},
                {"gamma", schedule.gamma},
                {"moves", schedule.moves},
                {"moves_per_temperature", schedule.moves_per_temperature},
                {"radius", ball_radius}}},
              {"metric", malign::to_string(metric)},
              {"seed", seed},
              {"output", output},
              {"threads", threads}};
}

namespace {

double metric_distance(const OverlapReport& r, Metric m) {
  switch (m) {
    case Metric::d: return r.d;
    case Metric::d_w: return r.d_w;
    case Metric::d_c: return r.d_c;
  }
  return r.d;
}

template <class Observation, class Table, class Search>
EstimatorResult estimate(EstimatorMethod method, const Observation&, Table&& table, Search&& search,
                         double radius, Metric metric) {
  switch (method) {
    case EstimatorMethod::exhaustive_map: return map_exhaustive(table());
    case EstimatorMethod::ball_optimal: return ball_optimal(table(), radius, metric);
    case EstimatorMethod::anneal:
    case EstimatorMethod::greedy: return search(method);
  }
  throw std::logic_error("unreachable estimator");
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& config, std::size_t grid_index, std::size_t trial) {
  TrialRecord r;
  r.grid_index = grid_index;
  r.trial = trial;
  r.seed = derive_seed(config.seed, grid_index, trial);
  r.model = config.model;
  r.n = config.n;
  r.p = config.p;
  r.point = config.grid.at(grid_index);
  r.estimator = config.estimator;
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::uint64_t search_seed = derive_seed(r.seed, 1);
    Alignment truth;
    EstimatorResult est;
    if (config.model == Model::gaussian) {
      const GaussianSample sample = sample_gaussian({config.n, config.p, r.point.rho}, r.seed);
      const auto& obs = sample.observed;
      est = estimate(
          config.estimator, obs, [&] { return gaussian_posterior_table(obs, r.point.rho); },
          [&](EstimatorMethod m) {
            return m == EstimatorMethod::greedy ? greedy(obs, config.schedule, search_seed)
                                                : anneal(obs, r.point.rho, config.schedule, search_seed);
          },
          config.ball_radius, config.metric);
      truth = sample.truth;
      r.energy_estimate = hamiltonian(obs, est.estimate);
      r.energy_truth = hamiltonian(obs, truth);
    } else {
      const ErParams params{config.n, config.p, r.point.lambda, r.point.s};
      const ErSample sample = sample_er(params, r.seed);
      const auto& obs = sample.observed;
      est = estimate(
          config.estimator, obs, [&] { return er_posterior_table(obs, params); },
          [&](EstimatorMethod m) {
            return m == EstimatorMethod::greedy ? greedy(obs, params, config.schedule, search_seed)
                                                : anneal(obs, params, config.schedule, search_seed);
          },
          config.ball_radius, config.metric);
      truth = sample.truth;
      r.energy_estimate = er_log_posterior(obs, est.estimate, params).hamiltonian_exact;
      r.energy_truth = er_log_posterior(obs, truth, params).hamiltonian_exact;
    }
    const OverlapReport s = score(est.estimate, truth);
    r.ov = s.ov;
    r.ov_w = s.ov_w;
    r.ov_c = s.ov_c;
    r.distance = metric_distance(s, config.metric);
    r.exact_hit = est.estimate == truth;
  } catch (const std::exception& e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.ov = r.ov_w = r.ov_c = r.distance = r.energy_estimate = r.energy_truth = nan;
    r.exact_hit = false;
    r.status = std::string("error: ") + e.what();
  }
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

PhaseResult run_phase(const ExperimentConfig& config) {
  config.validate();
  PhaseResult out;
  const std::size_t total = config.grid.size() * config.trials;
  out.records.resize(total);
  parallel_for(total, config.threads, [&](std::size_t k) {
    out.records[k] = run_trial(config, k / config.trials, k % config.trials);
  });

  for (std::size_t g = 0; g < config.grid.size(); ++g) {
    PointSummary s;
    s.grid_index = g;
    s.point = config.grid[g];
    s.trials = config.trials;
    double sum = 0, sum_sq = 0, sum_w = 0, sum_c = 0, hits = 0;
    std::size_t good = 0;
    for (std::size_t t = 0; t < config.trials; ++t) {
      const TrialRecord& r = out.records[g * config.trials + t];
      if (r.status != "ok") {
        ++s.failed;
        continue;
      }
      ++good;
      sum += r.ov;
      sum_sq += r.ov * r.ov;
      sum_w += r.ov_w;
      sum_c += r.ov_c;
      hits += r.exact_hit;
    }
    if (good > 0) {
      const double k = static_cast<double>(good);
      s.mean_ov = sum / k;
      s.mean_ov_w = sum_w / k;
      s.mean_ov_c = sum_c / k;
      const double var = good > 1 ? std::max(0.0, (sum_sq - k * s.mean_ov * s.mean_ov) / (k - 1.0)) : 0.0;
      s.se_ov = std::sqrt(var / k);
      s.hit_rate = hits / k;
      s.se_hit = std::sqrt(s.hit_rate * (1.0 - s.hit_rate) / k);
    } else {
      s.mean_ov = s.se_ov = s.mean_ov_w = s.mean_ov_c = s.hit_rate = s.se_hit =
          std::numeric_limits<double>::quiet_NaN();
    }
    out.summaries.push_back(s);
  }
  return out;
}

std::vector<std::string> trial_csv_header() {
  return {"grid_index", "trial",     "seed",      "model",       "n",               "p",
          "rho",        "lambda",    "s",         "threshold_multiple", "estimator", "ov",
          "ov_w",       "ov_c",      "distance",  "exact_hit",   "energy_estimate", "energy_truth",
          "status"};
}

std::vector<std::string> trial_csv_row(const TrialRecord& r) {
  return {std::to_string(r.grid_index),
          std::to_string(r.trial),
          std::to_string(r.seed),
          std::string(to_string(r.model)),
          std::to_string(r.n),
          std::to_string(r.p),
          format_double(r.point.rho),
          format_double(r.point.lambda),
          format_double(r.point.s),
          r.point.multiple ? format_double(*r.point.multiple) : std::string(),
          std::string(to_string(r.estimator)),
          format_double(r.ov),
          format_double(r.ov_w),
          format_double(r.ov_c),
          format_double(r.distance),
          r.exact_hit ? "1" : "0",
          format_double(r.energy_estimate),
          format_double(r.energy_truth),
          r.status};
}

TrialRecord trial_from_csv_row(const std::vector<std::string>& header, const std::vector<std::string>& row) {
  if (header != trial_csv_header()) throw std::invalid_argument("trial CSV: unexpected header");
  if (row.size() != header.size()) throw std::invalid_argument("trial CSV: wrong field count");
  TrialRecord r;
  r.grid_index = std::stoull(row[0]);
  r.trial = std::stoull(row[1]);
  r.seed = std::stoull(row[2]);
  r.model = parse_model(row[3]);
  r.n = std::stoull(row[4]);
  r.p = std::stoull(row[5]);
  r.point.rho = std::stod(row[6]);
  r.point.lambda = std::stod(row[7]);
  r.point.s = std::stod(row[8]);
  if (!row[9].empty()) r.point.multiple = std::stod(row[9]);
  r.estimator = parse_estimator(row[10]);
  r.ov = std::stod(row[11]);
  r.ov_w = std::stod(row[12]);
  r.ov_c = std::stod(row[13]);
  r.distance = std::stod(row[14]);
  r.exact_hit = row[15] == "1";
  r.energy_estimate = std::stod(row[16]);
  r.energy_truth = std::stod(row[17]);
  r.status = row[18];
  return r;
}

void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  CsvWriter csv(out);
  csv.comment("schema_version=" + std::to_string(kCsvSchemaVersion));
  csv.row(trial_csv_header());
  for (const auto& r : records) csv.row(trial_csv_row(r));
}

json summary_json(const ExperimentConfig& config, const PhaseResult& result) {
  json points = json::array();
  for (const auto& s : result.summaries) {
    json j{{"grid_index", s.grid_index},
           {"trials", s.trials},
           {"failed", s.failed},
           {"mean_ov", s.mean_ov},
           {"se_ov", s.se_ov},
           {"mean_ov_w", s.mean_ov_w},
           {"mean_ov_c", s.mean_ov_c},
           {"exact_hit_rate", s.hit_rate},
           {"se_exact_hit_rate", s.se_hit}};
    if (config.model == Model::gaussian) {
      j["rho"] = s.point.rho;
    } else {
      j["lambda"] = s.point.lambda;
      j["s"] = s.point.s;
    }
    if (s.point.multiple) j["threshold_multiple"] = *s.point.multiple;
    points.push_back(j);
  }
  json out{{"schema_version", kCsvSchemaVersion}, {"points", points}};
  if (config.model == Model::gaussian) {
    out["rho0"] = threshold_rho0(config.n, config.p);
  }
  return out;
}

void write_phase_outputs(const ExperimentConfig& config, const PhaseResult& result, const std::string& path,
                         double wall_seconds) {
  auto open = [](const std::string& file) {
    std::ofstream f(file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + file + "' for writing");
    return f;
  };
  {
    auto f = open(path);
    write_trial_csv(f, result.records);
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
  }
  {
    auto f = open(path + ".summary.json");
    f << summary_json(config, result).dump(2) << '\n';
  }
  json runtimes = json::array();
  for (const auto& r : result.records) runtimes.push_back(r.runtime_seconds);
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  auto f = open(path + ".meta.json");
  f << json{{"version", MALIGN_VERSION},
            {"finished_at", stamp},
            {"wall_seconds", wall_seconds},
            {"threads", config.threads},
            {"config", config.to_json()},
            {"trial_runtime_seconds", runtimes}}
           .dump(2)
    << '\n';
}

FreeEnergyResult run_free_energy_probe(std::size_t n, std::size_t p, const std::vector<double>& rho_grid,
                                       std::size_t trials, std::uint64_t seed, std::size_t threads,
                                       std::uint64_t cap) {
  if (rho_grid.empty()) throw std::invalid_argument("free-energy probe: empty rho grid");
  if (trials < 1) throw std::invalid_argument("free-energy probe: trials must be >= 1");
  if (!alignment_count(n, p, cap)) throw StateSpaceTooLarge("free-energy probe: state space exceeds the cap");
  FreeEnergyResult out;
  out.records.resize(rho_grid.size() * trials);
  parallel_for(out.records.size(), threads, [&](std::size_t k) {
    const std::size_t g = k / trials, t = k % trials;
    FreeEnergyRecord& r = out.records[k];
    r.rho = rho_grid[g];
    r.trial = t;
    r.seed = derive_seed(seed, g, t);
    const GaussianSample sample = sample_gaussian({n, p, r.rho}, r.seed);
    r.log_z = gaussian_posterior_table(sample.observed, r.rho, sample.truth, cap).log_partition();
  });
  for (std::size_t g = 0; g < rho_grid.size(); ++g) {
    FreeEnergyPoint pt;
    pt.rho = rho_grid[g];
    pt.trials = trials;
    std::vector<double> logs;
    for (std::size_t t = 0; t < trials; ++t) logs.push_back(out.records[g * trials + t].log_z);
    double sum = 0.0;
    for (double v : logs) sum += v;
    pt.mean_log_z = sum / static_cast<double>(trials);
    pt.log_mean_z = log_sum_exp(logs) - std::log(static_cast<double>(trials));
    pt.jensen_gap = pt.log_mean_z - pt.mean_log_z;
    pt.min_log_z = *std::min_element(logs.begin(), logs.end());
    out.points.push_back(pt);
  }
  return out;
}

void write_free_energy_csv(std::ostream& out, const FreeEnergyResult& result) {
  CsvWriter csv(out);
  csv.comment("schema_version=" + std::to_string(kCsvSchemaVersion));
  csv.row({"kind", "rho", "trial", "seed", "log_z", "trials", "min_log_z", "mean_log_z", "log_mean_z",
           "jensen_gap"});
  for (const auto& r : result.records) {
    csv.row({"trial", format_double(r.rho), std::to_string(r.trial), std::to_string(r.seed), format_double(r.log_z),
             "", "", "", "", ""});
  }
  for (const auto& pt : result.points) {
    csv.row({"point", format_double(pt.rho), "", "", "", std::to_string(pt.trials), format_double(pt.min_log_z),
             format_double(pt.mean_log_z), format_double(pt.log_mean_z), format_double(pt.jensen_gap)});
  }
}

}  // namespace malign
