#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "malign/estimators.hpp"
#include "malign/experiments.hpp"
#include "malign/gibbs_er.hpp"
#include "malign/gibbs_gaussian.hpp"
#include "malign/serialization.hpp"
#include "malign/verify.hpp"

using nlohmann::json;
using namespace malign;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  std::string out;
};

std::size_t resolve_threads(std::size_t requested) {
  if (const char* env = std::getenv("MALIGN_THREADS"); env && *env) {
    try {
      const auto v = std::stoul(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("MALIGN_THREADS must be a positive integer");
  }
  return requested;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return json::parse(in);
}

// Writes to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + g.out + "' for writing");
  f << text;
}

struct LoadedSample {
  Model model;
  std::optional<GaussianSample> gaussian;
  std::optional<ErSample> er;
  const Alignment& truth() const { return gaussian ? gaussian->truth : er->truth; }
};

LoadedSample load_sample(const std::string& path) {
  const json doc = read_json(path);
  LoadedSample s{parse_model(doc.at("model").get<std::string>()), std::nullopt, std::nullopt};
  if (s.model == Model::gaussian) {
    s.gaussian = gaussian_sample_from_json(doc);
  } else {
    s.er = er_sample_from_json(doc);
  }
  return s;
}

json energy_of(const LoadedSample& s, const Alignment& a) {
  if (s.gaussian) return {{"hamiltonian", hamiltonian(s.gaussian->observed, a)}};
  const auto r = er_log_posterior(s.er->observed, a, s.er->params);
  return {{"hamiltonian_exact", r.hamiltonian_exact},
          {"log_posterior_unnormalized", r.log_posterior_unnormalized},
          {"edge_total", r.edge_total}};
}

json overlap_json(const OverlapReport& r) {
  return {{"ov", r.ov}, {"ov_w", r.ov_w}, {"ov_c", r.ov_c}, {"d", r.d}, {"d_w", r.d_w}, {"d_c", r.d_c}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-graph alignment laboratory"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--threads", g.threads, "Worker threads (MALIGN_THREADS overrides)")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output path (stdout when omitted)");

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Draw a Gaussian or ER sample as JSON");
  std::string model = "gaussian";
  std::size_t n = 10, p = 2;
  double rho = 0.5, lambda = 2.0, s = 0.5;
  sample_cmd->add_option("--model", model)->check(CLI::IsMember({"gaussian", "er"}));
  sample_cmd->add_option("--n", n);
  sample_cmd->add_option("--p", p);
  sample_cmd->add_option("--rho", rho);
  sample_cmd->add_option("--lambda", lambda);
  sample_cmd->add_option("--s", s);

  // energy
  auto* energy_cmd = app.add_subcommand("energy", "Hamiltonian of an alignment on a stored sample");
  std::string sample_path, alignment_text;
  bool with_truth = false;
  energy_cmd->add_option("--sample", sample_path)->required();
  energy_cmd->add_option("--alignment", alignment_text, "e.g. \"1 2 3;2 1 3\" (default: identity)");
  energy_cmd->add_flag("--truth", with_truth, "Also report the truth's energy and the overlap");

  // map
  auto* map_cmd = app.add_subcommand("map", "Run an estimator on a stored sample and score it");
  std::string method = "anneal", metric_name = "d";
  double radius = 0.5;
  AnnealSchedule schedule;
  std::uint64_t cap = kDefaultEnumerationCap;
  map_cmd->add_option("--sample", sample_path)->required();
  map_cmd->add_option("--estimator", method)->check(CLI::IsMember({"exhaustive_map", "ball_optimal", "anneal", "greedy"}));
  map_cmd->add_option("--radius", radius);
  map_cmd->add_option("--metric", metric_name)->check(CLI::IsMember({"d", "d_w", "d_c"}));
  map_cmd->add_option("--t0", schedule.t0);
  map_cmd->add_option("--gamma", schedule.gamma);
  map_cmd->add_option("--moves", schedule.moves);
  map_cmd->add_option("--moves-per-temperature", schedule.moves_per_temperature);
  map_cmd->add_option("--cap", cap);

  // posterior
  auto* posterior_cmd = app.add_subcommand("posterior", "Exhaustive posterior table as CSV");
  bool rebase = false;
  posterior_cmd->add_option("--sample", sample_path)->required();
  posterior_cmd->add_flag("--rebase", rebase, "Gaussian: weights relative to the truth, so log Z >= 0");
  posterior_cmd->add_option("--cap", cap);

  // phase
  auto* phase_cmd = app.add_subcommand("phase", "Phase-diagram sweep from a JSON config");
  std::string config_path;
  phase_cmd->add_option("--config", config_path)->required()->check(CLI::ExistingFile);

  // free-energy
  auto* fe_cmd = app.add_subcommand("free-energy", "Exact log Z probe over a rho grid");
  std::vector<double> rho_grid{0.1, 0.5, 0.9};
  std::size_t trials = 200;
  fe_cmd->add_option("--n", n);
  fe_cmd->add_option("--p", p);
  fe_cmd->add_option("--rho", rho_grid)->delimiter(',');
  fe_cmd->add_option("--trials", trials);
  fe_cmd->add_option("--cap", cap);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Brute-force verification suites");
  std::string suite = "all";
  VerifyOptions vopt;
  std::uint64_t instances = 0;
  verify_cmd->add_option("suite", suite, "usable, permcount, spanning, automorphism, autbound, qform, trace, bayes_oracle or all");
  verify_cmd->add_option("--n", vopt.n);
  verify_cmd->add_option("--p", vopt.p);
  verify_cmd->add_option("--p-max", vopt.p_max);
  auto* instances_opt = verify_cmd->add_option("--instances", instances);
  verify_cmd->add_option("--samples", vopt.samples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const std::size_t threads = resolve_threads(g.threads);

    if (*sample_cmd) {
      const std::uint64_t seed = g.seed.value_or(0);
      json doc = model == "gaussian" ? to_json(sample_gaussian({n, p, rho}, seed))
                                     : to_json(sample_er({n, p, lambda, s}, seed));
      doc["seed"] = seed;
      emit(g, doc.dump() + "\n");
      return 0;
    }

    if (*energy_cmd) {
      const LoadedSample smp = load_sample(sample_path);
      const std::size_t sn = smp.truth().n(), sp = smp.truth().p();
      const Alignment a = alignment_text.empty() ? Alignment::identity(sn, sp) : Alignment::parse(alignment_text);
      require_same_shape(a, smp.truth(), "energy");
      json out{{"alignment", a.to_string()}, {"energy", energy_of(smp, a)}};
      if (with_truth) {
        out["truth"] = smp.truth().to_string();
        out["truth_energy"] = energy_of(smp, smp.truth());
        out["overlap_with_truth"] = overlap_json(score(a, smp.truth()));
      }
      emit(g, out.dump(2) + "\n");
      return 0;
    }

    if (*map_cmd) {
      const LoadedSample smp = load_sample(sample_path);
      const std::uint64_t seed = g.seed.value_or(0);
      const EstimatorMethod m = parse_estimator(method);
      const Metric metric = parse_metric(metric_name);
      EstimatorResult r;
      if (smp.gaussian) {
        const auto& obs = smp.gaussian->observed;
        const double srho = smp.gaussian->params.rho;
        if (m == EstimatorMethod::anneal) r = anneal(obs, srho, schedule, seed);
        else if (m == EstimatorMethod::greedy) r = greedy(obs, schedule, seed);
        else {
          const auto table = gaussian_posterior_table(obs, srho, std::nullopt, cap, threads);
          r = m == EstimatorMethod::exhaustive_map ? map_exhaustive(table) : ball_optimal(table, radius, metric);
        }
      } else {
        const auto& obs = smp.er->observed;
        const auto& params = smp.er->params;
        if (m == EstimatorMethod::anneal) r = anneal(obs, params, schedule, seed);
        else if (m == EstimatorMethod::greedy) r = greedy(obs, params, schedule, seed);
        else {
          const auto table = er_posterior_table(obs, params, cap, threads);
          r = m == EstimatorMethod::exhaustive_map ? map_exhaustive(table) : ball_optimal(table, radius, metric);
        }
      }
      const OverlapReport ov = score(r.estimate, smp.truth());
      json out{{"estimator", std::string(to_string(r.method))},
               {"estimate", r.estimate.to_string()},
               {"score", r.score},
               {"ties", r.ties},
               {"iterations", r.iterations},
               {"seed", seed},
               {"energy", energy_of(smp, r.estimate)},
               {"truth_energy", energy_of(smp, smp.truth())},
               {"overlap_with_truth", overlap_json(ov)},
               {"exact_hit", r.estimate == smp.truth()}};
      emit(g, out.dump(2) + "\n");
      return 0;
    }

    if (*posterior_cmd) {
      const LoadedSample smp = load_sample(sample_path);
      std::ostringstream csv;
      if (smp.gaussian) {
        std::optional<Alignment> truth;
        if (rebase) truth = smp.gaussian->truth;
        gaussian_posterior_table(smp.gaussian->observed, smp.gaussian->params.rho, truth, cap, threads).write_csv(csv);
      } else {
        er_posterior_table(smp.er->observed, smp.er->params, cap, threads).write_csv(csv);
      }
      emit(g, csv.str());
      return 0;
    }

    if (*phase_cmd) {
      ExperimentConfig config = ExperimentConfig::from_json(read_json(config_path));
      if (g.seed) config.seed = *g.seed;
      if (!g.out.empty()) config.output = g.out;
      if (app.count("--threads") > 0 || std::getenv("MALIGN_THREADS")) config.threads = threads;
      if (config.output.empty()) throw std::invalid_argument("phase: no output path (set \"output\" or --out)");
      const auto start = std::chrono::steady_clock::now();
      const PhaseResult result = run_phase(config);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_phase_outputs(config, result, config.output, wall);
      std::size_t failed = 0;
      for (const auto& sm : result.summaries) {
        failed += sm.failed;
        std::cout << "grid " << sm.grid_index << ": mean_ov=" << sm.mean_ov << " (se " << sm.se_ov
                  << ") exact_hit_rate=" << sm.hit_rate << " failed=" << sm.failed << "\n";
      }
      return failed == 0 ? 0 : 3;
    }

    if (*fe_cmd) {
      const auto result = run_free_energy_probe(n, p, rho_grid, trials, g.seed.value_or(0), threads, cap);
      std::ostringstream csv;
      write_free_energy_csv(csv, result);
      emit(g, csv.str());
      bool ok = true;
      for (const auto& pt : result.points) {
        ok = ok && pt.min_log_z >= 0.0 && pt.jensen_gap >= -1e-9;
        std::cerr << "rho " << pt.rho << ": mean log Z = " << pt.mean_log_z << ", Jensen gap = " << pt.jensen_gap
                  << ", min log Z = " << pt.min_log_z << "\n";
      }
      return ok ? 0 : 1;
    }

    if (*verify_cmd) {
      vopt.seed = g.seed.value_or(1);
      vopt.threads = threads;
      if (instances_opt->count() > 0) vopt.instances = instances;
      std::vector<VerifySuite> suites = suite == "all" ? all_suites() : std::vector<VerifySuite>{parse_suite(suite)};
      std::vector<VerifyReport> reports;
      bool ok = true;
      for (auto su : suites) {
        reports.push_back(run_verify(su, vopt));
        const auto& r = reports.back();
        ok = ok && r.ok();
        std::cerr << to_string(su) << ": " << r.instances << " instances, " << r.failures << " failures"
                  << (r.instances == 0 ? " (warning: 0 instances)" : "") << "\n";
      }
      std::ostringstream csv;
      write_verify_csv(csv, reports);
      emit(g, csv.str());
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
