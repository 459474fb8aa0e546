#include "malign/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "malign/automorphism.hpp"
#include "malign/counting.hpp"
#include "malign/csv.hpp"
#include "malign/gibbs_er.hpp"
#include "malign/graph.hpp"
#include "malign/metrics.hpp"
#include "malign/models.hpp"
#include "malign/parallel.hpp"
#include "malign/qform.hpp"
#include "malign/rng.hpp"
#include "malign/spanning_tree.hpp"
#include "malign/trace_identity.hpp"

namespace malign {

namespace {

constexpr std::pair<VerifySuite, std::string_view> kNames[] = {
    {VerifySuite::usable, "usable"},       {VerifySuite::permcount, "permcount"},
    {VerifySuite::spanning, "spanning"},   {VerifySuite::automorphism, "automorphism"},
    {VerifySuite::autbound, "autbound"},   {VerifySuite::qform, "qform"},
    {VerifySuite::trace, "trace"},         {VerifySuite::bayes_oracle, "bayes_oracle"},
};

std::uint64_t budget(const VerifyOptions& o, std::uint64_t fallback) { return o.instances.value_or(fallback); }

std::string matrix_label(const CountMatrix& d) {
  std::ostringstream s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) s << (s.tellp() > 0 ? " " : "") << "d" << i + 1 << j + 1 << "=" << d(i, j);
  }
  return s.str();
}

// Every symmetric threshold matrix with off-diagonal entries in [0, n].
std::vector<CountMatrix> all_thresholds(std::size_t n, std::size_t p) {
  const std::size_t pairs = p * (p - 1) / 2;
  std::vector<std::int64_t> digits(pairs, 0);
  std::vector<CountMatrix> out;
  while (true) {
    CountMatrix d(p, static_cast<std::int64_t>(n));
    std::size_t k = 0;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j, ++k) d(i, j) = d(j, i) = digits[k];
    }
    out.push_back(d);
    std::size_t pos = 0;
    while (pos < pairs && ++digits[pos] > static_cast<std::int64_t>(n)) digits[pos++] = 0;
    if (pos == pairs) break;
  }
  return out;
}

std::vector<std::size_t> p_values(const VerifyOptions& o) {
  if (o.p != 0) return {o.p};
  return {2, 3};
}

void counting_suite(VerifyReport& report, const VerifyOptions& o, bool with_orders) {
  const std::size_t n = o.n ? o.n : 4;
  const std::uint64_t limit = budget(o, UINT64_MAX);
  for (std::size_t p : p_values(o)) {
    const DijCensus census(n, p);
    for (const auto& d : all_thresholds(n, p)) {
      if (report.instances >= limit) return;
      ++report.instances;
      const std::string label = "n=" + std::to_string(n) + " p=" + std::to_string(p) + " " + matrix_label(d);
      if (!with_orders) {
        const BoundCheck c = check_usable_bound(census, d);
        report.rows.push_back({"usable_bound", label, c.log_count, c.log_bound, c.ok});
        continue;
      }
      std::vector<Vertex> order(p);
      std::iota(order.begin(), order.end(), Vertex{0});
      do {
        const Permutation tau(order);
        const BoundCheck c = check_permcount_bound(census, d, tau);
        report.rows.push_back({"permcount_bound", label + " tau=" + tau.to_string(), c.log_count, c.log_bound, c.ok});
      } while (std::next_permutation(order.begin(), order.end()));
      const AveragingCheck a = check_order_averaging(d);
      report.rows.push_back({"order_averaging", label, a.lhs, a.rhs, a.ok});
    }
  }
}

void spanning_suite(VerifyReport& report, const VerifyOptions& o) {
  const std::uint64_t per_p = budget(o, 100'000);
  const std::size_t p_max = std::max<std::size_t>(o.p_max, 2);
  for (std::size_t p = 2; p <= p_max; ++p) {
    const auto c = check_spanning_bound(WeightedCompleteGraph::constant(p, 1.0));
    report.rows.push_back({"spanning_bound", "all-ones p=" + std::to_string(p), c.lhs, c.rhs, c.ok});
  }
  for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto c = check_spanning_bound(WeightedCompleteGraph::constant(2, x));
    report.rows.push_back({"spanning_bound", "p=2 x=" + format_double(x), c.lhs, c.rhs, c.ok});
  }
  for (std::size_t p = 3; p <= p_max; ++p) {
    std::vector<VerifyRow> rows(per_p);
    parallel_for(per_p, o.threads, [&](std::size_t k) {
      Rng rng = seeded_rng(derive_seed(o.seed, p, k));
      const auto c = check_spanning_bound(WeightedCompleteGraph::uniform(p, rng));
      rows[k] = {"spanning_bound", "p=" + std::to_string(p) + " instance=" + std::to_string(k), c.lhs, c.rhs, c.ok};
    });
    report.instances += per_p;
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  const std::uint64_t prim_checks = std::min<std::uint64_t>(per_p, 1000);
  for (std::uint64_t k = 0; k < prim_checks; ++k) {
    Rng rng = seeded_rng(derive_seed(o.seed, 1000 + 5, k));
    const auto g = WeightedCompleteGraph::uniform(5, rng);
    const double prim = max_spanning_tree(g).weight;
    const double exhaustive = max_spanning_tree_exhaustive(g);
    report.rows.push_back({"prim_vs_exhaustive", "p=5 instance=" + std::to_string(k), prim, exhaustive,
                           std::abs(prim - exhaustive) <= 1e-12});
  }
}

void automorphism_suite(VerifyReport& report, const VerifyOptions& o) {
  const std::size_t n = o.n ? o.n : 6;
  const std::size_t p = o.p ? o.p : 2;
  const std::uint64_t count = budget(o, 100);
  const ErParams params{n, p, std::min(3.0, static_cast<double>(n)), 0.6};
  for (std::uint64_t k = 0; k < count; ++k) {
    ++report.instances;
    const std::uint64_t seed = derive_seed(o.seed, 42, k);
    const ErSample sample = sample_er(params, seed);
    Rng rng = seeded_rng(derive_seed(seed, 1));
    const Alignment pi = random_alignment(n, p, rng);
    const EdgeSet h = intersection_union_graph(sample.observed, pi);
    for (const auto& sigma : all_automorphisms(n, h)) {
      const auto c = check_automorphism_monotonicity(sample.observed, pi, sigma);
      report.rows.push_back({"automorphism_monotone",
                             "instance=" + std::to_string(k) + " pi=" + pi.to_string() + " sigma=" + sigma.to_string(),
                             static_cast<double>(c.after), static_cast<double>(c.before), c.ok});
    }
  }
}

void autbound_suite(VerifyReport& report, const VerifyOptions& o) {
  const std::size_t n_max = o.n ? o.n : 6;
  if (n_max > 8) throw std::invalid_argument("verify autbound: n must be <= 8 for the exhaustive sweep");
  const std::uint64_t limit = budget(o, UINT64_MAX);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto m = static_cast<std::size_t>(choose2(static_cast<std::int64_t>(n)));
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
      if (report.instances >= limit) return;
      ++report.instances;
      const auto c = component_preserving_automorphism_bound(n, edge_set_from_bits(n, bits));
      const std::string label = "n=" + std::to_string(n) + " edges=" + std::to_string(bits);
      report.rows.push_back({"degree_product_bound", label, static_cast<double>(c.count), c.bound, c.ok});
      report.rows.push_back({"rooted_degree_product_bound", label, static_cast<double>(c.count), c.rooted_bound,
                             c.rooted_ok, false});
    }
  }
}

void qform_suite(VerifyReport& report, const VerifyOptions& o) {
  const std::size_t dim = o.n ? o.n : 10;
  const std::uint64_t reps = budget(o, 40);
  std::vector<VerifyRow> rows(reps);
  parallel_for(reps, o.threads, [&](std::size_t k) {
    Rng rng = seeded_rng(derive_seed(o.seed, 7, k));
    const QformSpec spec = random_qform_spec(dim, rng);
    const double t = 0.3 / (2.0 * qform_spectral_radius(spec));
    const auto c = qform_mc_check(spec, t, o.samples, derive_seed(o.seed, 8, k));
    rows[k] = {"log_mgf_mc", "N=" + std::to_string(dim) + " rep=" + std::to_string(k) + " se=" + format_double(c.std_error),
               c.mc_estimate, c.analytic, c.ok, false};
  });
  report.instances = reps;
  std::size_t passed = 0;
  for (const auto& r : rows) passed += r.ok;
  report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  if (reps > 0) {
    const double rate = static_cast<double>(passed) / static_cast<double>(reps);
    report.rows.push_back({"log_mgf_mc_pass_rate", "reps=" + std::to_string(reps), rate, 0.95, rate >= 0.95});
  }
}

void trace_suite(VerifyReport& report, const VerifyOptions& o) {
  const std::size_t n = o.n ? o.n : 6;
  const std::size_t p = o.p ? o.p : 3;
  const std::uint64_t count = budget(o, 100);
  for (std::uint64_t k = 0; k < count; ++k) {
    ++report.instances;
    Rng rng = seeded_rng(derive_seed(o.seed, 11, k));
    const Alignment truth = random_alignment(n, p, rng);
    const Alignment sigma = random_alignment(n, p, rng);
    const auto c = trace_identity_check(sigma, truth);
    report.rows.push_back({"trace_identity", "sigma=" + sigma.to_string() + " truth=" + truth.to_string(),
                           static_cast<double>(c.lhs), static_cast<double>(c.rhs), c.ok});
  }
  if (count == 0) return;
  // Fixed-edge decomposition over all of S_4 against the identity truth.
  const std::size_t small = 4;
  const Alignment truth = Alignment::identity(small, 2);
  for (const auto& sigma : enumerate_alignments(small, 2)) {
    const std::int64_t d = dij_matrix(sigma, truth)(0, 1);
    const std::int64_t big_d = edge_fixed_points(sigma, truth)(0, 1);
    const std::int64_t rest = big_d - choose2(d);
    const std::string label = "sigma=" + sigma[1].to_string();
    report.rows.push_back({"fixed_edges_lower", label, static_cast<double>(rest), 0.0, rest >= 0});
    report.rows.push_back({"fixed_edges_upper", label, static_cast<double>(rest),
                           static_cast<double>(static_cast<std::int64_t>(small) - d) / 2.0,
                           2 * rest <= static_cast<std::int64_t>(small) - d});
  }
}

// ℙ(π | 𝒢) ∝ Π_e ℙ(pattern of e), with the master graph marginalized per edge.
std::vector<double> direct_bayes(const ErObservation& obs, const ErParams& params) {
  const EdgeIndex edges(obs.n);
  const double q = params.lambda / static_cast<double>(params.n);
  std::vector<double> log_l;
  for (const auto& pi : enumerate_alignments(obs.n, obs.p)) {
    std::vector<Permutation> inv;
    for (std::size_t i = 0; i < obs.p; ++i) inv.push_back(inverse(pi[i]));
    double l = 0.0;
    for (EdgeId e = 0; e < edges.size(); ++e) {
      const Edge uv = edges.pair(e);
      std::size_t k = 0;
      for (std::size_t i = 0; i < obs.p; ++i) {
        k += obs.graphs[i].contains(edges.index(inv[i](uv.u), inv[i](uv.v)));
      }
      const double kept = std::pow(params.s, static_cast<double>(k)) *
                          std::pow(1.0 - params.s, static_cast<double>(obs.p - k));
      l += std::log((k == 0 ? 1.0 - q : 0.0) + q * kept);
    }
    log_l.push_back(l);
  }
  const double z = log_sum_exp(log_l);
  for (double& v : log_l) v = std::exp(v - z);
  return log_l;
}

void bayes_suite(VerifyReport& report, const VerifyOptions& o) {
  const std::size_t n = o.n ? o.n : 4;
  const std::size_t p = o.p ? o.p : 2;
  const ErParams params{n, p, 2.0, 0.5};
  const std::uint64_t count = budget(o, 50);
  for (std::uint64_t k = 0; k < count; ++k) {
    ++report.instances;
    const ErSample sample = sample_er(params, derive_seed(o.seed, 13, k));
    const PosteriorTable table = er_posterior_table(sample.observed, params);
    const auto direct = direct_bayes(sample.observed, params);
    double worst = 0.0;
    for (std::uint64_t r = 0; r < table.size(); ++r) worst = std::max(worst, std::abs(table.probability(r) - direct[r]));
    report.rows.push_back({"bayes_oracle_max_abs_error", "instance=" + std::to_string(k), worst, 1e-9, worst <= 1e-9});
  }
}

}  // namespace

VerifySuite parse_suite(std::string_view name) {
  for (const auto& [suite, label] : kNames) {
    if (label == name) return suite;
  }
  throw std::invalid_argument("unknown verify suite '" + std::string(name) + "'");
}

std::string_view to_string(VerifySuite suite) {
  for (const auto& [s, label] : kNames) {
    if (s == suite) return label;
  }
  return "?";
}

std::vector<VerifySuite> all_suites() {
  std::vector<VerifySuite> out;
  for (const auto& entry : kNames) out.push_back(entry.first);
  return out;
}

VerifyReport run_verify(VerifySuite suite, const VerifyOptions& options) {
  VerifyReport report;
  report.suite = suite;
  if (options.instances && *options.instances == 0) {
    report.rows.push_back({"warning", "0 instances", 0, 0, true, false});
    return report;
  }
  switch (suite) {
    case VerifySuite::usable: counting_suite(report, options, false); break;
    case VerifySuite::permcount: counting_suite(report, options, true); break;
    case VerifySuite::spanning: spanning_suite(report, options); break;
    case VerifySuite::automorphism: automorphism_suite(report, options); break;
    case VerifySuite::autbound: autbound_suite(report, options); break;
    case VerifySuite::qform: qform_suite(report, options); break;
    case VerifySuite::trace: trace_suite(report, options); break;
    case VerifySuite::bayes_oracle: bayes_suite(report, options); break;
  }
  for (const auto& row : report.rows) report.failures += row.gating && !row.ok;
  return report;
}

void write_verify_csv(std::ostream& out, const std::vector<VerifyReport>& reports) {
  CsvWriter csv(out);
  csv.comment("schema_version=1");
  csv.row({"suite", "check", "instance", "lhs", "rhs", "ok"});
  for (const auto& report : reports) {
    for (const auto& row : report.rows) {
      csv.row({to_string(report.suite), row.check, row.instance, format_double(row.lhs), format_double(row.rhs),
               row.ok ? "1" : "0"});
    }
  }
}

}  // namespace malign
