#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace malign {

enum class VerifySuite { usable, permcount, spanning, automorphism, autbound, qform, trace, bayes_oracle };

VerifySuite parse_suite(std::string_view name);
std::string_view to_string(VerifySuite suite);
std::vector<VerifySuite> all_suites();

/// Zero or unset sizes select the suite's own defaults.
struct VerifyOptions {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t p_max = 6;
  std::optional<std::uint64_t> instances;  // 0 runs nothing and emits a warning row
  std::uint64_t samples = 1'000'000;       // Monte-Carlo draws per qform repetition
  std::uint64_t seed = 1;
  std::size_t threads = 1;
};

struct VerifyRow {
  std::string check;
  std::string instance;
  double lhs = 0;
  double rhs = 0;
  bool ok = true;
  bool gating = true;  // non-gating rows are reported but do not fail the suite
};

struct VerifyReport {
  VerifySuite suite = VerifySuite::usable;
  std::vector<VerifyRow> rows;
  std::size_t instances = 0;
  std::size_t failures = 0;  // gating rows with ok == false

  bool ok() const { return failures == 0; }
};

VerifyReport run_verify(VerifySuite suite, const VerifyOptions& options);

/// Columns: suite, check, instance, lhs, rhs, ok.
void write_verify_csv(std::ostream& out, const std::vector<VerifyReport>& reports);

}  // namespace malign
