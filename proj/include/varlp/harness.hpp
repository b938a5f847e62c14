#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "varlp/io.hpp"
#include "varlp/report.hpp"
#include "varlp/stepfn.hpp"

namespace varlp {

/// Random instance generator settings.
struct GenConfig {
  std::size_t max_pieces = 8;
  double f_lo = 0.0;
  double f_hi = 10.0;
  double p_lo = 1.0;
  double p_hi = 64.0;
  double zero_piece_prob = 0.1;
  std::uint64_t seed = 0;
  /// Random permutations per trial for the rearrangement checks.
  std::size_t permutations = 100;

  /// Throws InvalidConfig on unordered ranges, f_lo < 0, p outside
  /// [1, kMaxExponent], a probability outside [0, 1] or zero counts.
  void validate() const;

  /// The stiff suite: exponents drawn from (1, 1e4).
  static GenConfig extreme(std::uint64_t seed);
};

/// Deterministic in (cfg, trial): piece count uniform in [1, max_pieces],
/// lengths proportional to positive draws in [0.05, 1.05), values uniform in
/// [f_lo, f_hi] (zero with zero_piece_prob), exponents log-uniform in
/// [p_lo, p_hi]; equal neighbours merged.
Instance generate_instance(const GenConfig& cfg, std::size_t trial);

/// What a check sees for one trial.
struct TrialInput {
  const GenConfig& cfg;
  std::size_t trial;
  const Instance& instance;
  std::uint64_t aux_seed;  ///< for the check's own random draws
};

struct Check {
  std::string name;
  std::string statement;
  double slack = 0.0;
  /// The generated instance determines the outcome (and becomes the witness).
  bool uses_instance = true;
  /// Evaluated on trial 0 only.
  bool once = false;
  std::function<Outcome(const TrialInput&)> run;
};

const std::vector<Check>& check_registry();
/// Throws InvalidConfig for an unknown name.
const Check& find_check(std::string_view name);
std::vector<std::string> all_check_names();

/// Sub-seed for the check's own draws in a trial.
std::uint64_t aux_seed(const GenConfig& cfg, std::size_t trial, std::string_view check);

struct SuiteResult {
  GenConfig cfg;
  std::size_t trials = 0;
  std::vector<CheckReport> reports;

  bool pass() const;
};

/// Runs every named check on `trials` generated instances. Work is spread
/// over `threads` workers; results are merged in trial order, so the result
/// does not depend on the thread count. Throws InvalidConfig for trials = 0.
SuiteResult run_suite(const GenConfig& cfg, std::size_t trials, std::span<const std::string> checks,
                      unsigned threads = 1);

inline constexpr std::string_view kReportSchema = "varlp-report/1";

Json config_to_json(const GenConfig& cfg);
GenConfig config_from_json(const Json& j);
Json suite_to_json(const SuiteResult& result);

/// Witnesses in a report, in replay-index order: for each check, its failures
/// followed by its worst trial.
struct WitnessRef {
  std::string check;
  std::size_t trial;
  double margin;
  std::optional<Instance> instance;
};
std::vector<WitnessRef> report_witnesses(const Json& report);

struct ReplayResult {
  WitnessRef witness;
  Outcome outcome;
  bool reproduced = false;  ///< bitwise-equal margin
};

/// Re-runs witness `index` of a report. Throws IndexOutOfRange or ParseError.
ReplayResult replay(const Json& report, std::size_t index);

}  // namespace varlp
