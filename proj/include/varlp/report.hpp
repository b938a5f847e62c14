#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "varlp/stepfn.hpp"

namespace varlp {

/// One evaluated inequality (or tolerance check).
///
/// For an inequality lhs <= rhs the margin is (rhs - lhs) / max(|lhs|, |rhs|),
/// so a negative margin means a violation by that relative amount. Whenever
/// lhs is 0 and rhs is not negative the margin is 1, including 0 <= 0. For a
/// tolerance check lhs is the observed error, rhs the tolerance, and the
/// margin is (rhs - lhs) / rhs.
struct Outcome {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = true;
  std::string detail;
};

/// lhs <= rhs with relative slack.
Outcome leq(double lhs, double rhs, double slack, std::string detail = {});
/// lhs < rhs strictly; 0 < 0 counts as satisfied (degenerate zero instance).
Outcome less(double lhs, double rhs, std::string detail = {});
/// |error| <= tol.
Outcome within(double error, double tol, std::string detail = {});
/// The outcome with the smaller margin; `a` wins ties.
const Outcome& worse(const Outcome& a, const Outcome& b);

struct Witness {
  std::size_t trial = 0;
  std::optional<Instance> instance;
  Outcome outcome;
};

/// Aggregated result of running one named check over many trials.
struct CheckReport {
  std::string name;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double slack = 0.0;
  bool pass = true;
  double worst_margin = 0.0;
  double worst_ratio = 0.0;  ///< max lhs/rhs over all trials
  std::vector<Witness> failures;
  std::optional<Witness> worst;

  /// Folds in one trial. Trials must be recorded in increasing index order
  /// for the report to be reproducible.
  void record(std::size_t trial, const Outcome& outcome, const std::optional<Instance>& instance);
};

}  // namespace varlp
