#include "varlp/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace varlp {

Outcome leq(double lhs, double rhs, double slack, std::string detail) {
  Outcome o{lhs, rhs, 0.0, true, std::move(detail)};
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  o.margin = scale > 0.0 ? (rhs - lhs) / scale : 1.0;
  o.pass = std::isfinite(o.margin) && o.margin >= -slack;
  return o;
}

Outcome less(double lhs, double rhs, std::string detail) {
  Outcome o = leq(lhs, rhs, 0.0, std::move(detail));
  o.pass = (lhs == 0.0 && rhs == 0.0) || lhs < rhs;
  return o;
}

Outcome within(double error, double tol, std::string detail) {
  Outcome o{std::abs(error), tol, 0.0, true, std::move(detail)};
  o.margin = (tol - o.lhs) / tol;
  o.pass = o.lhs <= tol;
  return o;
}

const Outcome& worse(const Outcome& a, const Outcome& b) {
  if (a.pass != b.pass) return a.pass ? b : a;
  return b.margin < a.margin ? b : a;
}

void CheckReport::record(std::size_t trial, const Outcome& outcome, const std::optional<Instance>& instance) {
  const double ratio = outcome.rhs != 0.0 ? outcome.lhs / outcome.rhs
                                          : (outcome.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  if (trials == 0) {
    worst_margin = outcome.margin;
    worst_ratio = ratio;
  } else {
    worst_margin = std::min(worst_margin, outcome.margin);
    worst_ratio = std::max(worst_ratio, ratio);
  }
  ++trials;
  if (!worst || outcome.margin < worst->outcome.margin) worst = Witness{trial, instance, outcome};
  if (!outcome.pass) {
    pass = false;
    failures.push_back(Witness{trial, instance, outcome});
  }
}

}  // namespace varlp
