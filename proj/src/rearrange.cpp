#include "varlp/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "varlp/error.hpp"
#include "varlp/random.hpp"
#include "varlp/scalars.hpp"

namespace varlp {

namespace {

constexpr double kSlack = 1e-9;

Instance reorder(const Instance& inst, std::span<const std::size_t> order) {
  std::vector<Piece> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(inst[i]);
  return Instance(std::move(out));
}

}  // namespace

PiecePermutation::PiecePermutation(std::vector<std::size_t> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (std::size_t i : order_) {
    if (i >= order_.size() || seen[i]) throw Error(ErrorKind::InvalidPermutation, "not a bijection");
    seen[i] = true;
  }
}

PiecePermutation PiecePermutation::identity(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return PiecePermutation(std::move(order));
}

Instance permute(const Instance& inst, const PiecePermutation& sigma) {
  if (sigma.size() != inst.size()) {
    throw Error(ErrorKind::InvalidPermutation, "permutation size differs from the piece count");
  }
  return reorder(inst, sigma.order());
}

std::pair<StepFunction, ExponentProfile> permute(const StepFunction& f, const ExponentProfile& p,
                                                 const PiecePermutation& sigma) {
  const auto out = permute(Instance::from_functions(f, p), sigma);
  return {out.f(), out.p()};
}

Instance sort_by_exponent(const Instance& inst, SortDirection dir) {
  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dir == SortDirection::inc ? inst[a].p < inst[b].p : inst[a].p > inst[b].p;
  });
  return reorder(inst, order);
}

std::pair<StepFunction, ExponentProfile> sort_by_exponent(const StepFunction& f, const ExponentProfile& p,
                                                          SortDirection dir) {
  const auto out = sort_by_exponent(Instance::from_functions(f, p), dir);
  return {out.f(), out.p()};
}

CheckReport certify_rearrangement(const Instance& inst, std::size_t trials, std::uint64_t seed) {
  CheckReport report;
  report.name = "T31";
  report.seed = seed;
  report.slack = kSlack;
  const double b = constant_bp(inst.max_exponent());
  const double original = norm_ode(inst).value;
  const double lowest = norm_ode(sort_by_exponent(inst, SortDirection::inc)).value;
  const double highest = norm_ode(sort_by_exponent(inst, SortDirection::dec)).value;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, trial));
    const auto permuted = permute(inst, PiecePermutation(rng.permutation(inst.size())));
    const double value = norm_ode(permuted).value;
    Outcome o = leq(lowest, value, kSlack, "increasing <= permuted");
    o = worse(o, leq(value, highest, kSlack, "permuted <= decreasing"));
    o = worse(o, leq(value, b * original, kSlack, "permuted <= b * original"));
    o = worse(o, leq(original, b * value, kSlack, "original <= b * permuted"));
    report.record(trial, o, permuted);
  }
  return report;
}

Outcome constant_one_monotone_outcome(const ExponentProfile& p) {
  const auto vals = p.values();
  const bool non_decreasing = std::is_sorted(vals.begin(), vals.end());
  const bool non_increasing = std::is_sorted(vals.begin(), vals.end(), std::greater<>());
  if (!non_decreasing && !non_increasing) throw Error(ErrorKind::NotMonotone, "exponent is not monotone");

  const double value = norm_ode(StepFunction::constant(1.0), p).value;
  constexpr double kStrict = 1e-12;
  if (non_decreasing && non_increasing) return within(value - 1.0, kStrict, "constant p: norm of 1 is 1");
  if (non_decreasing) return less(value, 1.0 - kStrict, "increasing p: norm of 1 < 1");
  return less(1.0 + kStrict, value, "decreasing p: norm of 1 > 1");
}

CheckReport constant_one_monotone_check(const ExponentProfile& p) {
  CheckReport report;
  report.name = "P32";
  const Outcome o = constant_one_monotone_outcome(p);
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < p.size(); ++i) {
    pieces.push_back({p.function().length(i), 1.0, p.values()[i]});
  }
  report.record(0, o, Instance(std::move(pieces)));
  return report;
}

ExponentProfile AuxTransform::p_hat_profile() const {
  std::vector<double> bps(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) bps[i] = grid[i] / alpha;
  bps.front() = 0.0;
  bps.back() = 1.0;
  return ExponentProfile(normalize(bps, p_hat));
}

AuxTransform aux_transform(const Instance& inst) {
  AuxTransform t;
  t.grid.assign(1, 0.0);
  for (const auto& pc : inst.pieces()) {
    if (pc.f == 0.0) throw Error(ErrorKind::ZeroPiece, "auxiliary transform needs f != 0 on every piece");
    t.grid.push_back(t.grid.back() + pc.len * std::pow(std::abs(pc.f), pc.p) / pc.p);
    t.p_hat.push_back(pc.p);
  }
  t.alpha = t.grid.back();
  t.phi_hat = phi_chain(inst.pieces());
  return t;
}

std::vector<double> aux_slopes(const AuxTransform& t) {
  std::vector<double> slopes(t.p_hat.size());
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    const double q = t.p_hat[i];
    slopes[i] = (std::pow(t.phi_hat[i + 1], q) - std::pow(t.phi_hat[i], q)) / (t.grid[i + 1] - t.grid[i]);
  }
  return slopes;
}

LimitExample limit_example(double p) {
  if (!(p > std::numbers::e)) throw Error(ErrorKind::OutOfDomain, "limit example needs 1/ln p < 1");
  const double head = 1.0 / std::log(p);
  const Piece big{head, 1.0, p};
  const Piece one{1.0 - head, 1.0, 1.0};
  LimitExample ex;
  ex.p = p;
  ex.decreasing = phi_chain(std::vector<Piece>{big, one}).back();
  ex.increasing = phi_chain(std::vector<Piece>{Piece{head, 1.0, 1.0}, Piece{1.0 - head, 1.0, p}}).back();
  ex.hand_formula = std::pow(head, 1.0 / p) + 1.0 - head;
  return ex;
}

}  // namespace varlp
