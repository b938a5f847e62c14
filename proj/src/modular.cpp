#include "varlp/modular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "varlp/error.hpp"

namespace varlp {

namespace {

constexpr double kLogDomainThreshold = 600.0;

// len * w * (|f|/λ)^p, switching to the log form when p·|ln x| is large.
double term(const WeightedPiece& pc, double lambda, double extra_factor) {
  if (pc.f == 0.0) return 0.0;
  const double x = std::abs(pc.f) / lambda;
  const double lx = std::log(x);
  if (pc.p * std::abs(lx) > kLogDomainThreshold) {
    return std::exp(std::log(pc.len) + std::log(pc.w * extra_factor) + pc.p * lx);
  }
  return pc.len * (pc.w * extra_factor) * std::pow(x, pc.p);
}

double sorted_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::NonPositiveLambda, "lambda must be positive and finite");
  }
}

}  // namespace

std::vector<WeightedPiece> nakano_pieces(const Instance& inst) {
  std::vector<WeightedPiece> out;
  out.reserve(inst.size());
  for (const auto& pc : inst.pieces()) out.push_back({pc.len, pc.f, pc.p, 1.0 / pc.p});
  return out;
}

std::vector<WeightedPiece> mo_pieces(const Instance& inst) {
  std::vector<WeightedPiece> out;
  out.reserve(inst.size());
  for (const auto& pc : inst.pieces()) out.push_back({pc.len, pc.f, pc.p, 1.0});
  return out;
}

std::vector<WeightedPiece> weighted_pieces(const Instance& inst, std::span<const double> weights) {
  if (weights.size() != inst.size()) throw Error(ErrorKind::LengthMismatch, "one weight per piece required");
  std::vector<WeightedPiece> out;
  out.reserve(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorKind::NonPositiveWeight, "weights must be positive and finite");
    }
    out.push_back({inst[i].len, inst[i].f, inst[i].p, weights[i]});
  }
  return out;
}

std::vector<WeightedPiece> weighted_pieces(const StepFunction& f, const ExponentProfile& p,
                                           const WeightProfile& w) {
  const StepFunction parts[] = {f, p.function(), w.function()};
  auto r = common_refinement(parts);
  std::vector<WeightedPiece> out(r[0].size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = {r[0].length(i), r[0].values()[i], r[1].values()[i], r[2].values()[i]};
  }
  return out;
}

double modular_sum(std::span<const WeightedPiece> pieces, double lambda) {
  std::vector<double> terms;
  terms.reserve(pieces.size());
  for (const auto& pc : pieces) terms.push_back(term(pc, lambda, 1.0));
  const double s = sorted_sum(terms);
  return std::isfinite(s) ? s : std::numeric_limits<double>::infinity();
}

double modular_derivative_sum(std::span<const WeightedPiece> pieces, double lambda) {
  std::vector<double> terms;
  terms.reserve(pieces.size());
  for (const auto& pc : pieces) terms.push_back(term(pc, lambda, pc.p));
  const double s = sorted_sum(terms);
  if (!std::isfinite(s)) return -std::numeric_limits<double>::infinity();
  return -s / lambda;
}

double modular(std::span<const WeightedPiece> pieces, double lambda) {
  check_lambda(lambda);
  const double v = modular_sum(pieces, lambda);
  if (std::isinf(v)) throw Error(ErrorKind::Overflow, "modular exceeds double range; rescale lambda");
  return v;
}

double modular_lambda_derivative(std::span<const WeightedPiece> pieces, double lambda) {
  check_lambda(lambda);
  const double v = modular_derivative_sum(pieces, lambda);
  if (std::isinf(v)) throw Error(ErrorKind::Overflow, "modular derivative exceeds double range");
  return v;
}

double modular_nakano(const Instance& inst, double lambda) { return modular(nakano_pieces(inst), lambda); }

double modular_nakano(const StepFunction& f, const ExponentProfile& p, double lambda) {
  return modular_nakano(Instance::from_functions(f, p), lambda);
}

double modular_mo(const Instance& inst, double lambda) { return modular(mo_pieces(inst), lambda); }

double modular_mo(const StepFunction& f, const ExponentProfile& p, double lambda) {
  return modular_mo(Instance::from_functions(f, p), lambda);
}

double modular_weighted(const StepFunction& f, const ExponentProfile& p, const WeightProfile& w, double lambda) {
  return modular(weighted_pieces(f, p, w), lambda);
}

double modular_lambda_derivative(const StepFunction& f, const ExponentProfile& p, const WeightProfile& w,
                                 double lambda) {
  return modular_lambda_derivative(weighted_pieces(f, p, w), lambda);
}

}  // namespace varlp
