#include "varlp/ode_norm.hpp"

#include <cmath>

#include "varlp/error.hpp"
#include "varlp/scalars.hpp"

namespace varlp {

namespace {

// |f|·len^(1/p): the norm contributed by one constant piece on its own.
double piece_increment(double f, double len, double p) {
  return std::abs(f) * std::pow(len, 1.0 / p);
}

std::vector<double> grid_of(const Instance& inst) {
  std::vector<double> bps(inst.size() + 1, 0.0);
  for (std::size_t i = 0; i < inst.size(); ++i) bps[i + 1] = bps[i] + inst[i].len;
  bps.back() = 1.0;
  return bps;
}

}  // namespace

std::vector<double> phi_chain(std::span<const Piece> pieces, double seed) {
  std::vector<double> phi(pieces.size() + 1, seed);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& pc = pieces[i];
    phi[i + 1] = pc.f == 0.0 ? phi[i] : boxplus(phi[i], piece_increment(pc.f, pc.len, pc.p), pc.p);
  }
  return phi;
}

AccumulationCurve phi_exact_step(const Instance& inst) {
  return {grid_of(inst), phi_chain(inst.pieces())};
}

AccumulationCurve phi_exact_step(const StepFunction& f, const ExponentProfile& p) {
  return phi_exact_step(Instance::from_functions(f, p));
}

NormResult norm_ode(const Instance& inst) {
  NormResult res;
  res.method = NormMethod::ode;
  res.value = phi_chain(inst.pieces()).back();
  return res;
}

NormResult norm_ode(const StepFunction& f, const ExponentProfile& p) {
  return norm_ode(Instance::from_functions(f, p));
}

double accumulation(const Instance& inst, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::OutOfDomain, "t outside [0,1]");
  if (t == 1.0) return norm_ode(inst).value;
  double phi = 0.0;
  double start = 0.0;
  for (const auto& pc : inst.pieces()) {
    const double end = start + pc.len;
    if (t < end) {
      const double part = t - start;
      if (pc.f == 0.0 || part <= 0.0) return phi;
      return boxplus(phi, piece_increment(pc.f, part, pc.p), pc.p);
    }
    if (pc.f != 0.0) phi = boxplus(phi, piece_increment(pc.f, pc.len, pc.p), pc.p);
    start = end;
  }
  return phi;
}

double accumulation(const StepFunction& f, const ExponentProfile& p, double t) {
  return accumulation(Instance::from_functions(f, p), t);
}

AccumulationCurve phi_numeric(const Instance& inst, std::size_t steps, double eps0) {
  if (!(eps0 > 0.0)) throw Error(ErrorKind::NonPositiveEps, "eps0 must be positive");
  if (steps == 0) throw Error(ErrorKind::EmptySet, "steps must be at least 1");
  AccumulationCurve curve{grid_of(inst), std::vector<double>(inst.size() + 1, eps0)};
  double phi = eps0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& pc = inst[i];
    if (pc.f != 0.0) {
      const double h = pc.len / static_cast<double>(steps);
      const double inc = piece_increment(pc.f, h, pc.p);
      for (std::size_t k = 0; k < steps; ++k) phi = boxplus(phi, inc, pc.p);
    }
    curve.phi[i + 1] = phi;
  }
  return curve;
}

AccumulationCurve phi_numeric(const StepFunction& f, const ExponentProfile& p, std::size_t steps, double eps0) {
  return phi_numeric(Instance::from_functions(f, p), steps, eps0);
}

AccumulationCurve varying_lambda_curve(const Instance& inst, std::span<const double> weights) {
  if (weights.size() != inst.size()) throw Error(ErrorKind::LengthMismatch, "one weight per piece required");
  AccumulationCurve curve{grid_of(inst), std::vector<double>(inst.size() + 1, 0.0)};
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& pc = inst[i];
    if (!(weights[i] > 0.0)) throw Error(ErrorKind::NonPositiveWeight, "weights must be positive");
    double next = curve.phi[i];
    if (pc.f != 0.0) {
      // d(λ^p)/dt = p·w·|f|^p on the piece.
      const double inc = std::abs(pc.f) * std::pow(pc.p * weights[i] * pc.len, 1.0 / pc.p);
      next = boxplus(curve.phi[i], inc, pc.p);
    }
    curve.phi[i + 1] = next;
  }
  return curve;
}

}  // namespace varlp
