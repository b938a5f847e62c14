#pragma once

#include <span>
#include <vector>

#include "varlp/stepfn.hpp"

namespace varlp {

/// Piece of a weighted power modular: contributes len * w * (|f|/λ)^p.
/// Lengths are not constrained to sum to one at this level.
struct WeightedPiece {
  double len;
  double f;
  double p;
  double w;
};

std::vector<WeightedPiece> nakano_pieces(const Instance& inst);
std::vector<WeightedPiece> mo_pieces(const Instance& inst);
std::vector<WeightedPiece> weighted_pieces(const Instance& inst, std::span<const double> weights);
/// Common refinement of f, p and w.
std::vector<WeightedPiece> weighted_pieces(const StepFunction& f, const ExponentProfile& p,
                                           const WeightProfile& w);

/// Σ len·w·(|f|/λ)^p without validation; +inf when the sum leaves double range.
///
/// Terms are summed in ascending order, which makes the result independent of
/// the piece order.
double modular_sum(std::span<const WeightedPiece> pieces, double lambda);

/// d/dλ of modular_sum: -(1/λ) Σ len·w·p·(|f|/λ)^p. +/-inf on overflow.
double modular_derivative_sum(std::span<const WeightedPiece> pieces, double lambda);

/// Validated entry points; throw NonPositiveLambda or Overflow.
double modular(std::span<const WeightedPiece> pieces, double lambda);
double modular_lambda_derivative(std::span<const WeightedPiece> pieces, double lambda);

double modular_nakano(const Instance& inst, double lambda);
double modular_nakano(const StepFunction& f, const ExponentProfile& p, double lambda);
double modular_mo(const Instance& inst, double lambda);
double modular_mo(const StepFunction& f, const ExponentProfile& p, double lambda);
double modular_weighted(const StepFunction& f, const ExponentProfile& p, const WeightProfile& w, double lambda);
double modular_lambda_derivative(const StepFunction& f, const ExponentProfile& p, const WeightProfile& w,
                                 double lambda);

}  // namespace varlp
