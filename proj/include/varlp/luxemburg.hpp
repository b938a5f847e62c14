#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "varlp/modular.hpp"
#include "varlp/stepfn.hpp"

namespace varlp {

enum class NormMethod { nakano, mo, weighted, ode };

std::string_view to_string(NormMethod m);

struct NormResult {
  double value = 0.0;
  NormMethod method = NormMethod::nakano;
  double bracket_width = 0.0;  ///< final λ uncertainty (0 for closed forms)
  std::size_t iterations = 0;
};

inline constexpr double kDefaultTol = 1e-12;
inline constexpr double kMinTol = 1e-14;

/// inf{λ > 0 : modular(λ) <= 1} by bisection.
///
/// The returned value is the upper end of the final bracket, so the modular
/// there is at most one. Bisection continues until the bracket is at most
/// `tol` wide and the modular at the returned λ is at least 1 - 10·tol, or
/// until the bracket stops shrinking in floating point.
NormResult luxemburg_norm(std::span<const WeightedPiece> pieces, double tol, NormMethod method);

NormResult norm_nakano(const Instance& inst, double tol = kDefaultTol);
NormResult norm_nakano(const StepFunction& f, const ExponentProfile& p, double tol = kDefaultTol);
NormResult norm_mo(const Instance& inst, double tol = kDefaultTol);
NormResult norm_mo(const StepFunction& f, const ExponentProfile& p, double tol = kDefaultTol);
NormResult norm_weighted(const StepFunction& f, const ExponentProfile& p, const WeightProfile& w,
                         double tol = kDefaultTol);
NormResult norm_weighted(const Instance& inst, std::span<const double> weights, double tol = kDefaultTol);

}  // namespace varlp
