#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "varlp/ode_norm.hpp"
#include "varlp/report.hpp"
#include "varlp/stepfn.hpp"

namespace varlp {

/// Bijection on piece indices: position k of the result holds source piece
/// order()[k].
class PiecePermutation {
 public:
  explicit PiecePermutation(std::vector<std::size_t> order);
  static PiecePermutation identity(std::size_t n);

  std::span<const std::size_t> order() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_.size(); }

 private:
  std::vector<std::size_t> order_;
};

Instance permute(const Instance& inst, const PiecePermutation& sigma);
/// Acts on the common refinement of f and p.
std::pair<StepFunction, ExponentProfile> permute(const StepFunction& f, const ExponentProfile& p,
                                                 const PiecePermutation& sigma);

enum class SortDirection { inc, dec };

/// Stable sort of the pieces by exponent; ties keep their original order.
Instance sort_by_exponent(const Instance& inst, SortDirection dir);
std::pair<StepFunction, ExponentProfile> sort_by_exponent(const StepFunction& f, const ExponentProfile& p,
                                                          SortDirection dir);

/// Draws `trials` random piece permutations and checks, with relative slack
/// 1e-9, that the ODE norm of each lies between the increasing and decreasing
/// arrangements and within a factor b_p̄ of the original. Failures are report
/// content; the witness is the offending permuted instance.
CheckReport certify_rearrangement(const Instance& inst, std::size_t trials, std::uint64_t seed);

/// Evaluates the ODE norm of the constant function 1 against a monotone
/// exponent: <= 1 for increasing p, >= 1 for decreasing p, strictly (by
/// 1e-12) for non-constant p, and = 1 (1e-12) for constant p.
/// Throws NotMonotone when p is neither non-decreasing nor non-increasing.
CheckReport constant_one_monotone_check(const ExponentProfile& p);
Outcome constant_one_monotone_outcome(const ExponentProfile& p);

/// Image of an instance under T(t) = ∫_0^t |f|^p/p.
struct AuxTransform {
  double alpha = 0.0;            ///< T(1)
  std::vector<double> grid;      ///< T(t_i), from 0 to alpha
  std::vector<double> p_hat;     ///< exponent on each transformed piece
  std::vector<double> phi_hat;   ///< φ at the transformed breakpoints

  /// p̂ as a profile on [0,1] (grid divided by alpha).
  ExponentProfile p_hat_profile() const;
};

/// Throws ZeroPiece if f vanishes on some piece.
AuxTransform aux_transform(const Instance& inst);

/// Per-piece slope of φ̂^p̂ in the transformed variable; equals p̂ exactly in
/// exact arithmetic.
std::vector<double> aux_slopes(const AuxTransform& t);

/// ‖1‖ with exponent p on (0, 1/ln p) followed by exponent 1, and the
/// swapped arrangement. Uses the raw recursion, so p may exceed kMaxExponent.
struct LimitExample {
  double p = 0.0;
  double decreasing = 0.0;    ///< L^p then L^1
  double increasing = 0.0;    ///< L^1 then L^p
  double hand_formula = 0.0;  ///< (1/ln p)^(1/p) + 1 - 1/ln p
};

LimitExample limit_example(double p);

}  // namespace varlp
