#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace varlp {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// x ⊞_p y = (x^p + y^p)^(1/p); max(x, y) for p = ∞.
///
/// Evaluated as m * (1 + (min/m)^p)^(1/p) with m = max(x, y), in log form for
/// p >= 50, so no intermediate power overflows for any admissible exponent.
double boxplus(double x, double y, double p);

/// Summation order and per-step exponents for a left fold.
///
/// order[k] is the index of the k-th summand; exponents[k] is used when the
/// (k+1)-th summand is folded in.
struct FoldOrder {
  std::vector<std::size_t> order;
  std::vector<double> exponents;

  /// Identity order with the given step exponents.
  static FoldOrder identity(std::span<const double> exponents);
};

/// ((v_0 ⊞_{e_0} v_1) ⊞_{e_1} v_2) ...; an empty list folds to 0.
double fold(std::span<const double> values, std::span<const double> exponents);
double fold(std::span<const double> values, const FoldOrder& order);

/// Dense row-major tensor of non-negative numbers.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  Tensor(std::vector<std::size_t> shape, std::vector<double> data);

  std::size_t rank() const noexcept { return shape.size(); }
};

/// Collapses one axis with an ℓ^p fold.
Tensor reduce_axis(const Tensor& t, std::size_t axis, double p);

struct FoldComparison {
  double lhs;  ///< ⊞^r over axis k, then ⊞^s over axis k+1
  double rhs;  ///< ⊞^s over axis k+1, then ⊞^r over axis k
};

/// Folds every axis of `tensor`, innermost (axis 0) first, with
/// axis_exponents[j] on axis j, once in the natural order and once with
/// axes k and k+1 swapped. Requires axis_exponents[k] <= axis_exponents[k+1].
FoldComparison nested_fold_compare(const Tensor& tensor, std::span<const double> axis_exponents,
                                   std::size_t k);

/// The root of a^a = e on (1, 2), about 1.76322.
double constant_a();

/// b_1 = 1, b_∞ = 2, otherwise the root of b + b^-p = 2 in (1, 2).
double constant_bp(double p);

}  // namespace varlp
