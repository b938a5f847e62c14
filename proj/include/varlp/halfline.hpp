#pragma once

#include <cstddef>
#include <vector>

#include "varlp/luxemburg.hpp"
#include "varlp/modular.hpp"
#include "varlp/report.hpp"
#include "varlp/stepfn.hpp"

namespace varlp {

struct HalfLinePiece {
  double len;
  double f;
  double r;  ///< exponent
  double w;  ///< weight

  friend bool operator==(const HalfLinePiece&, const HalfLinePiece&) = default;
};

/// Weighted step data on [0, T) with an implicit zero tail beyond T. Lengths
/// are positive but need not sum to anything in particular.
class HalfLineInstance {
 public:
  explicit HalfLineInstance(std::vector<HalfLinePiece> pieces);

  std::span<const HalfLinePiece> pieces() const noexcept { return pieces_; }
  double extent() const;

  /// The data as modular pieces with their true lengths.
  std::vector<WeightedPiece> weighted() const;

 private:
  std::vector<HalfLinePiece> pieces_;
};

/// t / (1 + t), mapping [0, ∞) onto [0, 1).
double halfline_map(double t);

/// Midpoint discretization of the isometry onto [0,1].
struct UnitImage {
  std::vector<double> breakpoints;     ///< image grid, 0 .. 1
  std::vector<WeightedPiece> pieces;   ///< one per image interval, the zero fill last
  double support_end = 0.0;            ///< h(T)

  StepFunction f() const;
  ExponentProfile p() const;
  WeightProfile w() const;
};

/// Splits each source piece into `refine` equal subpieces; [t_a, t_b) maps to
/// [h(t_a), h(t_b)) with value (1+t_m)^(2/r)·f at the midpoint t_m, the same
/// exponent and weight. [h(T), 1) carries the zero function (p = 1, w = 1).
/// Throws EmptySet when refine is 0.
UnitImage to_unit_interval(const HalfLineInstance& inst, std::size_t refine);

NormResult source_norm(const HalfLineInstance& inst, double tol = kDefaultTol);
NormResult image_norm(const UnitImage& image, double tol = kDefaultTol);

struct IsometryReport {
  double source = 0.0;
  std::vector<std::size_t> refines;
  std::vector<double> image;
  std::vector<double> discrepancy;  ///< |image - source|
  /// One outcome per doubling: discrepancy ratio <= 0.6, or both steps below
  /// the bisection noise floor.
  CheckReport report;
};

inline constexpr double kIsometryRatio = 0.6;
inline constexpr double kIsometryNoise = 1e-10;

/// Compares the weighted norms on refines start, 2·start, ... up to `refine`
/// (just `refine` when it is below start).
IsometryReport verify_isometry(const HalfLineInstance& inst, std::size_t refine, std::size_t start = 8);

}  // namespace varlp
