#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace varlp {

/// Pieces shorter than this are treated as measure-zero and dropped.
inline constexpr double kMinPiece = 1e-12;
/// Upper cap on every exponent profile.
inline constexpr double kMaxExponent = 1e6;

/// Piecewise-constant real function on [0,1].
///
/// Piece i is the half-open interval [t_i, t_{i+1}) carrying values()[i].
/// The constructor enforces the structural invariants (exact endpoints 0 and 1,
/// strictly increasing breakpoints, no piece shorter than kMinPiece, finite
/// values) but does not merge equal neighbours, so a StepFunction may live on
/// a refined grid. Use normalize() for the canonical form.
class StepFunction {
 public:
  /// The zero function on a single piece.
  StepFunction();

  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  /// Builds from piece lengths; lengths must sum to 1 within 1e-9.
  static StepFunction from_pieces(std::span<const double> lengths, std::span<const double> values);
  static StepFunction constant(double c);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double length(std::size_t i) const { return breakpoints_[i + 1] - breakpoints_[i]; }

  /// Value at t; t = 1 belongs to the last piece.
  double operator()(double t) const;

  /// Sum of length * value.
  double integral() const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// A step function with every value in [1, kMaxExponent].
class ExponentProfile {
 public:
  explicit ExponentProfile(StepFunction p);
  static ExponentProfile constant(double p);

  const StepFunction& function() const noexcept { return p_; }
  std::span<const double> breakpoints() const noexcept { return p_.breakpoints(); }
  std::span<const double> values() const noexcept { return p_.values(); }
  std::size_t size() const noexcept { return p_.size(); }

  /// Essential supremum (max piece value).
  double sup() const;

 private:
  StepFunction p_;
};

/// A step function with strictly positive finite values.
class WeightProfile {
 public:
  explicit WeightProfile(StepFunction w);
  static WeightProfile constant(double w);

  const StepFunction& function() const noexcept { return w_; }
  std::span<const double> values() const noexcept { return w_.values(); }

 private:
  StepFunction w_;
};

/// Set of piece indices on some grid, sorted and duplicate-free.
class PieceSet {
 public:
  PieceSet() = default;
  explicit PieceSet(std::vector<std::size_t> indices);

  static PieceSet all(std::size_t n);
  static PieceSet range(std::size_t first, std::size_t last);

  std::span<const std::size_t> indices() const noexcept { return indices_; }
  bool empty() const noexcept { return indices_.empty(); }
  std::size_t size() const noexcept { return indices_.size(); }
  bool contains(std::size_t i) const;

  /// Indices of {0..n-1} not in this set.
  PieceSet complement(std::size_t n) const;

  /// Throws IndexOutOfRange unless every index is below n.
  void check_grid(std::size_t n) const;

  friend bool operator==(const PieceSet&, const PieceSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// Canonical form: zero-length and sub-kMinPiece pieces removed, equal
/// neighbours merged. Breakpoints need only be non-decreasing.
StepFunction normalize(std::span<const double> breakpoints, std::span<const double> values);
StepFunction normalize(const StepFunction& sf);

/// Both inputs re-expressed on the sorted union of their breakpoints.
std::pair<StepFunction, StepFunction> common_refinement(const StepFunction& a, const StepFunction& b);

/// Common refinement of any number of step functions.
std::vector<StepFunction> common_refinement(std::span<const StepFunction> fs);

/// 1_delta * f on f's own grid.
StepFunction restrict(const StepFunction& f, const PieceSet& delta);

struct EssBounds {
  double inf;
  double sup;
};

EssBounds ess_bounds(const ExponentProfile& p, const PieceSet& delta);

/// n equal pieces, piece i valued sampler(midpoint).
StepFunction from_samples(const std::function<double(double)>& sampler, std::size_t n);

// -- Instances ---------------------------------------------------------------

/// One piece of a paired (f, p) instance.
struct Piece {
  double len;
  double f;
  double p;

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// A function and an exponent on a shared piece grid over [0,1].
///
/// Lengths are stored directly (not as breakpoints) so that reordering the
/// pieces preserves every (len, f, p) triple bit for bit.
class Instance {
 public:
  Instance();

  /// Validates and cleans raw pieces: drops pieces below kMinPiece, checks the
  /// unit-sum constraint (1e-9) and rescales when off by more than 1e-15.
  explicit Instance(std::vector<Piece> pieces);

  static Instance from_functions(const StepFunction& f, const ExponentProfile& p);

  std::span<const Piece> pieces() const noexcept { return pieces_; }
  std::size_t size() const noexcept { return pieces_.size(); }
  const Piece& operator[](std::size_t i) const { return pieces_[i]; }

  StepFunction f() const;
  ExponentProfile p() const;

  /// Adjacent pieces with equal (f, p) merged.
  Instance normalized() const;

  /// Same grid and exponents, values multiplied by c.
  Instance scaled(double c) const;
  /// Same grid and exponents, new values.
  Instance with_values(std::span<const double> values) const;
  /// Same grid and values, new exponents.
  Instance with_exponents(std::span<const double> exponents) const;

  double max_exponent() const;
  double min_exponent() const;
  double sup_abs() const;
  bool is_zero() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  struct Trusted {};
  Instance(Trusted, std::vector<Piece> pieces) : pieces_(std::move(pieces)) {}

  std::vector<Piece> pieces_;
};

Instance restrict(const Instance& inst, const PieceSet& delta);
EssBounds ess_bounds(const Instance& inst, const PieceSet& delta);

}  // namespace varlp
