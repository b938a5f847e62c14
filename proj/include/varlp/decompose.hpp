#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "varlp/report.hpp"
#include "varlp/stepfn.hpp"

namespace varlp {

/// 2(1 + a·e), the multiplicative constant of the Nakano block chains.
double decomposition_constant();

/// Ordered, disjoint, covering list of non-empty piece blocks with the
/// essential bounds of p on each block.
class Partition {
 public:
  /// Throws SpecMismatch unless the blocks are non-empty, disjoint and cover
  /// every piece of `inst`.
  Partition(const Instance& inst, std::vector<PieceSet> blocks);

  std::span<const PieceSet> blocks() const noexcept { return blocks_; }
  std::span<const EssBounds> bounds() const noexcept { return bounds_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  std::size_t grid_size() const noexcept { return grid_size_; }

 private:
  std::vector<PieceSet> blocks_;
  std::vector<EssBounds> bounds_;
  std::size_t grid_size_ = 0;
};

enum class FoldDirection {
  forward,   ///< block 0, then join blocks 1, 2, ... in turn
  backward,  ///< last block, then join blocks n-2, ..., 0 in turn
};

/// How to evaluate and combine block norms.
///
/// block_exponents[k] is the constant exponent used inside block k, or
/// nullopt for the instance's own exponent. fold_exponents has one entry per
/// join: forward joins block k with fold_exponents[k-1], backward joins block
/// k with fold_exponents[k].
struct ChainSpec {
  std::vector<std::optional<double>> block_exponents;
  std::vector<double> fold_exponents;
  FoldDirection direction = FoldDirection::forward;

  /// Throws SpecMismatch when sizes disagree with `blocks` or an exponent is
  /// below 1.
  void check(std::size_t blocks) const;
};

enum class BlockNorm { nakano, ode };

enum class LevelChain {
  lower,  ///< brackets [r_1, r_2], (r_2, r_3], ..., folded from the top down
  upper,  ///< brackets [r_1, r_2), ..., [r_{n-1}, r_n], folded from the bottom up
};

struct LevelPartition {
  Partition partition;
  ChainSpec spec;
  /// Bracket index j (block lies in the bracket between cuts j and j+1) of
  /// each kept block; empty brackets are dropped.
  std::vector<std::size_t> brackets;
};

/// Splits the pieces of `inst` into exponent level sets. cuts must be
/// strictly increasing, start at exactly 1, have at least two entries and
/// end at or above max p; otherwise BadCuts.
///
/// The returned spec is the level chain: lower uses exponent r_j on bracket j
/// and joins it with ⊞_{r_j}; upper uses r_{j+1} for both.
LevelPartition partition_by_levels(const Instance& inst, std::span<const double> cuts, LevelChain chain);

/// Per-block norms of 1_block·f, using the chain's block exponents.
std::vector<double> block_norms(const Instance& inst, const Partition& partition, const ChainSpec& spec,
                                BlockNorm norm);

/// Fold of already computed block norms per spec.
double fold_chain(std::span<const double> norms, const ChainSpec& spec);

double chain_value(const Instance& inst, const Partition& partition, const ChainSpec& spec, BlockNorm norm);

/// Spec for block norms with constant exponents per block and the given fold
/// exponents joined forward (fold_exponents[k-1] joins block k).
ChainSpec constant_chain(std::span<const double> block_exponents);
/// Native exponent inside every block, forward joins with the given
/// exponents for blocks 1..n-1 (entry 0 is ignored).
ChainSpec native_chain(std::span<const double> join_exponents);

/// One two-sided (or one-sided) bound with its evaluation.
struct ChainCheck {
  std::string name;
  double norm = 0.0;       ///< the norm being bracketed
  double lower = 0.0;      ///< lower bound value (0 when one-sided upper)
  double upper = 0.0;      ///< upper bound value (+inf when one-sided lower)
  double constant = 1.0;   ///< the certified constant
  double observed = 0.0;   ///< smallest constant that would still hold
  bool informational = false;
  Outcome outcome;
};

struct DecompositionReport {
  std::vector<ChainCheck> chains;
  bool pass = true;
  double worst_margin = 0.0;

  void add(ChainCheck c);
  const ChainCheck* find(std::string_view name) const;
};

inline constexpr double kDecompositionSlack = 1e-9;

/// The four chains for an arbitrary partition:
///  chain1  Nakano, exponents r_i, divided by 2(1+ae), below |||f|||;
///  chain2  |||f||| below 2(1+ae) times Nakano with exponents s_i;
///  chain3  ODE norms of the blocks, within b_p̄ of ‖f‖ (folds s_i below, r_i above);
///  chain4  the same with Nakano block norms.
DecompositionReport certify_decomposition(const Instance& inst, const Partition& partition,
                                          double slack = kDecompositionSlack);

/// Level-set chains for the given cuts, both with constant 2(1+ae), plus the
/// variant whose top block uses exponent r_n (informational only).
DecompositionReport certify_levels(const Instance& inst, std::span<const double> cuts,
                                   double slack = kDecompositionSlack);

/// Two-block bounds with constant 12 at threshold r:
/// (|||1_{p>=r}f|||_r + |||1_{p<r}f|||_1)/12 <= |||f||| <= 12(|||1_{p<r}f|||_r ⊞_p̄ |||1_{p>=r}f|||_p̄).
DecompositionReport twelve_constant_check(const Instance& inst, double r, double slack = kDecompositionSlack);

}  // namespace varlp
