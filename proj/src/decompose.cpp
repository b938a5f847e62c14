#include "varlp/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "varlp/error.hpp"
#include "varlp/luxemburg.hpp"
#include "varlp/ode_norm.hpp"
#include "varlp/scalars.hpp"

namespace varlp {

double decomposition_constant() { return 2.0 * (1.0 + constant_a() * std::numbers::e); }

Partition::Partition(const Instance& inst, std::vector<PieceSet> blocks)
    : blocks_(std::move(blocks)), grid_size_(inst.size()) {
  std::vector<bool> seen(grid_size_, false);
  std::size_t covered = 0;
  for (const auto& block : blocks_) {
    if (block.empty()) throw Error(ErrorKind::SpecMismatch, "empty block in partition");
    for (std::size_t i : block.indices()) {
      if (i >= grid_size_) throw Error(ErrorKind::SpecMismatch, "block index beyond the piece grid");
      if (seen[i]) throw Error(ErrorKind::SpecMismatch, "blocks overlap");
      seen[i] = true;
      ++covered;
    }
    bounds_.push_back(ess_bounds(inst, block));
  }
  if (covered != grid_size_) throw Error(ErrorKind::SpecMismatch, "blocks do not cover every piece");
}

void ChainSpec::check(std::size_t blocks) const {
  if (blocks == 0) throw Error(ErrorKind::SpecMismatch, "chain over zero blocks");
  if (block_exponents.size() != blocks || fold_exponents.size() + 1 != blocks) {
    throw Error(ErrorKind::SpecMismatch, "chain spec sizes do not match the partition");
  }
  for (const auto& e : block_exponents) {
    if (e && !(*e >= 1.0)) throw Error(ErrorKind::SpecMismatch, "block exponent below 1");
  }
  for (double e : fold_exponents) {
    if (!(e >= 1.0)) throw Error(ErrorKind::SpecMismatch, "fold exponent below 1");
  }
}

LevelPartition partition_by_levels(const Instance& inst, std::span<const double> cuts, LevelChain chain) {
  if (cuts.size() < 2) throw Error(ErrorKind::BadCuts, "need at least two cuts");
  if (cuts.front() != 1.0) throw Error(ErrorKind::BadCuts, "first cut must be 1");
  for (std::size_t j = 1; j < cuts.size(); ++j) {
    if (!(cuts[j] > cuts[j - 1]) || !std::isfinite(cuts[j])) {
      throw Error(ErrorKind::BadCuts, "cuts must be finite and strictly increasing");
    }
  }
  if (cuts.back() < inst.max_exponent()) throw Error(ErrorKind::BadCuts, "last cut is below max p");

  const std::size_t brackets = cuts.size() - 1;
  std::vector<std::vector<std::size_t>> members(brackets);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const double p = inst[i].p;
    std::size_t j = 0;
    if (chain == LevelChain::lower) {
      // (r_j, r_{j+1}], bracket 0 closed at r_1
      while (j + 1 < brackets && p > cuts[j + 1]) ++j;
    } else {
      // [r_j, r_{j+1}), last bracket closed at r_n
      while (j + 1 < brackets && p >= cuts[j + 1]) ++j;
    }
    members[j].push_back(i);
  }

  std::vector<PieceSet> blocks;
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < brackets; ++j) {
    if (members[j].empty()) continue;
    blocks.emplace_back(std::move(members[j]));
    kept.push_back(j);
  }

  ChainSpec spec;
  spec.direction = chain == LevelChain::lower ? FoldDirection::backward : FoldDirection::forward;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const double e = chain == LevelChain::lower ? cuts[kept[k]] : cuts[kept[k] + 1];
    spec.block_exponents.emplace_back(e);
    const bool joins = chain == LevelChain::lower ? k + 1 < kept.size() : k > 0;
    if (joins) spec.fold_exponents.push_back(e);
  }
  return LevelPartition{Partition(inst, std::move(blocks)), std::move(spec), std::move(kept)};
}

std::vector<double> block_norms(const Instance& inst, const Partition& partition, const ChainSpec& spec,
                                BlockNorm norm) {
  if (partition.grid_size() != inst.size()) throw Error(ErrorKind::SpecMismatch, "partition built on another grid");
  spec.check(partition.size());
  std::vector<double> out;
  out.reserve(partition.size());
  for (std::size_t k = 0; k < partition.size(); ++k) {
    Instance block = restrict(inst, partition.blocks()[k]);
    if (const auto& e = spec.block_exponents[k]) {
      block = block.with_exponents(std::vector<double>(block.size(), *e));
    }
    out.push_back(norm == BlockNorm::nakano ? norm_nakano(block).value : norm_ode(block).value);
  }
  return out;
}

double fold_chain(std::span<const double> norms, const ChainSpec& spec) {
  spec.check(norms.size());
  const std::size_t n = norms.size();
  if (spec.direction == FoldDirection::forward) {
    double acc = norms[0];
    for (std::size_t k = 1; k < n; ++k) acc = boxplus(acc, norms[k], spec.fold_exponents[k - 1]);
    return acc;
  }
  double acc = norms[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) acc = boxplus(acc, norms[k], spec.fold_exponents[k]);
  return acc;
}

double chain_value(const Instance& inst, const Partition& partition, const ChainSpec& spec, BlockNorm norm) {
  return fold_chain(block_norms(inst, partition, spec, norm), spec);
}

ChainSpec constant_chain(std::span<const double> block_exponents) {
  ChainSpec spec;
  for (double e : block_exponents) spec.block_exponents.emplace_back(e);
  if (!block_exponents.empty()) spec.fold_exponents.assign(block_exponents.begin() + 1, block_exponents.end());
  return spec;
}

ChainSpec native_chain(std::span<const double> join_exponents) {
  ChainSpec spec;
  spec.block_exponents.assign(join_exponents.size(), std::nullopt);
  if (!join_exponents.empty()) spec.fold_exponents.assign(join_exponents.begin() + 1, join_exponents.end());
  return spec;
}

void DecompositionReport::add(ChainCheck c) {
  if (!c.informational) {
    const bool first = std::none_of(chains.begin(), chains.end(), [](const ChainCheck& x) { return !x.informational; });
    worst_margin = first ? c.outcome.margin : std::min(worst_margin, c.outcome.margin);
    pass = pass && c.outcome.pass;
  }
  chains.push_back(std::move(c));
}

const ChainCheck* DecompositionReport::find(std::string_view name) const {
  for (const auto& c : chains) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

double ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

/// chain / constant <= norm
ChainCheck lower_only(std::string name, double chain, double norm, double constant, double slack) {
  ChainCheck c;
  c.name = std::move(name);
  c.norm = norm;
  c.lower = chain / constant;
  c.upper = std::numeric_limits<double>::infinity();
  c.constant = constant;
  c.observed = ratio(chain, norm);
  c.outcome = leq(c.lower, norm, slack, c.name + ": lower bound <= norm");
  return c;
}

/// norm <= constant * chain
ChainCheck upper_only(std::string name, double chain, double norm, double constant, double slack) {
  ChainCheck c;
  c.name = std::move(name);
  c.norm = norm;
  c.lower = 0.0;
  c.upper = constant * chain;
  c.constant = constant;
  c.observed = ratio(norm, chain);
  c.outcome = leq(norm, c.upper, slack, c.name + ": norm <= upper bound");
  return c;
}

ChainCheck two_sided(std::string name, double low_chain, double norm, double high_chain, double constant,
                     double slack) {
  ChainCheck c;
  c.name = std::move(name);
  c.norm = norm;
  c.lower = low_chain / constant;
  c.upper = constant * high_chain;
  c.constant = constant;
  c.observed = std::max(ratio(low_chain, norm), ratio(norm, high_chain));
  c.outcome = worse(leq(c.lower, norm, slack, c.name + ": lower bound <= norm"),
                    leq(norm, c.upper, slack, c.name + ": norm <= upper bound"));
  return c;
}

Instance with_constant_exponent(const Instance& inst, double e) {
  return inst.with_exponents(std::vector<double>(inst.size(), e));
}

}  // namespace

DecompositionReport certify_decomposition(const Instance& inst, const Partition& partition, double slack) {
  if (partition.grid_size() != inst.size()) throw Error(ErrorKind::SpecMismatch, "partition built on another grid");
  const double c1 = decomposition_constant();
  const double c2 = constant_bp(inst.max_exponent());

  std::vector<double> r, s;
  for (const auto& b : partition.bounds()) {
    r.push_back(b.inf);
    s.push_back(b.sup);
  }
  const double nakano = norm_nakano(inst).value;
  const double ode = norm_ode(inst).value;

  DecompositionReport rep;
  rep.add(lower_only("chain1", chain_value(inst, partition, constant_chain(r), BlockNorm::nakano), nakano, c1,
                     slack));
  rep.add(upper_only("chain2", chain_value(inst, partition, constant_chain(s), BlockNorm::nakano), nakano, c1,
                     slack));

  const auto native_ode = block_norms(inst, partition, native_chain(r), BlockNorm::ode);
  rep.add(two_sided("chain3", fold_chain(native_ode, native_chain(s)), ode, fold_chain(native_ode, native_chain(r)),
                    c2, slack));
  const auto native_nak = block_norms(inst, partition, native_chain(r), BlockNorm::nakano);
  rep.add(two_sided("chain4", fold_chain(native_nak, native_chain(s)), nakano,
                    fold_chain(native_nak, native_chain(r)), c2, slack));
  return rep;
}

DecompositionReport certify_levels(const Instance& inst, std::span<const double> cuts, double slack) {
  const double c1 = decomposition_constant();
  const double nakano = norm_nakano(inst).value;
  const auto low = partition_by_levels(inst, cuts, LevelChain::lower);
  const auto high = partition_by_levels(inst, cuts, LevelChain::upper);

  DecompositionReport rep;
  rep.add(lower_only("levels-lower", chain_value(inst, low.partition, low.spec, BlockNorm::nakano), nakano, c1,
                     slack));
  rep.add(upper_only("levels-upper", chain_value(inst, high.partition, high.spec, BlockNorm::nakano), nakano, c1,
                     slack));

  ChainSpec variant = low.spec;
  const std::size_t top = cuts.size() - 2;
  if (low.brackets.back() == top) variant.block_exponents.back() = cuts.back();
  ChainCheck v = lower_only("levels-lower-top-rn", chain_value(inst, low.partition, variant, BlockNorm::nakano),
                            nakano, c1, slack);
  v.informational = true;
  rep.add(std::move(v));
  return rep;
}

DecompositionReport twelve_constant_check(const Instance& inst, double r, double slack) {
  std::vector<std::size_t> at_least, below;
  for (std::size_t i = 0; i < inst.size(); ++i) (inst[i].p >= r ? at_least : below).push_back(i);
  const Instance high = restrict(inst, PieceSet(std::move(at_least)));
  const Instance low = restrict(inst, PieceSet(std::move(below)));
  const double pbar = inst.max_exponent();
  const double nakano = norm_nakano(inst).value;

  const double lower_sum =
      norm_nakano(with_constant_exponent(high, r)).value + norm_nakano(with_constant_exponent(low, 1.0)).value;
  const double upper_fold = boxplus(norm_nakano(with_constant_exponent(low, r)).value,
                                    norm_nakano(with_constant_exponent(high, pbar)).value, pbar);

  DecompositionReport rep;
  rep.add(lower_only("twelve-lower", lower_sum, nakano, 12.0, slack));
  rep.add(upper_only("twelve-upper", upper_fold, nakano, 12.0, slack));
  return rep;
}

}  // namespace varlp
