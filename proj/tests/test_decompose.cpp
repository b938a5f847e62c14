#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "varlp/decompose.hpp"
#include "varlp/luxemburg.hpp"
#include "varlp/ode_norm.hpp"
#include "varlp/random.hpp"
#include "varlp/scalars.hpp"

using namespace varlp;
using support::error_kind;
using support::rel;

namespace {

Instance random_instance(Rng& rng, std::size_t n, double p_hi) {
  std::vector<double> lens(n);
  double total = 0.0;
  for (auto& l : lens) total += (l = 0.05 + rng.uniform01());
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < n; ++i) {
    pieces.push_back({lens[i] / total, rng.bernoulli(0.1) ? 0.0 : rng.uniform(0, 5), rng.log_uniform(1, p_hi)});
  }
  return Instance(std::move(pieces));
}

/// Random assignment of pieces to `k` non-empty blocks (requires n >= k).
Partition random_partition(const Instance& inst, std::size_t k, Rng& rng) {
  const auto perm = rng.permutation(inst.size());
  std::vector<std::vector<std::size_t>> blocks(k);
  for (std::size_t i = 0; i < perm.size(); ++i) blocks[i < k ? i : rng.index(k)].push_back(perm[i]);
  std::vector<PieceSet> sets;
  for (auto& b : blocks) sets.emplace_back(std::move(b));
  return Partition(inst, std::move(sets));
}

}  // namespace

TEST_CASE("decomposition constant") {
  const double c = decomposition_constant();
  CHECK(c == doctest::Approx(11.5859).epsilon(1e-5));
  CHECK(c <= 12.0);
  CHECK(rel(c, 2 * (1 + oracle::constant_a() * std::numbers::e)) <= 1e-14);
}

TEST_CASE("level partitions") {
  const Instance three({{0.3, 1.0, 1.2}, {0.3, 1.0, 3.7}, {0.4, 1.0, 2.5}});
  const std::vector<double> cuts{1, 2, 4};
  for (auto chain : {LevelChain::lower, LevelChain::upper}) {
    const auto lp = partition_by_levels(three, cuts, chain);
    REQUIRE(lp.partition.size() == 2);
    CHECK(lp.partition.blocks()[0] == PieceSet({0}));
    CHECK(lp.partition.blocks()[1] == PieceSet({1, 2}));
  }

  const auto flat = support::two_piece_increasing().with_exponents(std::vector<double>{3.0, 3.0});
  const auto one = partition_by_levels(flat, std::vector<double>{1, 2, 3}, LevelChain::lower);
  CHECK(one.partition.size() == 1);
  CHECK(one.brackets == std::vector<std::size_t>{1});
}

TEST_CASE("pieces on a cut follow the bracket convention") {
  const Instance inst({{0.25, 1.0, 1.0}, {0.25, 1.0, 2.0}, {0.25, 1.0, 3.0}, {0.25, 1.0, 4.0}});
  const std::vector<double> cuts{1, 2, 4};
  const auto low = partition_by_levels(inst, cuts, LevelChain::lower);
  CHECK(low.partition.blocks()[0] == PieceSet({0, 1}));
  CHECK(low.partition.blocks()[1] == PieceSet({2, 3}));
  CHECK(low.spec.direction == FoldDirection::backward);
  CHECK(*low.spec.block_exponents[0] == 1.0);
  CHECK(*low.spec.block_exponents[1] == 2.0);
  CHECK(low.spec.fold_exponents == std::vector<double>{1.0});

  const auto up = partition_by_levels(inst, cuts, LevelChain::upper);
  CHECK(up.partition.blocks()[0] == PieceSet({0}));
  CHECK(up.partition.blocks()[1] == PieceSet({1, 2, 3}));
  CHECK(up.spec.direction == FoldDirection::forward);
  CHECK(*up.spec.block_exponents[0] == 2.0);
  CHECK(*up.spec.block_exponents[1] == 4.0);
  CHECK(up.spec.fold_exponents == std::vector<double>{4.0});

  const auto two = partition_by_levels(support::two_piece_increasing(), std::vector<double>{1, 2}, LevelChain::lower);
  CHECK(two.partition.size() == 1);
}

TEST_CASE("bad cuts") {
  const auto inst = support::two_piece_increasing();
  for (const auto& cuts : std::vector<std::vector<double>>{{1}, {1.5, 2}, {1, 1, 2}, {1, 3, 2}, {1, 1.5}, {1, INFINITY}}) {
    CHECK(error_kind([&] { partition_by_levels(inst, cuts, LevelChain::lower); }) == ErrorKind::BadCuts);
  }
}

TEST_CASE("partition validation") {
  const auto inst = support::two_piece_increasing();
  CHECK(error_kind([&] { Partition(inst, {PieceSet({0})}); }) == ErrorKind::SpecMismatch);
  CHECK(error_kind([&] { Partition(inst, {PieceSet({0, 1}), PieceSet({1})}); }) == ErrorKind::SpecMismatch);
  CHECK(error_kind([&] { Partition(inst, {PieceSet({0, 1}), PieceSet{}}); }) == ErrorKind::SpecMismatch);
  CHECK(error_kind([&] { Partition(inst, {PieceSet({0, 1, 2})}); }) == ErrorKind::SpecMismatch);
  const Partition ok(inst, {PieceSet({1}), PieceSet({0})});
  CHECK(ok.bounds()[0].inf == 2.0);
  CHECK(ok.bounds()[1].sup == 1.0);
  CHECK(error_kind([&] { chain_value(inst, ok, constant_chain(std::vector<double>{1.0}), BlockNorm::ode); }) ==
        ErrorKind::SpecMismatch);
}

TEST_CASE("chain values") {
  const auto inst = Instance({{1.0, 1.7, 2.5}});
  const Partition single(inst, {PieceSet({0})});
  CHECK(chain_value(inst, single, constant_chain(std::vector<double>{2.5}), BlockNorm::nakano) ==
        norm_nakano(inst).value);

  const auto two = support::two_piece_increasing();
  const Partition halves(two, {PieceSet({0}), PieceSet({1})});
  const auto spec = constant_chain(std::vector<double>{2.0, 2.0});
  const auto norms = block_norms(two, halves, spec, BlockNorm::ode);
  CHECK(norms[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(chain_value(two, halves, spec, BlockNorm::ode) ==
        doctest::Approx(std::hypot(norms[0], norms[1])).epsilon(1e-15));
}

TEST_CASE("fold direction") {
  const std::vector<double> v{1.0, 2.0, 3.0};
  ChainSpec fwd{{std::nullopt, std::nullopt, std::nullopt}, {1.0, 2.0}, FoldDirection::forward};
  CHECK(fold_chain(v, fwd) == doctest::Approx(std::hypot(3.0, 3.0)).epsilon(1e-15));
  ChainSpec bwd{{std::nullopt, std::nullopt, std::nullopt}, {1.0, 2.0}, FoldDirection::backward};
  CHECK(fold_chain(v, bwd) == doctest::Approx(std::hypot(3.0, 2.0) + 1.0).epsilon(1e-15));
}

TEST_CASE("chains are monotone in the block norms") {
  Rng rng(51);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + rng.index(6);
    std::vector<double> v(n), e(n - 1);
    for (auto& x : v) x = rng.uniform(0, 3);
    for (auto& x : e) x = rng.log_uniform(1, 20);
    ChainSpec spec{std::vector<std::optional<double>>(n), e, i % 2 ? FoldDirection::forward : FoldDirection::backward};
    const double base = fold_chain(v, spec);
    v[rng.index(n)] += rng.uniform(0, 1);
    CHECK(fold_chain(v, spec) >= base);
  }
}

TEST_CASE("constant exponent: the block fold equals the total norm") {
  Rng rng(52);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 2 + rng.index(7);
    const double p0 = rng.log_uniform(1, 64);
    auto inst = random_instance(rng, n, 2);
    inst = inst.with_exponents(std::vector<double>(n, p0));
    const auto part = random_partition(inst, 2 + rng.index(n - 1), rng);
    const auto spec = constant_chain(std::vector<double>(part.size(), p0));
    CHECK(rel(chain_value(inst, part, spec, BlockNorm::ode), norm_ode(inst).value) <= 1e-12);
  }
}

TEST_CASE("certification on the zero function and the two-piece instance") {
  const Instance zero({{0.5, 0.0, 1.0}, {0.5, 0.0, 2.0}});
  const Partition halves(zero, {PieceSet({0}), PieceSet({1})});
  const auto z = certify_decomposition(zero, halves);
  CHECK(z.pass);
  for (const auto& c : z.chains) {
    CHECK(c.norm == 0.0);
    CHECK(c.outcome.pass);
  }

  const auto two = support::two_piece_increasing();
  const auto rep = certify_decomposition(two, Partition(two, {PieceSet({0}), PieceSet({1})}));
  CHECK(rep.pass);
  REQUIRE(rep.chains.size() == 4);
  CHECK(rep.find("chain1")->observed * 5 <= decomposition_constant());
  CHECK(rep.find("chain2")->observed * 5 <= decomposition_constant());
  CHECK(rep.find("chain3")->observed <= constant_bp(2));
  CHECK(rep.find("chain4")->observed <= constant_bp(2));
  const auto levels = certify_levels(two, std::vector<double>{1, 2});
  CHECK(levels.pass);
  CHECK(levels.find("levels-lower-top-rn")->informational);
}

TEST_CASE("all chains hold on random partitions, with no degradation in block count") {
  Rng rng(53);
  std::vector<double> worst(9, 0.0);
  for (int i = 0; i < 3000; ++i) {
    const std::size_t blocks = 2 + rng.index(7);
    const auto inst = random_instance(rng, blocks + rng.index(4), 64);
    const auto part = random_partition(inst, blocks, rng);
    const auto rep = certify_decomposition(inst, part);
    CHECK(rep.pass);
    for (const auto& c : rep.chains) worst[blocks] = std::max(worst[blocks], c.observed / c.constant);
    std::vector<double> cuts{1.0};
    const double top = inst.max_exponent();
    for (double next = 1.5 + rng.uniform01(); next < top; next *= 1.5 + rng.uniform01()) cuts.push_back(next);
    cuts.push_back(top > 1.0 ? top : 2.0);
    CHECK(certify_levels(inst, cuts).pass);
    CHECK(twelve_constant_check(inst, rng.uniform(1, 8)).pass);
  }
  for (std::size_t b = 2; b <= 8; ++b) CHECK(worst[b] <= 1.0);
}
