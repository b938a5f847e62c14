#include "varlp/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "varlp/error.hpp"

namespace varlp {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, std::string(what) + " is not finite");
}

void check_unit_sum(double total) {
  if (!(std::abs(total - 1.0) <= 1e-9)) {
    throw Error(ErrorKind::NonUnitDomain,
                "piece lengths sum to " + std::to_string(total) + ", expected 1");
  }
}

}  // namespace

// -- StepFunction ------------------------------------------------------------

StepFunction::StepFunction() : breakpoints_{0.0, 1.0}, values_{0.0} {}

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty() || breakpoints_.size() != values_.size() + 1) {
    throw Error(ErrorKind::LengthMismatch, "need n+1 breakpoints for n values");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw Error(ErrorKind::NonUnitDomain, "breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    require_finite(breakpoints_[i + 1], "breakpoint");
    if (!(breakpoints_[i + 1] - breakpoints_[i] >= kMinPiece)) {
      throw Error(ErrorKind::NonUnitDomain, "piece " + std::to_string(i) + " shorter than MIN_PIECE");
    }
    require_finite(values_[i], "value");
  }
}

StepFunction StepFunction::from_pieces(std::span<const double> lengths, std::span<const double> values) {
  if (lengths.size() != values.size() || lengths.empty()) {
    throw Error(ErrorKind::LengthMismatch, "lengths and values differ in size");
  }
  double total = 0.0;
  for (double len : lengths) {
    require_finite(len, "length");
    if (len < 0.0) throw Error(ErrorKind::NonUnitDomain, "negative piece length");
    total += len;
  }
  check_unit_sum(total);
  std::vector<double> bps(lengths.size() + 1, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    acc += lengths[i] / total;
    bps[i + 1] = acc;
  }
  bps.back() = 1.0;
  return normalize(bps, values);
}

StepFunction StepFunction::constant(double c) { return StepFunction({0.0, 1.0}, {c}); }

double StepFunction::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::OutOfDomain, "t outside [0,1]");
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
  idx = idx == 0 ? 0 : idx - 1;
  return values_[std::min(idx, values_.size() - 1)];
}

double StepFunction::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += length(i) * values_[i];
  return s;
}

// -- Profiles ----------------------------------------------------------------

ExponentProfile::ExponentProfile(StepFunction p) : p_(std::move(p)) {
  for (double v : p_.values()) {
    if (v < 1.0) throw Error(ErrorKind::ExponentBelowOne, "exponent " + std::to_string(v) + " < 1");
    if (v > kMaxExponent) throw Error(ErrorKind::ExponentAboveCap, "exponent above P_MAX");
  }
}

ExponentProfile ExponentProfile::constant(double p) { return ExponentProfile(StepFunction::constant(p)); }

double ExponentProfile::sup() const {
  return *std::max_element(p_.values().begin(), p_.values().end());
}

WeightProfile::WeightProfile(StepFunction w) : w_(std::move(w)) {
  for (double v : w_.values()) {
    if (!(v > 0.0)) throw Error(ErrorKind::NonPositiveWeight, "weights must be positive");
  }
}

WeightProfile WeightProfile::constant(double w) { return WeightProfile(StepFunction::constant(w)); }

// -- PieceSet ----------------------------------------------------------------

PieceSet::PieceSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw Error(ErrorKind::IndexOutOfRange, "duplicate piece index");
  }
}

PieceSet PieceSet::all(std::size_t n) { return range(0, n); }

PieceSet PieceSet::range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> idx(last > first ? last - first : 0);
  std::iota(idx.begin(), idx.end(), first);
  return PieceSet(std::move(idx));
}

bool PieceSet::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

PieceSet PieceSet::complement(std::size_t n) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return PieceSet(std::move(out));
}

void PieceSet::check_grid(std::size_t n) const {
  if (!indices_.empty() && indices_.back() >= n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "piece index " + std::to_string(indices_.back()) + " on a grid of " + std::to_string(n));
  }
}

// -- Operations --------------------------------------------------------------

StepFunction normalize(std::span<const double> breakpoints, std::span<const double> values) {
  if (values.empty() || breakpoints.size() != values.size() + 1) {
    throw Error(ErrorKind::LengthMismatch, "need n+1 breakpoints for n values");
  }
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    throw Error(ErrorKind::NonUnitDomain, "breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    require_finite(values[i], "value");
    require_finite(breakpoints[i + 1], "breakpoint");
    if (breakpoints[i + 1] < breakpoints[i]) {
      throw Error(ErrorKind::NonUnitDomain, "breakpoints must be non-decreasing");
    }
  }

  // Keep the start of every piece of admissible length; a dropped piece is
  // absorbed by its kept predecessor (or successor, at the left end).
  std::vector<double> starts;
  std::vector<double> vals;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (breakpoints[i + 1] - breakpoints[i] < kMinPiece) continue;
    starts.push_back(breakpoints[i]);
    vals.push_back(values[i]);
  }
  if (vals.empty()) throw Error(ErrorKind::NonUnitDomain, "no piece of positive length");
  starts.front() = 0.0;

  std::vector<double> out_bps{0.0};
  std::vector<double> out_vals{vals.front()};
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] == out_vals.back()) continue;
    out_bps.push_back(starts[i]);
    out_vals.push_back(vals[i]);
  }
  out_bps.push_back(1.0);
  return StepFunction(std::move(out_bps), std::move(out_vals));
}

StepFunction normalize(const StepFunction& sf) { return normalize(sf.breakpoints(), sf.values()); }

std::vector<StepFunction> common_refinement(std::span<const StepFunction> fs) {
  std::vector<double> merged;
  for (const auto& f : fs) merged.insert(merged.end(), f.breakpoints().begin(), f.breakpoints().end());
  std::sort(merged.begin(), merged.end());

  // Union, collapsing breakpoints closer than kMinPiece; 1 is kept exactly.
  std::vector<double> grid{0.0};
  for (double t : merged) {
    if (t - grid.back() >= kMinPiece) grid.push_back(t);
  }
  if (grid.back() != 1.0) grid.back() = 1.0;

  std::vector<StepFunction> out;
  out.reserve(fs.size());
  for (const auto& f : fs) {
    std::vector<double> vals(grid.size() - 1);
    std::size_t j = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double mid = 0.5 * (grid[i] + grid[i + 1]);
      while (j + 1 < f.size() && f.breakpoints()[j + 1] <= mid) ++j;
      vals[i] = f.values()[j];
    }
    out.emplace_back(grid, std::move(vals));
  }
  return out;
}

std::pair<StepFunction, StepFunction> common_refinement(const StepFunction& a, const StepFunction& b) {
  const StepFunction both[] = {a, b};
  auto r = common_refinement(both);
  return {std::move(r[0]), std::move(r[1])};
}

StepFunction restrict(const StepFunction& f, const PieceSet& delta) {
  delta.check_grid(f.size());
  std::vector<double> vals(f.size(), 0.0);
  for (std::size_t i : delta.indices()) vals[i] = f.values()[i];
  return StepFunction(std::vector<double>(f.breakpoints().begin(), f.breakpoints().end()), std::move(vals));
}

EssBounds ess_bounds(const ExponentProfile& p, const PieceSet& delta) {
  if (delta.empty()) throw Error(ErrorKind::EmptySet, "ess_bounds over an empty piece set");
  delta.check_grid(p.size());
  EssBounds b{p.values()[delta.indices().front()], p.values()[delta.indices().front()]};
  for (std::size_t i : delta.indices()) {
    b.inf = std::min(b.inf, p.values()[i]);
    b.sup = std::max(b.sup, p.values()[i]);
  }
  return b;
}

StepFunction from_samples(const std::function<double(double)>& sampler, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::EmptySet, "from_samples needs n >= 1");
  std::vector<double> bps(n + 1);
  std::vector<double> vals(n);
  for (std::size_t i = 0; i <= n; ++i) bps[i] = static_cast<double>(i) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = sampler((static_cast<double>(i) + 0.5) / static_cast<double>(n));
    require_finite(vals[i], "sample");
  }
  return normalize(bps, vals);
}

// -- Instance ----------------------------------------------------------------

Instance::Instance() : pieces_{Piece{1.0, 0.0, 1.0}} {}

Instance::Instance(std::vector<Piece> pieces) {
  double total = 0.0;
  for (const auto& pc : pieces) {
    require_finite(pc.len, "length");
    require_finite(pc.f, "value");
    require_finite(pc.p, "exponent");
    if (pc.len < 0.0) throw Error(ErrorKind::NonUnitDomain, "negative piece length");
    if (pc.p < 1.0) throw Error(ErrorKind::ExponentBelowOne, "exponent below 1");
    if (pc.p > kMaxExponent) throw Error(ErrorKind::ExponentAboveCap, "exponent above P_MAX");
    total += pc.len;
  }
  check_unit_sum(total);
  std::erase_if(pieces, [](const Piece& pc) { return pc.len < kMinPiece; });
  if (pieces.empty()) throw Error(ErrorKind::NonUnitDomain, "no piece of positive length");
  total = 0.0;
  for (const auto& pc : pieces) total += pc.len;
  if (std::abs(total - 1.0) > 1e-15) {
    for (auto& pc : pieces) pc.len /= total;
  }
  pieces_ = std::move(pieces);
}

Instance Instance::from_functions(const StepFunction& f, const ExponentProfile& p) {
  auto [rf, rp] = common_refinement(f, p.function());
  std::vector<Piece> pieces(rf.size());
  for (std::size_t i = 0; i < rf.size(); ++i) {
    pieces[i] = Piece{rf.length(i), rf.values()[i], rp.values()[i]};
  }
  return Instance(Trusted{}, std::move(pieces));
}

namespace {

std::vector<double> cumulative(std::span<const Piece> pieces) {
  std::vector<double> bps(pieces.size() + 1, 0.0);
  for (std::size_t i = 0; i < pieces.size(); ++i) bps[i + 1] = bps[i] + pieces[i].len;
  bps.back() = 1.0;
  return bps;
}

}  // namespace

StepFunction Instance::f() const {
  std::vector<double> vals(size());
  for (std::size_t i = 0; i < size(); ++i) vals[i] = pieces_[i].f;
  return StepFunction(cumulative(pieces_), std::move(vals));
}

ExponentProfile Instance::p() const {
  std::vector<double> vals(size());
  for (std::size_t i = 0; i < size(); ++i) vals[i] = pieces_[i].p;
  return ExponentProfile(StepFunction(cumulative(pieces_), std::move(vals)));
}

Instance Instance::normalized() const {
  std::vector<Piece> out;
  for (const auto& pc : pieces_) {
    if (!out.empty() && out.back().f == pc.f && out.back().p == pc.p) {
      out.back().len += pc.len;
    } else {
      out.push_back(pc);
    }
  }
  return Instance(Trusted{}, std::move(out));
}

Instance Instance::scaled(double c) const {
  require_finite(c, "scale");
  auto out = pieces_;
  for (auto& pc : out) {
    pc.f *= c;
    require_finite(pc.f, "scaled value");
  }
  return Instance(Trusted{}, std::move(out));
}

Instance Instance::with_values(std::span<const double> values) const {
  if (values.size() != size()) throw Error(ErrorKind::LengthMismatch, "value count differs from grid");
  auto out = pieces_;
  for (std::size_t i = 0; i < size(); ++i) {
    require_finite(values[i], "value");
    out[i].f = values[i];
  }
  return Instance(Trusted{}, std::move(out));
}

Instance Instance::with_exponents(std::span<const double> exponents) const {
  if (exponents.size() != size()) throw Error(ErrorKind::LengthMismatch, "exponent count differs from grid");
  auto out = pieces_;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!(exponents[i] >= 1.0)) throw Error(ErrorKind::ExponentBelowOne, "exponent below 1");
    if (exponents[i] > kMaxExponent) throw Error(ErrorKind::ExponentAboveCap, "exponent above P_MAX");
    out[i].p = exponents[i];
  }
  return Instance(Trusted{}, std::move(out));
}

double Instance::max_exponent() const {
  double m = 1.0;
  for (const auto& pc : pieces_) m = std::max(m, pc.p);
  return m;
}

double Instance::min_exponent() const {
  double m = pieces_.front().p;
  for (const auto& pc : pieces_) m = std::min(m, pc.p);
  return m;
}

double Instance::sup_abs() const {
  double m = 0.0;
  for (const auto& pc : pieces_) m = std::max(m, std::abs(pc.f));
  return m;
}

bool Instance::is_zero() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& pc) { return pc.f == 0.0; });
}

Instance restrict(const Instance& inst, const PieceSet& delta) {
  delta.check_grid(inst.size());
  std::vector<double> vals(inst.size(), 0.0);
  for (std::size_t i : delta.indices()) vals[i] = inst[i].f;
  return inst.with_values(vals);
}

EssBounds ess_bounds(const Instance& inst, const PieceSet& delta) {
  if (delta.empty()) throw Error(ErrorKind::EmptySet, "ess_bounds over an empty piece set");
  delta.check_grid(inst.size());
  EssBounds b{inst[delta.indices().front()].p, inst[delta.indices().front()].p};
  for (std::size_t i : delta.indices()) {
    b.inf = std::min(b.inf, inst[i].p);
    b.sup = std::max(b.sup, inst[i].p);
  }
  return b;
}

}  // namespace varlp
