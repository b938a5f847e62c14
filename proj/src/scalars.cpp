#include "varlp/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "varlp/error.hpp"

namespace varlp {

namespace {

void check_exponent(double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::ExponentBelowOne, "fold exponent below 1");
}

// Bisection on a sign change of g over [lo, hi] (g(lo) < 0 < g(hi)) to the
// given width, then Newton steps accepted only when they reduce |g|.
double bracketed_root(const std::function<double(double)>& g, const std::function<double(double)>& dg,
                      double lo, double hi, double width) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 2; ++i) {
    const double d = dg(x);
    if (d == 0.0) break;
    const double next = x - g(x) / d;
    if (std::abs(g(next)) < std::abs(g(x))) x = next;
  }
  return x;
}

}  // namespace

double boxplus(double x, double y, double p) {
  if (x < 0.0 || y < 0.0) throw Error(ErrorKind::NegativeInput, "boxplus of a negative number");
  check_exponent(p);
  if (std::isinf(p)) return std::max(x, y);
  if (p == 1.0) return x + y;
  const double m = std::max(x, y);
  if (m == 0.0) return 0.0;
  const double ratio = std::min(x, y) / m;
  if (p >= 50.0) {
    // log1p(ratio^p)/p; ratio^p underflows harmlessly to 0.
    return m * std::exp(std::log1p(std::exp(p * std::log(ratio))) / p);
  }
  return m * std::pow(1.0 + std::pow(ratio, p), 1.0 / p);
}

FoldOrder FoldOrder::identity(std::span<const double> exponents) {
  FoldOrder fo;
  fo.order.resize(exponents.size() + 1);
  std::iota(fo.order.begin(), fo.order.end(), std::size_t{0});
  fo.exponents.assign(exponents.begin(), exponents.end());
  return fo;
}

double fold(std::span<const double> values, std::span<const double> exponents) {
  if (values.empty()) {
    if (!exponents.empty()) throw Error(ErrorKind::LengthMismatch, "exponents given for an empty fold");
    return 0.0;
  }
  if (exponents.size() + 1 != values.size()) {
    throw Error(ErrorKind::LengthMismatch, "fold needs one exponent fewer than values");
  }
  double acc = values[0];
  if (acc < 0.0) throw Error(ErrorKind::NegativeInput, "negative fold summand");
  for (std::size_t i = 1; i < values.size(); ++i) acc = boxplus(acc, values[i], exponents[i - 1]);
  return acc;
}

double fold(std::span<const double> values, const FoldOrder& order) {
  if (order.order.size() != values.size()) {
    throw Error(ErrorKind::LengthMismatch, "fold order does not cover the values");
  }
  std::vector<bool> seen(values.size(), false);
  std::vector<double> ordered(values.size());
  for (std::size_t k = 0; k < order.order.size(); ++k) {
    const std::size_t idx = order.order[k];
    if (idx >= values.size() || seen[idx]) {
      throw Error(ErrorKind::InvalidPermutation, "fold order is not a permutation");
    }
    seen[idx] = true;
    ordered[k] = values[idx];
  }
  return fold(ordered, order.exponents);
}

// -- Tensors -----------------------------------------------------------------

Tensor::Tensor(std::vector<std::size_t> shp, std::vector<double> d) : shape(std::move(shp)), data(std::move(d)) {
  const std::size_t n =
      std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
  if (n != data.size()) throw Error(ErrorKind::LengthMismatch, "tensor data does not match shape");
  for (double v : data) {
    if (v < 0.0) throw Error(ErrorKind::NegativeInput, "tensor entries must be non-negative");
  }
}

Tensor reduce_axis(const Tensor& t, std::size_t axis, double p) {
  if (axis >= t.rank()) throw Error(ErrorKind::IndexOutOfRange, "axis out of range");
  check_exponent(p);
  std::size_t outer = 1;
  std::size_t inner = 1;
  for (std::size_t j = 0; j < axis; ++j) outer *= t.shape[j];
  for (std::size_t j = axis + 1; j < t.rank(); ++j) inner *= t.shape[j];
  const std::size_t len = t.shape[axis];

  Tensor out;
  out.shape = t.shape;
  out.shape.erase(out.shape.begin() + static_cast<std::ptrdiff_t>(axis));
  out.data.assign(outer * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < inner; ++i) {
      double acc = 0.0;
      for (std::size_t a = 0; a < len; ++a) acc = boxplus(acc, t.data[(o * len + a) * inner + i], p);
      out.data[o * inner + i] = acc;
    }
  }
  return out;
}

namespace {

// Folds axes in the given order of original axis ids.
double fold_axes(Tensor t, std::span<const std::size_t> axis_order, std::span<const double> exps) {
  std::vector<std::size_t> remaining(t.rank());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  for (std::size_t ax : axis_order) {
    auto pos = static_cast<std::size_t>(std::find(remaining.begin(), remaining.end(), ax) - remaining.begin());
    t = reduce_axis(t, pos, exps[ax]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return t.data.at(0);
}

}  // namespace

FoldComparison nested_fold_compare(const Tensor& tensor, std::span<const double> axis_exponents,
                                   std::size_t k) {
  if (axis_exponents.size() != tensor.rank()) {
    throw Error(ErrorKind::LengthMismatch, "one exponent per tensor axis required");
  }
  if (k + 1 >= tensor.rank()) throw Error(ErrorKind::IndexOutOfRange, "axis k+1 does not exist");
  for (double e : axis_exponents) check_exponent(e);
  if (axis_exponents[k] > axis_exponents[k + 1]) {
    throw Error(ErrorKind::ExponentOrderViolation, "need r <= s on the swapped axes");
  }
  std::vector<std::size_t> natural(tensor.rank());
  std::iota(natural.begin(), natural.end(), std::size_t{0});
  std::vector<std::size_t> swapped = natural;
  std::swap(swapped[k], swapped[k + 1]);
  return {fold_axes(tensor, natural, axis_exponents), fold_axes(tensor, swapped, axis_exponents)};
}

// -- Constants ---------------------------------------------------------------

double constant_a() {
  static const double a = bracketed_root([](double x) { return x * std::log(x) - 1.0; },
                                         [](double x) { return std::log(x) + 1.0; }, 1.0, 2.0, 1e-15);
  return a;
}

double constant_bp(double p) {
  check_exponent(p);
  if (p == 1.0) return 1.0;
  if (std::isinf(p)) return 2.0;
  // b + b^-p - 2 vanishes at b = 1 too; its minimum sits at p^(1/(p+1)), which
  // gives a left end with negative residual.
  const auto g = [p](double b) { return b + std::pow(b, -p) - 2.0; };
  const auto dg = [p](double b) { return 1.0 - p * std::pow(b, -p - 1.0); };
  const double lo = std::pow(p, 1.0 / (p + 1.0));
  if (!(g(lo) < 0.0)) return lo;
  return bracketed_root(g, dg, lo, 2.0, 1e-15);
}

}  // namespace varlp
