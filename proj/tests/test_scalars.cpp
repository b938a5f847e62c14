#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "varlp/random.hpp"
#include "varlp/scalars.hpp"

using namespace varlp;
using support::error_kind;
using support::rel;

TEST_CASE("boxplus examples") {
  CHECK(boxplus(3, 4, 2) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(boxplus(0.3, 0.9, 1) == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(boxplus(2, 7, kInfExponent) == 7.0);
  CHECK(boxplus(0, 0, 3) == 0.0);
  CHECK(boxplus(0, 5, 1e6) == 5.0);
}

TEST_CASE("boxplus rejects bad input") {
  CHECK(error_kind([] { boxplus(-1, 1, 2); }) == ErrorKind::NegativeInput);
  CHECK(error_kind([] { boxplus(1, 1, 0.5); }) == ErrorKind::ExponentBelowOne);
}

TEST_CASE("boxplus stays finite at huge exponents") {
  const double v = boxplus(10.0, 10.0, 1e5);
  CHECK(std::isfinite(v));
  CHECK(rel(v, 10.0 * std::pow(2.0, 1e-5)) <= 1e-14);
  CHECK(boxplus(1e200, 1e200, 60) == doctest::Approx(1e200 * std::pow(2.0, 1.0 / 60)).epsilon(1e-14));
}

TEST_CASE("boxplus lies between max and sum, is symmetric and homogeneous") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.uniform(0, 10), y = rng.uniform(0, 10), p = rng.log_uniform(1, 200);
    const double v = boxplus(x, y, p);
    CHECK(v >= std::max(x, y) * (1 - 1e-15));
    CHECK(v <= (x + y) * (1 + 1e-15));
    CHECK(v == boxplus(y, x, p));
    const double c = rng.uniform(0, 5);
    CHECK(rel(boxplus(c * x, c * y, p), c * v) <= 1e-13);
  }
}

TEST_CASE("boxplus ordering across exponents") {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double a = rng.uniform(0, 3), b = rng.uniform(0, 3), c = rng.uniform(0, 3);
    double p = rng.log_uniform(1, 50), r = rng.log_uniform(1, 50);
    if (p > r) std::swap(p, r);
    CHECK(boxplus(boxplus(a, b, r), c, p) >= boxplus(a, boxplus(b, c, p), r) * (1 - 1e-13));
    CHECK(boxplus(a, b, r) <= boxplus(a, b, p) * (1 + 1e-13));
  }
}

TEST_CASE("fold examples") {
  CHECK(fold(std::vector<double>{1, 1}, std::vector<double>{2}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(fold(std::vector<double>{0.2, 1.3, 4.0}, std::vector<double>{1, 1}) == doctest::Approx(5.5).epsilon(1e-15));
  CHECK(fold(std::vector<double>{0.5, 0.5, 0.5}, std::vector<double>{2, 1}) ==
        doctest::Approx(std::sqrt(0.5) + 0.5).epsilon(1e-15));
  CHECK(fold(std::vector<double>{}, std::vector<double>{}) == 0.0);
  CHECK(error_kind([] { fold(std::vector<double>{1, 2}, std::vector<double>{1, 2}); }) ==
        ErrorKind::LengthMismatch);
}

TEST_CASE("fold with an explicit order") {
  FoldOrder ord{{2, 0, 1}, {2, 1}};
  const double v = fold(std::vector<double>{0.5, 0.5, 0.5}, ord);
  CHECK(v == doctest::Approx(std::sqrt(0.5) + 0.5).epsilon(1e-15));
}

TEST_CASE("nested fold example") {
  const Tensor t({2, 2}, {1, 0, 0, 1});
  const auto cmp = nested_fold_compare(t, std::vector<double>{1, 2}, 0);
  CHECK(cmp.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(cmp.rhs == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("nested fold with a single nonzero entry") {
  const Tensor t({2, 3}, {0, 0, 0, 0, 2.5, 0});
  const auto cmp = nested_fold_compare(t, std::vector<double>{1.5, 4}, 0);
  CHECK(cmp.lhs == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(cmp.rhs == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("nested fold: equal exponents commute, r > s is rejected") {
  Rng rng(9);
  const Tensor t({3, 3}, [&] {
    std::vector<double> d(9);
    for (auto& x : d) x = rng.uniform(0, 2);
    return d;
  }());
  const auto cmp = nested_fold_compare(t, std::vector<double>{2.5, 2.5}, 0);
  CHECK(rel(cmp.lhs, cmp.rhs) <= 1e-13);
  CHECK(error_kind([&] { nested_fold_compare(t, std::vector<double>{3, 2}, 0); }) ==
        ErrorKind::ExponentOrderViolation);
}

TEST_CASE("nested fold lhs never exceeds rhs on random tensors") {
  Rng rng(21);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t rank = 2 + rng.index(3);
    std::vector<std::size_t> shape;
    std::size_t n = 1;
    for (std::size_t k = 0; k < rank; ++k) {
      shape.push_back(1 + rng.index(3));
      n *= shape.back();
    }
    std::vector<double> data(n);
    for (auto& x : data) x = rng.bernoulli(0.2) ? 0.0 : rng.uniform(0, 3);
    std::vector<double> exps(rank);
    for (auto& e : exps) e = rng.log_uniform(1, 20);
    const std::size_t k = rng.index(rank - 1);
    if (exps[k] > exps[k + 1]) std::swap(exps[k], exps[k + 1]);
    const auto cmp = nested_fold_compare(Tensor(shape, data), exps, k);
    CHECK(cmp.lhs <= cmp.rhs * (1 + 1e-12));
  }
}

TEST_CASE("constant a") {
  const double a = constant_a();
  CHECK(a == doctest::Approx(1.76).epsilon(0.005));
  CHECK(std::abs(a * std::log(a) - 1.0) <= 1e-14);
  CHECK(std::abs(std::exp(a * std::log(a)) - std::numbers::e) <= 1e-13);
  CHECK(std::pow(1.7, 1.7) < std::numbers::e);
  CHECK(std::numbers::e < std::pow(1.8, 1.8));
  CHECK(rel(a, oracle::constant_a()) <= 1e-14);
}

TEST_CASE("constant b_p") {
  CHECK(constant_bp(1) == 1.0);
  CHECK(constant_bp(kInfExponent) == 2.0);
  CHECK(constant_bp(2) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-15));
  // The root lies within 2^-100 of 2, far inside half an ulp, so the
  // correctly rounded double is 2 itself.
  const double b100 = constant_bp(100);
  CHECK(b100 > 1.99);
  CHECK(b100 <= 2.0);
  CHECK(2.0 - oracle::constant_bp(100) < 0.5 * (2.0 - std::nextafter(2.0, 0.0)));
  CHECK(b100 == 2.0);
  CHECK(error_kind([] { constant_bp(0.9); }) == ErrorKind::ExponentBelowOne);
}

TEST_CASE("constant b_p residual, oracle agreement and monotonicity until it rounds to 2") {
  double prev = 1.0;
  for (double p = 1.01; p < 1e4; p *= 1.07) {
    const double b = constant_bp(p);
    CHECK(std::abs(b + std::pow(b, -p) - 2.0) <= 1e-14);
    CHECK(rel(b, oracle::constant_bp(p)) <= 1e-13);
    if (b < 2.0) {
      CHECK(b > prev);
    } else {
      CHECK(b >= prev);
    }
    prev = b;
  }
}

TEST_CASE("constant b_p is continuous") {
  for (double p : {1.5, 2.0, 10.0, 30.0}) {
    const double slope = (constant_bp(p + 1e-6) - constant_bp(p)) / 1e-6;
    CHECK(slope > 0.0);
    CHECK(slope < 10.0);
  }
}
