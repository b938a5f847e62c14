#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "varlp/halfline.hpp"
#include "varlp/modular.hpp"

using namespace varlp;
using support::error_kind;

namespace {

const HalfLineInstance kReference({{1.0, 1.0, 2.0, 1.0}});

double image_modular(const UnitImage& img) { return modular(img.pieces, 1.0); }

}  // namespace

TEST_CASE("half-line map") {
  CHECK(halfline_map(0.0) == 0.0);
  CHECK(halfline_map(1.0) == 0.5);
  CHECK(halfline_map(3.0) == 0.75);
}

TEST_CASE("validation") {
  CHECK(error_kind([] { HalfLineInstance({}); }) == ErrorKind::EmptySet);
  CHECK(error_kind([] { HalfLineInstance({{0.0, 1.0, 2.0, 1.0}}); }) == ErrorKind::OutOfDomain);
  CHECK(error_kind([] { HalfLineInstance({{1.0, 1.0, 0.5, 1.0}}); }) == ErrorKind::ExponentBelowOne);
  CHECK(error_kind([] { HalfLineInstance({{1.0, 1.0, 2e6, 1.0}}); }) == ErrorKind::ExponentAboveCap);
  CHECK(error_kind([] { HalfLineInstance({{1.0, 1.0, 2.0, 0.0}}); }) == ErrorKind::NonPositiveWeight);
  CHECK(error_kind([] { HalfLineInstance({{1.0, NAN, 2.0, 1.0}}); }) == ErrorKind::NonFinite);
  CHECK(error_kind([] { to_unit_interval(kReference, 0); }) == ErrorKind::EmptySet);
}

TEST_CASE("reference image: support, values and transported exponent") {
  const auto img = to_unit_interval(kReference, 8);
  CHECK(img.support_end == 0.5);
  REQUIRE(img.pieces.size() == 9);
  CHECK(img.pieces.back().f == 0.0);
  CHECK(img.breakpoints.back() == 1.0);
  CHECK(img.pieces[0].f == doctest::Approx(1.0625).epsilon(1e-15));
  for (std::size_t k = 0; k + 1 < 8; ++k) {
    CHECK(img.pieces[k + 1].f > img.pieces[k].f);
    CHECK(img.pieces[k].p == 2.0);
    CHECK(img.pieces[k].w == 1.0);
  }
  CHECK(to_unit_interval(kReference, 4096).pieces[0].f == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("reference image modular tends to the source modular") {
  const double continuum = oracle::simpson(
      [](double s) {
        const double t = s / (1 - s);
        return (1 + t) * (1 + t);
      },
      0.0, 0.5, 2000);
  CHECK(continuum == doctest::Approx(1.0).epsilon(1e-12));
  double prev = INFINITY;
  for (std::size_t n = 8; n <= 512; n *= 2) {
    const double err = std::abs(image_modular(to_unit_interval(kReference, n)) - 1.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("reference isometry") {
  const auto rep = verify_isometry(kReference, 512);
  CHECK(rep.source == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(rep.refines.front() == 8);
  CHECK(rep.refines.back() == 512);
  CHECK(rep.report.pass);
  for (std::size_t k = 1; k < rep.discrepancy.size(); ++k) {
    CHECK(rep.discrepancy[k] < rep.discrepancy[k - 1]);
    CHECK(rep.discrepancy[k] / rep.discrepancy[k - 1] <= 0.6);
  }
  CHECK(rep.discrepancy.back() < 1e-4);
}

TEST_CASE("tiny piece far from the origin") {
  const HalfLineInstance inst({{100.0, 0.0, 1.0, 1.0}, {0.001, 1.0, 2.0, 1.0}});
  const auto rep = verify_isometry(inst, 8);
  REQUIRE(rep.discrepancy.size() == 1);
  CHECK(rep.discrepancy[0] < 1e-8);
}

TEST_CASE("zero instance") {
  const HalfLineInstance zero({{2.0, 0.0, 3.0, 1.0}, {1.0, 0.0, 1.5, 2.0}});
  const auto img = to_unit_interval(zero, 16);
  for (const auto& pc : img.pieces) CHECK(pc.f == 0.0);
  const auto rep = verify_isometry(zero, 64);
  CHECK(rep.source == 0.0);
  for (double d : rep.discrepancy) CHECK(d == 0.0);
  CHECK(rep.report.pass);
}

TEST_CASE("measure correspondence and weight transport") {
  const HalfLineInstance inst({{0.5, 2.0, 1.5, 0.3}, {3.0, -1.0, 4.0, 2.0}, {10.0, 0.5, 1.0, 7.0}});
  for (std::size_t refine : {1u, 3u, 64u}) {
    const auto img = to_unit_interval(inst, refine);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < img.pieces.size(); ++k) total += img.pieces[k].len;
    CHECK(std::abs(total - halfline_map(inst.extent())) <= 1e-14);
    CHECK(img.support_end == halfline_map(13.5));
    for (std::size_t k = 0; k < refine; ++k) {
      CHECK(img.pieces[k].w == 0.3);
      CHECK(img.pieces[refine + k].p == 4.0);
      CHECK(img.pieces[2 * refine + k].w == 7.0);
    }
  }
}

TEST_CASE("weighted source norm uses true lengths") {
  const HalfLineInstance inst({{4.0, 1.0, 2.0, 1.0}});
  CHECK(source_norm(inst).value == doctest::Approx(2.0).epsilon(1e-11));
  const auto img = to_unit_interval(inst, 8);
  CHECK(img.f().size() == 9);
  CHECK(img.w().values()[8] == 1.0);
}
