#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "varlp/harness.hpp"
#include "varlp/io.hpp"
#include "varlp/scalars.hpp"

using namespace varlp;
using support::error_kind;

TEST_CASE("generation is deterministic") {
  GenConfig cfg;
  cfg.seed = 1234;
  for (std::size_t t = 0; t < 50; ++t) CHECK(generate_instance(cfg, t) == generate_instance(cfg, t));
  CHECK(!(generate_instance(cfg, 0) == generate_instance(cfg, 1)));
}

TEST_CASE("generation respects the configuration") {
  GenConfig cfg;
  cfg.seed = 5;
  cfg.zero_piece_prob = 1.0;
  for (std::size_t t = 0; t < 50; ++t) CHECK(generate_instance(cfg, t).is_zero());

  GenConfig flat;
  flat.p_lo = flat.p_hi = 2.0;
  for (std::size_t t = 0; t < 50; ++t) {
    const auto inst = generate_instance(flat, t);
    CHECK(inst.min_exponent() == 2.0);
    CHECK(inst.max_exponent() == 2.0);
  }

  GenConfig small;
  small.max_pieces = 3;
  for (std::size_t t = 0; t < 200; ++t) {
    const auto inst = generate_instance(small, t);
    CHECK(inst.size() >= 1);
    CHECK(inst.size() <= 3);
    CHECK(inst.normalized() == inst);
    for (const auto& pc : inst.pieces()) {
      CHECK(pc.f >= 0.0);
      CHECK(pc.f <= 10.0);
      CHECK(pc.p >= 1.0);
      CHECK(pc.p <= 64.0);
    }
  }
}

TEST_CASE("configuration validation") {
  GenConfig bad;
  bad.zero_piece_prob = 1.5;
  CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::InvalidConfig);
  bad = GenConfig{};
  bad.p_lo = 0.5;
  CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::InvalidConfig);
  bad = GenConfig{};
  bad.max_pieces = 0;
  CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::InvalidConfig);
  const std::vector<std::string> names{"P22"};
  CHECK(error_kind([&] { run_suite(GenConfig{}, 0, names); }) == ErrorKind::InvalidConfig);
  CHECK(error_kind([] { find_check("no-such-check"); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("registry covers the advertised checks") {
  const auto names = all_check_names();
  for (const char* n : {"P21a", "P21b", "P21c", "P22", "P23", "P25", "P32", "T31-sandwich", "T31-factor",
                        "T41-chain1", "T41-chain2", "T41-chain3", "T41-chain4", "LIMIT-2", "DERIV-1",
                        "COINCIDE-5.3", "AXIOM-homogeneity", "AXIOM-triangle", "CONST-P"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
}

TEST_CASE("sup bound check passes with the worst ratio below e") {
  GenConfig cfg;
  cfg.seed = 99;
  const std::vector<std::string> names{"P21c"};
  const auto res = run_suite(cfg, 10000, names);
  REQUIRE(res.reports.size() == 1);
  CHECK(res.pass());
  CHECK(res.reports[0].worst_ratio < 1.0);
  CHECK(res.reports[0].worst_ratio * std::numbers::e < std::numbers::e);
}

TEST_CASE("Nakano/MO sandwich on an injected instance") {
  const Instance inst({{1.0, 1.0, 2.0}});
  GenConfig cfg;
  const auto& check = find_check("P22");
  const auto o = check.run(TrialInput{cfg, 0, inst, 0});
  CHECK(o.pass);
  const double nak = std::sqrt(0.5);
  CHECK(o.rhs == doctest::Approx(nak).epsilon(1e-10));
  CHECK(o.lhs == doctest::Approx(1.0 / constant_a()).epsilon(1e-10));
  CHECK(constant_a() * nak == doctest::Approx(1.2468).epsilon(1e-4));
}

TEST_CASE("full suite passes and is independent of the thread count") {
  GenConfig cfg;
  cfg.seed = 2024;
  const auto names = all_check_names();
  const auto serial = run_suite(cfg, 60, names, 1);
  const auto parallel = run_suite(cfg, 60, names, 4);
  CHECK(serial.pass());
  CHECK(dump_json(suite_to_json(serial)) == dump_json(suite_to_json(parallel)));
  for (const auto& rep : serial.reports) {
    INFO(rep.name);
    CHECK(rep.pass);
    CHECK(rep.trials == (find_check(rep.name).once ? 1u : 60u));
  }
}

TEST_CASE("report JSON round trip and replay") {
  GenConfig cfg;
  cfg.seed = 77;
  cfg.max_pieces = 5;
  const auto names = all_check_names();
  const Json report = Json::parse(dump_json(suite_to_json(run_suite(cfg, 20, names, 2))));
  CHECK(report.at("schema") == std::string(kReportSchema));
  const auto back = config_from_json(report.at("config"));
  CHECK(back.seed == 77);
  CHECK(back.max_pieces == 5);
  CHECK(config_to_json(back) == report.at("config"));

  const auto witnesses = report_witnesses(report);
  REQUIRE(witnesses.size() >= names.size());
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const auto res = replay(report, i);
    INFO(res.witness.check);
    CHECK(res.reproduced);
    CHECK(res.outcome.pass);
  }
  CHECK(error_kind([&] { replay(report, witnesses.size()); }) == ErrorKind::IndexOutOfRange);

  Json tampered = report;
  for (auto& c : tampered.at("checks")) {
    if (c.at("name") == "P23") c.at("worst").at("margin") = 0.123;
  }
  bool seen = false;
  const auto tw = report_witnesses(tampered);
  for (std::size_t i = 0; i < tw.size(); ++i) {
    if (tw[i].check != "P23") continue;
    seen = true;
    CHECK(!replay(tampered, i).reproduced);
  }
  CHECK(seen);
}

TEST_CASE("instance JSON round trip") {
  const auto inst = generate_instance(GenConfig{}, 3);
  CHECK(instance_from_json(Json::parse(dump_json(instance_to_json(inst)))) == inst);
  CHECK(error_kind([] { instance_from_json(Json::parse(R"({"pieces":[{"len":1}]})")); }) == ErrorKind::ParseError);
  const auto defaulted = instance_from_json(Json::parse(R"({"pieces":[{"len":1,"f":2}]})"));
  CHECK(defaulted[0].p == 1.0);
  const HalfLineInstance hl({{2.0, 1.0, 3.0, 0.5}});
  CHECK(halfline_from_json(halfline_to_json(hl)).pieces()[0] == hl.pieces()[0]);
}
