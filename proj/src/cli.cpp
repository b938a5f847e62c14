#include "varlp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "varlp/decompose.hpp"
#include "varlp/error.hpp"
#include "varlp/halfline.hpp"
#include "varlp/harness.hpp"
#include "varlp/io.hpp"
#include "varlp/luxemburg.hpp"
#include "varlp/modular.hpp"
#include "varlp/ode_norm.hpp"
#include "varlp/random.hpp"
#include "varlp/rearrange.hpp"
#include "varlp/scalars.hpp"

namespace varlp {

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(15);
  s << x;
  return s.str();
}

std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

std::vector<double> parse_csv_numbers(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad number \"" + item + "\" in list");
    }
  }
  return out;
}

std::vector<std::string> parse_csv_names(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfExponent;
  const auto v = parse_csv_numbers(s);
  if (v.size() != 1) throw Error(ErrorKind::ParseError, "expected one number");
  return v[0];
}

struct Options {
  std::string method = "nakano";
  std::string input;
  std::string curve;
  std::string out_file;
  std::string order = "inc";
  std::string cuts;
  std::string norm = "nakano";
  std::string kind = "aux";
  std::string checks;
  std::string report;
  std::string bp;
  double tol = kDefaultTol;
  double lambda = 1.0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t refine = 64;
  std::size_t index = 0;
  std::size_t max_pieces = 8;
  std::size_t permutations = 100;
  unsigned threads = 1;
  bool extreme = false;
};

int cmd_norm(const Options& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.input);
  if (o.method == "ode") {
    const auto res = norm_ode(inst);
    out << "value=" << fmt(res.value) << " iterations=" << res.iterations << "\n";
    if (!o.curve.empty()) {
      const auto curve = phi_exact_step(inst);
      std::ostringstream csv;
      csv.precision(15);
      csv << "t,phi\n";
      for (std::size_t i = 0; i < curve.phi.size(); ++i) csv << curve.breakpoints[i] << "," << curve.phi[i] << "\n";
      write_text_file(o.curve, csv.str());
    }
    return 0;
  }
  if (!o.curve.empty()) throw Error(ErrorKind::InvalidConfig, "--curve is only available for --method ode");
  const auto res = o.method == "nakano" ? norm_nakano(inst, o.tol) : norm_mo(inst, o.tol);
  out << "value=" << fmt(res.value) << " iterations=" << res.iterations << "\n";
  return 0;
}

int cmd_modular(const Options& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.input);
  const double v = o.method == "nakano" ? modular_nakano(inst, o.lambda) : modular_mo(inst, o.lambda);
  out << "value=" << fmt(v) << "\n";
  return 0;
}

int cmd_constants(const Options& o, std::ostream& out) {
  out << "a=" << fmt(constant_a()) << "\n";
  if (!o.bp.empty()) out << "b_p=" << fmt(constant_bp(parse_exponent(o.bp))) << "\n";
  return 0;
}

int cmd_rearrange(const Options& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.input);
  Instance result;
  if (o.order == "inc") {
    result = sort_by_exponent(inst, SortDirection::inc);
  } else if (o.order == "dec") {
    result = sort_by_exponent(inst, SortDirection::dec);
  } else {
    Rng rng(derive_seed(o.seed, 0));
    result = permute(inst, PiecePermutation(rng.permutation(inst.size())));
  }
  const std::string text = dump_json(instance_to_json(result));
  if (o.out_file.empty()) {
    out << text;
  } else {
    write_text_file(o.out_file, text);
  }
  return 0;
}

void print_check(const CheckReport& rep, std::ostream& out) {
  out << rep.name << " trials=" << rep.trials << " failures=" << rep.failures.size()
      << " worst_margin=" << fmt(rep.worst_margin) << " worst_ratio=" << fmt(rep.worst_ratio) << " "
      << verdict(rep.pass) << "\n";
  for (const auto& w : rep.failures) {
    out << "  trial=" << w.trial << " lhs=" << fmt(w.outcome.lhs) << " rhs=" << fmt(w.outcome.rhs)
        << " margin=" << fmt(w.outcome.margin) << " " << w.outcome.detail << "\n";
  }
}

int cmd_certify_rearrange(const Options& o, std::ostream& out) {
  if (o.trials == 0) throw Error(ErrorKind::InvalidConfig, "trials must be at least 1");
  const auto rep = certify_rearrangement(read_instance_file(o.input), o.trials, o.seed);
  print_check(rep, out);
  return rep.pass ? 0 : 1;
}

void print_chains(const DecompositionReport& rep, std::ostream& out) {
  for (const auto& c : rep.chains) {
    out << c.name << " norm=" << fmt(c.norm) << " lower=" << fmt(c.lower) << " upper=" << fmt(c.upper)
        << " constant=" << fmt(c.constant) << " observed=" << fmt(c.observed)
        << " margin=" << fmt(c.outcome.margin) << " "
        << (c.informational ? "INFO" : verdict(c.outcome.pass)) << "\n";
  }
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.input);
  const auto cuts = parse_csv_numbers(o.cuts);
  const BlockNorm norm = o.norm == "ode" ? BlockNorm::ode : BlockNorm::nakano;
  bool pass = true;

  for (const auto chain : {LevelChain::lower, LevelChain::upper}) {
    const auto lp = partition_by_levels(inst, cuts, chain);
    const char* label = chain == LevelChain::lower ? "lower" : "upper";
    ChainSpec spec = lp.spec;
    if (norm == BlockNorm::ode) spec.block_exponents.assign(lp.partition.size(), std::nullopt);
    const auto norms = block_norms(inst, lp.partition, spec, norm);
    for (std::size_t k = 0; k < norms.size(); ++k) {
      out << label << " block=" << k << " bracket=[" << fmt(cuts[lp.brackets[k]]) << ","
          << fmt(cuts[lp.brackets[k] + 1]) << "] pieces=" << lp.partition.blocks()[k].size()
          << " r=" << fmt(lp.partition.bounds()[k].inf) << " s=" << fmt(lp.partition.bounds()[k].sup)
          << " norm=" << fmt(norms[k]) << "\n";
    }
    out << label << " chain=" << fmt(fold_chain(norms, spec)) << "\n";
  }

  const auto levels = certify_levels(inst, cuts);
  print_chains(levels, out);
  const auto lp = partition_by_levels(inst, cuts, LevelChain::lower);
  const auto general = certify_decomposition(inst, lp.partition);
  print_chains(general, out);
  pass = levels.pass && general.pass;
  out << "overall " << verdict(pass) << "\n";
  return pass ? 0 : 1;
}

int cmd_transform(const Options& o, std::ostream& out) {
  if (o.kind == "aux") {
    const auto t = aux_transform(read_instance_file(o.input));
    const auto slopes = aux_slopes(t);
    out << "alpha=" << fmt(t.alpha) << "\n";
    out << "tau,p_hat,phi_hat,slope\n";
    for (std::size_t i = 0; i < t.p_hat.size(); ++i) {
      out << fmt(t.grid[i + 1]) << "," << fmt(t.p_hat[i]) << "," << fmt(t.phi_hat[i + 1]) << "," << fmt(slopes[i])
          << "\n";
    }
    return 0;
  }
  if (o.refine == 0) throw Error(ErrorKind::InvalidConfig, "--refine must be at least 1");
  const auto inst = read_halfline_file(o.input);
  const auto image = to_unit_interval(inst, o.refine);
  const double source = source_norm(inst).value;
  const double mapped = image_norm(image).value;
  out << "source=" << fmt(source) << " image=" << fmt(mapped) << " discrepancy=" << fmt(std::abs(mapped - source))
      << " support_end=" << fmt(image.support_end) << " pieces=" << image.pieces.size() << "\n";
  if (!o.out_file.empty()) {
    Json pieces = Json::array();
    for (const auto& pc : image.pieces) pieces.push_back({{"len", pc.len}, {"f", pc.f}, {"p", pc.p}, {"w", pc.w}});
    write_text_file(o.out_file, dump_json(Json{{"pieces", std::move(pieces)}}));
  }
  return 0;
}

int cmd_fuzz(const Options& o, std::ostream& out) {
  GenConfig cfg = o.extreme ? GenConfig::extreme(o.seed) : GenConfig{};
  cfg.seed = o.seed;
  cfg.max_pieces = o.max_pieces;
  cfg.permutations = o.permutations;
  const auto names = o.checks.empty() ? all_check_names() : parse_csv_names(o.checks);
  const auto result = run_suite(cfg, o.trials, names, o.threads);
  for (const auto& rep : result.reports) print_check(rep, out);
  out << "overall " << verdict(result.pass()) << "\n";
  if (!o.report.empty()) write_text_file(o.report, dump_json(suite_to_json(result)));
  return result.pass() ? 0 : 1;
}

int cmd_replay(const Options& o, std::ostream& out) {
  const auto res = replay(read_json_file(o.report), o.index);
  out << "check=" << res.witness.check << " trial=" << res.witness.trial
      << " recorded_margin=" << fmt(res.witness.margin) << " replay_margin=" << fmt(res.outcome.margin)
      << " lhs=" << fmt(res.outcome.lhs) << " rhs=" << fmt(res.outcome.rhs)
      << " reproduced=" << (res.reproduced ? "yes" : "no") << " " << verdict(res.outcome.pass) << "\n";
  return res.outcome.pass && res.reproduced ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variable-exponent Lebesgue norm toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* norm = app.add_subcommand("norm", "Nakano, Musielak-Orlicz or ODE norm of an instance");
  norm->add_option("--method", o.method)->check(CLI::IsMember({"nakano", "mo", "ode"}));
  norm->add_option("--input", o.input)->required();
  norm->add_option("--tol", o.tol);
  norm->add_option("--curve", o.curve, "CSV file for the accumulation curve (ode only)");

  auto* modular = app.add_subcommand("modular", "Modular at a given lambda");
  modular->add_option("--method", o.method)->check(CLI::IsMember({"nakano", "mo"}));
  modular->add_option("--input", o.input)->required();
  modular->add_option("--lambda", o.lambda)->required();

  auto* constants = app.add_subcommand("constants", "The constants a and b_p");
  constants->add_option("--bp", o.bp, "exponent p for b_p (number or inf)");

  auto* rearrange = app.add_subcommand("rearrange", "Reorder pieces by exponent or at random");
  rearrange->add_option("--input", o.input)->required();
  rearrange->add_option("--order", o.order)->check(CLI::IsMember({"inc", "dec", "random"}));
  rearrange->add_option("--seed", o.seed);
  rearrange->add_option("--out", o.out_file);

  auto* certify = app.add_subcommand("certify", "Certification runs on one instance");
  certify->require_subcommand(1);
  auto* certify_re = certify->add_subcommand("rearrange", "Random permutations against the monotone bounds");
  certify_re->add_option("--input", o.input)->required();
  certify_re->add_option("--trials", o.trials)->required();
  certify_re->add_option("--seed", o.seed);

  auto* decompose = app.add_subcommand("decompose", "Block chains for exponent level sets");
  decompose->add_option("--input", o.input)->required();
  decompose->add_option("--cuts", o.cuts)->required();
  decompose->add_option("--norm", o.norm)->check(CLI::IsMember({"nakano", "ode"}));

  auto* transform = app.add_subcommand("transform", "Auxiliary or half-line transform");
  transform->add_option("--kind", o.kind)->check(CLI::IsMember({"aux", "halfline"}));
  transform->add_option("--input", o.input)->required();
  transform->add_option("--refine", o.refine);
  transform->add_option("--out", o.out_file, "write the half-line image as a weighted instance file");

  auto* fuzz = app.add_subcommand("fuzz", "Seeded property suite");
  fuzz->add_option("--trials", o.trials)->required();
  fuzz->add_option("--seed", o.seed)->required();
  fuzz->add_option("--checks", o.checks, "comma-separated check names (default: all)");
  fuzz->add_option("--report", o.report, "JSON report path");
  fuzz->add_option("--threads", o.threads);
  fuzz->add_option("--max-pieces", o.max_pieces);
  fuzz->add_option("--permutations", o.permutations);
  fuzz->add_flag("--extreme", o.extreme, "draw exponents from (1, 1e4)");

  auto* replay_cmd = app.add_subcommand("replay", "Re-run one witness from a report");
  replay_cmd->add_option("--report", o.report)->required();
  replay_cmd->add_option("--index", o.index)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*norm) return cmd_norm(o, out);
    if (*modular) return cmd_modular(o, out);
    if (*constants) return cmd_constants(o, out);
    if (*rearrange) return cmd_rearrange(o, out);
    if (*certify_re) return cmd_certify_rearrange(o, out);
    if (*decompose) return cmd_decompose(o, out);
    if (*transform) return cmd_transform(o, out);
    if (*fuzz) return cmd_fuzz(o, out);
    if (*replay_cmd) return cmd_replay(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace varlp
