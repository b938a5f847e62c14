#include "varlp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

#include "varlp/decompose.hpp"
#include "varlp/error.hpp"
#include "varlp/halfline.hpp"
#include "varlp/luxemburg.hpp"
#include "varlp/modular.hpp"
#include "varlp/ode_norm.hpp"
#include "varlp/random.hpp"
#include "varlp/rearrange.hpp"
#include "varlp/scalars.hpp"

namespace varlp {

void GenConfig::validate() const {
  if (max_pieces == 0) throw Error(ErrorKind::InvalidConfig, "max_pieces must be positive");
  if (!(f_lo >= 0.0) || !(f_hi >= f_lo) || !std::isfinite(f_hi)) {
    throw Error(ErrorKind::InvalidConfig, "f range must satisfy 0 <= lo <= hi < inf");
  }
  if (!(p_lo >= 1.0) || !(p_hi >= p_lo) || p_hi > kMaxExponent) {
    throw Error(ErrorKind::InvalidConfig, "p range must satisfy 1 <= lo <= hi <= P_MAX");
  }
  if (!(zero_piece_prob >= 0.0 && zero_piece_prob <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "zero_piece_prob must lie in [0, 1]");
  }
  if (permutations == 0) throw Error(ErrorKind::InvalidConfig, "permutations must be positive");
}

GenConfig GenConfig::extreme(std::uint64_t seed) {
  GenConfig cfg;
  cfg.p_hi = 1e4;
  cfg.seed = seed;
  return cfg;
}

Instance generate_instance(const GenConfig& cfg, std::size_t trial) {
  cfg.validate();
  Rng rng(derive_seed(cfg.seed, trial));
  const std::size_t n = 1 + rng.index(cfg.max_pieces);
  std::vector<Piece> pieces(n);
  double total = 0.0;
  for (auto& pc : pieces) {
    pc.len = 0.05 + rng.uniform01();
    total += pc.len;
    const bool zero = rng.bernoulli(cfg.zero_piece_prob);
    const double f = rng.uniform(cfg.f_lo, cfg.f_hi);
    pc.f = zero ? 0.0 : f;
    pc.p = rng.log_uniform(cfg.p_lo, cfg.p_hi);
  }
  for (auto& pc : pieces) pc.len /= total;
  return Instance(std::move(pieces)).normalized();
}

std::uint64_t aux_seed(const GenConfig& cfg, std::size_t trial, std::string_view check) {
  return derive_seed(cfg.seed, trial, name_hash(check));
}

// -- Checks -------------------------------------------------------------------

namespace {

constexpr double kSlack = 1e-9;
constexpr double kTiny = std::numeric_limits<double>::min();

Outcome combine(std::initializer_list<Outcome> outcomes) {
  Outcome w = *outcomes.begin();
  for (const auto& o : outcomes) w = worse(w, o);
  return w;
}

double relative(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

template <class Pred>
Instance restrict_where(const Instance& inst, Pred keep) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (keep(i)) idx.push_back(i);
  }
  return restrict(inst, PieceSet(std::move(idx)));
}

Instance constant_exponent(const Instance& inst, double p) {
  return inst.with_exponents(std::vector<double>(inst.size(), p));
}

double ode(const Instance& inst) { return norm_ode(inst).value; }
double nakano(const Instance& inst) { return norm_nakano(inst).value; }
double mo(const Instance& inst) { return norm_mo(inst).value; }

/// Halves the longest piece until the grid has at least n pieces.
Instance split_to(const Instance& inst, std::size_t n) {
  std::vector<Piece> pieces(inst.pieces().begin(), inst.pieces().end());
  while (pieces.size() < n) {
    auto it = std::max_element(pieces.begin(), pieces.end(),
                               [](const Piece& a, const Piece& b) { return a.len < b.len; });
    Piece half = *it;
    half.len *= 0.5;
    *it = half;
    pieces.insert(it, half);
  }
  return Instance(std::move(pieces));
}

/// Random partition into 2..8 non-empty blocks, shared by the four chain checks.
std::pair<Instance, Partition> random_partition(const TrialInput& in) {
  Rng rng(aux_seed(in.cfg, in.trial, "T41-partition"));
  const std::size_t blocks = 2 + rng.index(7);
  Instance inst = split_to(in.instance, blocks);
  const auto order = rng.permutation(inst.size());
  std::vector<std::vector<std::size_t>> members(blocks);
  for (std::size_t k = 0; k < order.size(); ++k) {
    members[k < blocks ? k : rng.index(blocks)].push_back(order[k]);
  }
  std::vector<PieceSet> sets;
  for (auto& m : members) {
    std::sort(m.begin(), m.end());
    sets.emplace_back(std::move(m));
  }
  Partition part(inst, std::move(sets));
  return {std::move(inst), std::move(part)};
}

Outcome chain_check(const TrialInput& in, std::string_view chain) {
  const auto [inst, part] = random_partition(in);
  return certify_decomposition(inst, part).find(chain)->outcome;
}

Outcome check_p21a(const TrialInput& in) {
  Rng rng(in.aux_seed);
  const double pbar = in.instance.max_exponent();
  double r = rng.log_uniform(1.0, std::max(2.0, pbar));
  if (r <= 1.0) r = std::nextafter(1.0, 2.0);
  const Instance g = restrict_where(in.instance, [&](std::size_t i) { return in.instance[i].p >= r; });
  return leq(ode(constant_exponent(g, r)) / (1.0 + constant_a()), ode(g), kSlack,
             "||1_{p>=r} f||_r / (1+a) <= ||1_{p>=r} f||_p");
}

Outcome check_p21b(const TrialInput& in) {
  Rng rng(in.aux_seed);
  std::vector<double> p2(in.instance.size());
  for (auto& q : p2) q = rng.log_uniform(in.cfg.p_lo, in.cfg.p_hi);
  const Instance g = restrict_where(in.instance, [&](std::size_t i) { return in.instance[i].p <= p2[i]; });
  return leq(ode(g) / (1.0 + constant_a() * std::numbers::e), ode(g.with_exponents(p2)), kSlack,
             "||1_{p1<=p2} f||_p1 / (1+ae) <= ||1_{p1<=p2} f||_p2");
}

Outcome check_p21c(const TrialInput& in) {
  return less(ode(in.instance), std::numbers::e * in.instance.sup_abs(), "||f|| < e ||f||_inf");
}

Outcome check_p22(const TrialInput& in) {
  const double n = nakano(in.instance);
  const double m = mo(in.instance);
  return combine({leq(m / constant_a(), n, kSlack, "MO / a <= Nakano"), leq(n, m, kSlack, "Nakano <= MO")});
}

Outcome check_p23(const TrialInput& in) {
  const double n = nakano(in.instance);
  const double o = ode(in.instance);
  const double b = constant_bp(in.instance.max_exponent());
  return combine({leq(n, o, kSlack, "Nakano <= ODE"), leq(o, b * n, kSlack, "ODE <= b Nakano")});
}

Outcome check_p25(const TrialInput& in) {
  Rng rng(in.aux_seed);
  const std::size_t rank = 2 + rng.index(3);
  std::vector<std::size_t> shape(rank);
  std::size_t count = 1;
  for (auto& s : shape) {
    s = 1 + rng.index(3);
    count *= s;
  }
  std::vector<double> data(count);
  for (auto& x : data) x = rng.bernoulli(0.2) ? 0.0 : rng.uniform01();
  std::vector<double> exps(rank);
  for (auto& e : exps) e = rng.bernoulli(0.1) ? kInfExponent : rng.log_uniform(1.0, 64.0);
  bool any = false;
  for (std::size_t k = 0; k + 1 < rank; ++k) any = any || exps[k] <= exps[k + 1];
  if (!any) std::sort(exps.begin(), exps.end());

  const Tensor t(std::move(shape), std::move(data));
  std::optional<Outcome> out;
  for (std::size_t k = 0; k + 1 < rank; ++k) {
    if (exps[k] > exps[k + 1]) continue;
    const auto cmp = nested_fold_compare(t, exps, k);
    const Outcome o = leq(cmp.lhs, cmp.rhs, 1e-12, "inner r then s <= inner s then r, axis " + std::to_string(k));
    out = out ? worse(*out, o) : o;
  }
  return *out;
}

Outcome check_p32(const TrialInput& in) {
  Rng rng(in.aux_seed);
  const auto dir = rng.bernoulli(0.5) ? SortDirection::inc : SortDirection::dec;
  const Instance ones = in.instance.with_values(std::vector<double>(in.instance.size(), 1.0));
  return constant_one_monotone_outcome(sort_by_exponent(ones, dir).p());
}

Outcome check_t31_sandwich(const TrialInput& in) {
  Rng rng(in.aux_seed);
  const double lowest = ode(sort_by_exponent(in.instance, SortDirection::inc));
  const double highest = ode(sort_by_exponent(in.instance, SortDirection::dec));
  std::optional<Outcome> out;
  for (std::size_t k = 0; k < in.cfg.permutations; ++k) {
    const double v = ode(permute(in.instance, PiecePermutation(rng.permutation(in.instance.size()))));
    const Outcome o = combine({leq(lowest, v, kSlack, "increasing <= permuted"),
                               leq(v, highest, kSlack, "permuted <= decreasing")});
    out = out ? worse(*out, o) : o;
  }
  return *out;
}

Outcome check_t31_factor(const TrialInput& in) {
  Rng rng(in.aux_seed);
  const double original = ode(in.instance);
  const double b = constant_bp(in.instance.max_exponent());
  std::optional<Outcome> out;
  for (std::size_t k = 0; k < in.cfg.permutations; ++k) {
    const double v = ode(permute(in.instance, PiecePermutation(rng.permutation(in.instance.size()))));
    const Outcome o = combine({leq(v, b * original, kSlack, "permuted <= b original"),
                               leq(original, b * v, kSlack, "original <= b permuted")});
    out = out ? worse(*out, o) : o;
  }
  return *out;
}

Outcome check_nakano_perm(const TrialInput& in) {
  Rng rng(in.aux_seed);
  const Instance permuted = permute(in.instance, PiecePermutation(rng.permutation(in.instance.size())));
  return combine({within(relative(nakano(permuted), nakano(in.instance)), 1e-12, "Nakano permutation invariance"),
                  within(relative(mo(permuted), mo(in.instance)), 1e-12, "MO permutation invariance")});
}

Outcome check_t41_levels(const TrialInput& in) {
  Rng rng(in.aux_seed);
  const double pbar = in.instance.max_exponent();
  std::vector<double> cuts{1.0};
  if (pbar > 1.0) {
    const std::size_t inner = rng.index(5);
    std::vector<double> mids(inner);
    for (auto& m : mids) m = rng.log_uniform(1.0, pbar);
    std::sort(mids.begin(), mids.end());
    for (double m : mids) {
      if (m > cuts.back() && m < pbar) cuts.push_back(m);
    }
    cuts.push_back(pbar);
  } else {
    cuts.push_back(2.0);
  }
  const auto rep = certify_levels(in.instance, cuts);
  return combine({rep.find("levels-lower")->outcome, rep.find("levels-upper")->outcome});
}

Outcome check_t41_twelve(const TrialInput& in) {
  Rng rng(in.aux_seed);
  const double r = rng.log_uniform(1.0, in.instance.max_exponent());
  const auto rep = twelve_constant_check(in.instance, r);
  return combine({rep.find("twelve-lower")->outcome, rep.find("twelve-upper")->outcome});
}

Outcome check_limit(const TrialInput&) {
  const double ps[] = {1e3, 1e6, 1e9, 1e12};
  std::vector<LimitExample> ex;
  for (double p : ps) ex.push_back(limit_example(p));
  Outcome out = less(1.9, ex.back().decreasing, "decreasing arrangement > 1.9 at p = 1e12");
  out = worse(out, less(ex.back().increasing, 1.1, "increasing arrangement < 1.1 at p = 1e12"));
  for (std::size_t k = 0; k + 1 < ex.size(); ++k) {
    out = worse(out, less(ex[k].decreasing, ex[k + 1].decreasing, "monotone in p"));
  }
  for (const auto& e : ex) {
    out = worse(out, within(relative(e.decreasing, e.hand_formula), 1e-12, "recursion matches hand formula"));
  }
  return out;
}

Outcome check_deriv(const TrialInput& in) {
  // f_i = (u_i / S)^(1/p_i) with S = Σ len_i u_i, so ∫|f|^p = 1.
  const auto& inst = in.instance;
  std::vector<double> u(inst.size());
  double total = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    u[i] = std::abs(inst[i].f);
    total += inst[i].len * u[i];
  }
  if (total == 0.0) {
    std::fill(u.begin(), u.end(), 1.0);
    total = 1.0;
  }
  std::vector<double> f(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) f[i] = std::pow(u[i] / total, 1.0 / inst[i].p);
  const auto pieces = nakano_pieces(inst.with_values(f));

  const double d = modular_lambda_derivative(pieces, 1.0);
  const double h = 1e-4 / inst.max_exponent();
  const double fd = (modular_sum(pieces, 1.0 + h) - modular_sum(pieces, 1.0 - h)) / (2.0 * h);
  return combine({within(d + 1.0, 1e-10, "derivative at 1 equals -1"),
                  within(fd - d, 1e-6, "central difference matches derivative")});
}

Outcome check_coincide(const TrialInput& in) {
  std::vector<double> w(in.instance.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / in.instance[i].p;
  const auto lam = varying_lambda_curve(in.instance, w);
  const auto phi = phi_exact_step(in.instance);
  double err = 0.0;
  for (std::size_t i = 0; i < phi.phi.size(); ++i) err = std::max(err, std::abs(lam.phi[i] - phi.phi[i]));
  const double scale = phi.final_value();
  return within(scale > 0.0 ? err / scale : err, 1e-12, "w = 1/p curve equals the accumulation curve");
}

Outcome check_const_p(const TrialInput& in) {
  constexpr double kExponents[] = {1.0, 1.5, 2.0, 7.0, 64.0};
  const double p0 = kExponents[in.trial % 5];
  const Instance g = constant_exponent(in.instance, p0);
  double integral = 0.0;
  for (const auto& pc : g.pieces()) integral += pc.len * std::pow(std::abs(pc.f), p0);
  return within(relative(ode(g), std::pow(integral, 1.0 / p0)), 1e-12, "ODE norm equals the L^p0 norm");
}

Outcome check_homogeneity(const TrialInput& in) {
  Rng rng(in.aux_seed);
  const double sign = rng.bernoulli(0.5) ? -1.0 : 1.0;
  const double c = sign * rng.log_uniform(1e-3, 1e3);
  return within(relative(ode(in.instance.scaled(c)), std::abs(c) * ode(in.instance)), 1e-12,
                "||c f|| = |c| ||f||");
}

Outcome check_triangle(const TrialInput& in) {
  Rng rng(in.aux_seed);
  std::vector<double> g(in.instance.size()), s(in.instance.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = rng.uniform(-in.cfg.f_hi, in.cfg.f_hi);
    s[i] = in.instance[i].f + g[i];
  }
  const Instance gi = in.instance.with_values(g);
  const Instance si = in.instance.with_values(s);
  return combine({leq(ode(si), ode(in.instance) + ode(gi), kSlack, "ODE triangle inequality"),
                  leq(nakano(si), nakano(in.instance) + nakano(gi), kSlack, "Nakano triangle inequality"),
                  leq(mo(si), mo(in.instance) + mo(gi), kSlack, "MO triangle inequality")});
}

Outcome check_curve(const TrialInput& in) {
  const auto curve = phi_exact_step(in.instance);
  double err = 0.0;
  for (std::size_t i = 1; i <= in.instance.size(); ++i) {
    err = std::max(err, relative(ode(restrict(in.instance, PieceSet::range(0, i))), curve.phi[i]));
  }
  return within(err, 1e-12, "curve equals norms of initial segments");
}

Outcome check_p0plus(const TrialInput& in) {
  const double exact = phi_exact_step(in.instance).final_value();
  const double eps[] = {1e-4, 1e-8, 1e-12};
  double d[3];
  for (int k = 0; k < 3; ++k) d[k] = phi_numeric(in.instance, 1, eps[k]).final_value() - exact;
  return combine({within(d[0], eps[0], "within 1e-4"), within(d[1], eps[1], "within 1e-8"),
                  within(d[2], eps[2], "within 1e-12"), leq(d[1], d[0], 0.0, "monotone in eps0"),
                  leq(d[2], d[1], 0.0, "monotone in eps0")});
}

Outcome check_halfline(const TrialInput&) {
  const HalfLineInstance ref({HalfLinePiece{1.0, 1.0, 2.0, 1.0}});
  const auto iso = verify_isometry(ref, 512, 8);
  return combine({iso.report.worst->outcome, within(iso.discrepancy.back(), 1e-4, "final discrepancy")});
}

std::vector<Check> build_registry() {
  std::vector<Check> r;
  auto add = [&](std::string name, std::string statement, double slack, bool uses, bool once,
                 std::function<Outcome(const TrialInput&)> fn) {
    r.push_back(Check{std::move(name), std::move(statement), slack, uses, once, std::move(fn)});
  };
  add("P21a", "||1_{p>=r} f||_r / (1+a) <= ||1_{p>=r} f||_p", kSlack, true, false, check_p21a);
  add("P21b", "||1_{p1<=p2} f||_p1 / (1+ae) <= ||1_{p1<=p2} f||_p2", kSlack, true, false, check_p21b);
  add("P21c", "||f|| < e ||f||_inf", 0.0, true, false, check_p21c);
  add("P22", "MO / a <= Nakano <= MO", kSlack, true, false, check_p22);
  add("P23", "Nakano <= ODE <= b_pbar Nakano", kSlack, true, false, check_p23);
  add("P25", "swapping adjacent fold exponents r <= s does not decrease", 1e-12, false, false, check_p25);
  add("P32", "norm of 1 below 1 for increasing p, above for decreasing p", 0.0, true, false, check_p32);
  add("T31-sandwich", "increasing <= permuted <= decreasing", kSlack, true, false, check_t31_sandwich);
  add("T31-factor", "permuted / original within [1/b_pbar, b_pbar]", kSlack, true, false, check_t31_factor);
  add("NAKANO-PERM", "Nakano and MO norms are permutation invariant", 0.0, true, false, check_nakano_perm);
  add("T41-chain1", "Nakano r-chain / 2(1+ae) <= Nakano norm", kSlack, true, false,
      [](const TrialInput& in) { return chain_check(in, "chain1"); });
  add("T41-chain2", "Nakano norm <= 2(1+ae) Nakano s-chain", kSlack, true, false,
      [](const TrialInput& in) { return chain_check(in, "chain2"); });
  add("T41-chain3", "ODE block chains within b_pbar", kSlack, true, false,
      [](const TrialInput& in) { return chain_check(in, "chain3"); });
  add("T41-chain4", "Nakano block chains within b_pbar", kSlack, true, false,
      [](const TrialInput& in) { return chain_check(in, "chain4"); });
  add("T41-levels", "level-set chains with constant 2(1+ae)", kSlack, true, false, check_t41_levels);
  add("T41-twelve", "two-block bounds with constant 12", kSlack, true, false, check_t41_twelve);
  add("LIMIT-2", "norm of 1 on L^p(0,1/ln p) + L^1 tends to 2, swapped to 1", 0.0, false, true, check_limit);
  add("DERIV-1", "modular derivative at 1 equals -1 when the integral of |f|^p is 1", 0.0, true, false,
      check_deriv);
  add("COINCIDE-5.3", "varying-lambda curve with w = 1/p is the accumulation curve", 0.0, true, false,
      check_coincide);
  add("CONST-P", "constant exponent gives the classical norm", 0.0, true, false, check_const_p);
  add("AXIOM-homogeneity", "||c f|| = |c| ||f||", 0.0, true, false, check_homogeneity);
  add("AXIOM-triangle", "triangle inequality for ODE, Nakano and MO", kSlack, true, false, check_triangle);
  add("ODE-curve", "accumulation curve equals norms of initial segments", 0.0, true, false, check_curve);
  add("P0PLUS", "positive seeds converge to the 0+ solution from above", 0.0, true, false, check_p0plus);
  add("HALFLINE", "half-line image norm converges to the source norm", 0.0, false, true, check_halfline);
  return r;
}

}  // namespace

const std::vector<Check>& check_registry() {
  static const std::vector<Check> registry = build_registry();
  return registry;
}

const Check& find_check(std::string_view name) {
  for (const auto& c : check_registry()) {
    if (c.name == name) return c;
  }
  throw Error(ErrorKind::InvalidConfig, "unknown check \"" + std::string(name) + "\"");
}

std::vector<std::string> all_check_names() {
  std::vector<std::string> names;
  for (const auto& c : check_registry()) names.push_back(c.name);
  return names;
}

// -- Suite ----------------------------------------------------------------------

bool SuiteResult::pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

namespace {

Outcome run_guarded(const Check& check, const TrialInput& in) {
  try {
    return check.run(in);
  } catch (const std::exception& e) {
    return Outcome{0.0, 0.0, -1.0, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

SuiteResult run_suite(const GenConfig& cfg, std::size_t trials, std::span<const std::string> checks,
                      unsigned threads) {
  cfg.validate();
  if (trials == 0) throw Error(ErrorKind::InvalidConfig, "trials must be at least 1");
  std::vector<const Check*> selected;
  for (const auto& name : checks) selected.push_back(&find_check(name));

  std::vector<std::vector<std::optional<Outcome>>> outcomes(selected.size(),
                                                            std::vector<std::optional<Outcome>>(trials));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      const Instance inst = generate_instance(cfg, t);
      for (std::size_t c = 0; c < selected.size(); ++c) {
        const Check& check = *selected[c];
        if (check.once && t != 0) continue;
        outcomes[c][t] = run_guarded(check, TrialInput{cfg, t, inst, aux_seed(cfg, t, check.name)});
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SuiteResult result{cfg, trials, {}};
  for (std::size_t c = 0; c < selected.size(); ++c) {
    CheckReport rep;
    rep.name = selected[c]->name;
    rep.seed = cfg.seed;
    rep.slack = selected[c]->slack;
    for (std::size_t t = 0; t < trials; ++t) {
      if (!outcomes[c][t]) continue;
      std::optional<Instance> witness;
      if (selected[c]->uses_instance) witness = generate_instance(cfg, t);
      rep.record(t, *outcomes[c][t], witness);
    }
    result.reports.push_back(std::move(rep));
  }
  return result;
}

// -- Report serialization ---------------------------------------------------------

namespace {

Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double to_number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorKind::ParseError, "expected a number");
}

Json witness_to_json(const Witness& w) {
  return Json{{"trial", w.trial},
              {"lhs", number(w.outcome.lhs)},
              {"rhs", number(w.outcome.rhs)},
              {"margin", number(w.outcome.margin)},
              {"pass", w.outcome.pass},
              {"detail", w.outcome.detail},
              {"instance", w.instance ? instance_to_json(*w.instance) : Json(nullptr)}};
}

}  // namespace

Json config_to_json(const GenConfig& cfg) {
  return Json{{"max_pieces", cfg.max_pieces},
              {"f_range", {cfg.f_lo, cfg.f_hi}},
              {"p_range", {cfg.p_lo, cfg.p_hi}},
              {"zero_piece_prob", cfg.zero_piece_prob},
              {"seed", cfg.seed},
              {"permutations", cfg.permutations}};
}

GenConfig config_from_json(const Json& j) {
  try {
    GenConfig cfg;
    cfg.max_pieces = j.at("max_pieces").get<std::size_t>();
    cfg.f_lo = j.at("f_range").at(0).get<double>();
    cfg.f_hi = j.at("f_range").at(1).get<double>();
    cfg.p_lo = j.at("p_range").at(0).get<double>();
    cfg.p_hi = j.at("p_range").at(1).get<double>();
    cfg.zero_piece_prob = j.at("zero_piece_prob").get<double>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.permutations = j.at("permutations").get<std::size_t>();
    cfg.validate();
    return cfg;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad config: ") + e.what());
  }
}

Json suite_to_json(const SuiteResult& result) {
  Json checks = Json::array();
  for (const auto& rep : result.reports) {
    Json failures = Json::array();
    for (const auto& w : rep.failures) failures.push_back(witness_to_json(w));
    checks.push_back(Json{{"name", rep.name},
                          {"statement", find_check(rep.name).statement},
                          {"slack", rep.slack},
                          {"trials", rep.trials},
                          {"pass", rep.pass},
                          {"worst_margin", number(rep.worst_margin)},
                          {"worst_ratio", number(rep.worst_ratio)},
                          {"failure_count", rep.failures.size()},
                          {"failures", std::move(failures)},
                          {"worst", rep.worst ? witness_to_json(*rep.worst) : Json(nullptr)}});
  }
  return Json{{"schema", kReportSchema},
              {"config", config_to_json(result.cfg)},
              {"trials", result.trials},
              {"pass", result.pass()},
              {"checks", std::move(checks)}};
}

std::vector<WitnessRef> report_witnesses(const Json& report) {
  try {
    if (report.at("schema").get<std::string>() != kReportSchema) {
      throw Error(ErrorKind::ParseError, "unsupported report schema");
    }
    std::vector<WitnessRef> out;
    auto add = [&](const std::string& check, const Json& w) {
      WitnessRef ref{check, w.at("trial").get<std::size_t>(), to_number(w.at("margin")), std::nullopt};
      if (!w.at("instance").is_null()) ref.instance = instance_from_json(w.at("instance"));
      out.push_back(std::move(ref));
    };
    for (const auto& c : report.at("checks")) {
      const auto name = c.at("name").get<std::string>();
      for (const auto& w : c.at("failures")) add(name, w);
      if (!c.at("worst").is_null()) add(name, c.at("worst"));
    }
    return out;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad report: ") + e.what());
  }
}

ReplayResult replay(const Json& report, std::size_t index) {
  GenConfig cfg;
  try {
    cfg = config_from_json(report.at("config"));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad report: ") + e.what());
  }
  auto witnesses = report_witnesses(report);
  if (index >= witnesses.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "witness index " + std::to_string(index) + " of " + std::to_string(witnesses.size()));
  }
  ReplayResult res{std::move(witnesses[index]), {}, false};
  const Check& check = find_check(res.witness.check);
  const Instance inst = res.witness.instance ? *res.witness.instance : generate_instance(cfg, res.witness.trial);
  res.outcome = run_guarded(check, TrialInput{cfg, res.witness.trial, inst, aux_seed(cfg, res.witness.trial, check.name)});
  res.reproduced = res.outcome.margin == res.witness.margin ||
                   (std::isnan(res.outcome.margin) && std::isnan(res.witness.margin));
  return res;
}

}  // namespace varlp
