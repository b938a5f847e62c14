#include "varlp/luxemburg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "varlp/error.hpp"

namespace varlp {

std::string_view to_string(NormMethod m) {
  switch (m) {
    case NormMethod::nakano: return "nakano";
    case NormMethod::mo: return "mo";
    case NormMethod::weighted: return "weighted";
    case NormMethod::ode: return "ode";
  }
  return "unknown";
}

NormResult luxemburg_norm(std::span<const WeightedPiece> pieces, double tol, NormMethod method) {
  if (!(tol >= kMinTol)) throw Error(ErrorKind::ToleranceTooSmall, "tolerance below 1e-14");
  NormResult res;
  res.method = method;

  double m = 0.0;
  for (const auto& pc : pieces) {
    if (pc.len > 0.0) m = std::max(m, std::abs(pc.f));
  }
  if (m == 0.0) return res;

  constexpr int kMaxRescale = 60;
  constexpr double e = std::numbers::e;
  double lo = m / (2.0 * e);
  double hi = e * (m + m);

  double rho_hi = modular_sum(pieces, hi);
  for (int k = 0; rho_hi > 1.0 && k < kMaxRescale; ++k) {
    hi *= 2.0;
    rho_hi = modular_sum(pieces, hi);
  }
  if (rho_hi > 1.0) throw Error(ErrorKind::Overflow, "upper bracket not found after 60 doublings");
  double rho_lo = modular_sum(pieces, lo);
  for (int k = 0; rho_lo < 1.0 && k < kMaxRescale; ++k) {
    hi = std::min(hi, lo);
    rho_hi = std::min(rho_hi, rho_lo);
    lo *= 0.5;
    rho_lo = modular_sum(pieces, lo);
  }
  if (rho_lo < 1.0) throw Error(ErrorKind::Overflow, "lower bracket not found after 60 halvings");

  for (;;) {
    if (hi - lo <= tol && rho_hi >= 1.0 - 10.0 * tol) break;
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double rho = modular_sum(pieces, mid);
    if (rho <= 1.0) {
      hi = mid;
      rho_hi = rho;
    } else {
      lo = mid;
    }
    ++res.iterations;
  }
  res.value = hi;
  res.bracket_width = hi - lo;
  return res;
}

NormResult norm_nakano(const Instance& inst, double tol) {
  return luxemburg_norm(nakano_pieces(inst), tol, NormMethod::nakano);
}

NormResult norm_nakano(const StepFunction& f, const ExponentProfile& p, double tol) {
  return norm_nakano(Instance::from_functions(f, p), tol);
}

NormResult norm_mo(const Instance& inst, double tol) { return luxemburg_norm(mo_pieces(inst), tol, NormMethod::mo); }

NormResult norm_mo(const StepFunction& f, const ExponentProfile& p, double tol) {
  return norm_mo(Instance::from_functions(f, p), tol);
}

NormResult norm_weighted(const StepFunction& f, const ExponentProfile& p, const WeightProfile& w, double tol) {
  return luxemburg_norm(weighted_pieces(f, p, w), tol, NormMethod::weighted);
}

NormResult norm_weighted(const Instance& inst, std::span<const double> weights, double tol) {
  return luxemburg_norm(weighted_pieces(inst, weights), tol, NormMethod::weighted);
}

}  // namespace varlp
