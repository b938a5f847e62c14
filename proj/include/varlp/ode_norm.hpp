#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "varlp/luxemburg.hpp"
#include "varlp/stepfn.hpp"

namespace varlp {

/// φ_f at the breakpoints of a piece grid; φ(t) is the norm of 1_[0,t] f.
struct AccumulationCurve {
  std::vector<double> breakpoints;
  std::vector<double> phi;  ///< phi[i] = φ(breakpoints[i]), phi[0] = φ(0)

  double final_value() const { return phi.back(); }
};

/// The ODE-norm recursion over raw pieces, seeded with `seed` at t = 0:
/// φ_i = φ_{i-1} ⊞_{p_i} |f_i|·len_i^(1/p_i). Zero pieces leave φ unchanged.
/// No exponent cap is applied here, so arbitrarily large p are accepted.
std::vector<double> phi_chain(std::span<const Piece> pieces, double seed = 0.0);

/// Exact solution of φ' = (|f|^p/p) φ^(1-p), φ(0) = 0+, on a step instance.
AccumulationCurve phi_exact_step(const Instance& inst);
AccumulationCurve phi_exact_step(const StepFunction& f, const ExponentProfile& p);

NormResult norm_ode(const Instance& inst);
NormResult norm_ode(const StepFunction& f, const ExponentProfile& p);

/// φ(t) for t in [0,1], exact inside a piece (the closed form on a shortened
/// piece, not linear interpolation).
double accumulation(const Instance& inst, double t);
double accumulation(const StepFunction& f, const ExponentProfile& p, double t);

/// Integrates from the positive initial value eps0 with `steps` closed-form
/// substeps per piece. For step data this converges to phi_exact_step from
/// above as eps0 decreases, with |difference| <= eps0.
AccumulationCurve phi_numeric(const Instance& inst, std::size_t steps, double eps0);
AccumulationCurve phi_numeric(const StepFunction& f, const ExponentProfile& p, std::size_t steps, double eps0);

/// Solution of λ'(t) = w(t)|f(t)|^p(t) λ(t)^(1-p(t)) from 0+, per piece:
/// λ_i = λ_{i-1} ⊞_{p_i} (p_i w_i len_i)^(1/p_i)|f_i|. With w = 1/p this is
/// the accumulation curve.
AccumulationCurve varying_lambda_curve(const Instance& inst, std::span<const double> weights);

}  // namespace varlp
