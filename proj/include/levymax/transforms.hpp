#pragma once
// Closed-form joint Laplace-Stieltjes transforms of (max, argmax) of Y over an
// exponential(beta) horizon, both for the continuously observed process and
// for its Poisson(omega)-inspected skeleton, together with the moment
// formulas obtained by differentiating them at the origin.
#include "levymax/levy_model.hpp"

namespace levymax {

struct MomentReport {
  double mean_max = 0.0;
  double mean_argmax = 0.0;
  double cross_moment = 0.0;  // E[max * argmax]
  double covariance = 0.0;
  double var_max = 0.0;
  double var_argmax = 0.0;
};

// regularized factor (zeta - phi(alpha)) / (psi(zeta) - alpha) for spectrally
// positive models; smooth and positive on alpha >= 0, the removable
// singularity at alpha = psi(zeta) is evaluated as phi'((alpha+psi(zeta))/2)
double wh_factor_sp(const LevyModel& m, double zeta, double alpha);

// E exp(-alpha*max - gamma*argmax) for the inspected skeleton over an
// exponential(beta) horizon with Poisson(omega) inspection. Distributional
// use has alpha, gamma >= 0; small negative values are accepted as the
// analytic extension so derivative oracles can difference at the origin.
double joint_lst_inspected_sp(const LevyModel& m, double beta, double omega, double alpha,
                              double gamma);
double joint_lst_inspected_sn(const LevyModel& m, double beta, double omega, double alpha,
                              double gamma);
double joint_lst_inspected(const LevyModel& m, Side side, double beta, double omega, double alpha,
                           double gamma);

// E exp(-alpha*max - gamma*argmax) for the continuously observed process
double joint_lst_continuous(const LevyModel& m, Side side, double beta, double alpha,
                            double gamma);

// P(inspected max = 0) = Psi(beta)/Psi(beta+omega), spectrally negative only
double atom_at_zero_sn(const LevyModel& m, double beta, double omega);

// all six moments of (max, argmax) of the inspected skeleton
MomentReport moments_inspected(const LevyModel& m, Side side, double beta, double omega);

// E max over the continuous exponential(beta) horizon
double mean_max_continuous(const LevyModel& m, Side side, double beta);

// sign variant of the fifth term of the SP cross-moment formula; the
// finite-difference oracle on the implemented transform rejects this variant
// (see tests), so it is kept only to document the discrepancy
double cross_moment_sp_variant(const LevyModel& m, double beta, double omega);

struct FrullaniCheck {
  double quadrature = 0.0;
  double closed_form = 0.0;
};

// integral of exp(-beta*t)*(1-exp(-omega*t))/t over (0, inf) evaluated by
// adaptive quadrature on [0, 50/beta] (tail analytically negligible) against
// the closed form log((beta+omega)/beta)
FrullaniCheck frullani_check(double beta, double omega);

}  // namespace levymax
