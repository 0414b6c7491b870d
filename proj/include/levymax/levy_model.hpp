#pragma once
// Lévy model parameterizations with closed-form Laplace exponents / cumulants,
// right-inverses (largest nonnegative root) and their derivatives.
//
// Supported processes Y(t):
//   BrownianDrift:            Y(t) = drift*t + volatility*B(t)
//   CompoundPoissonDriftUp:   Y(t) = -c*t + sum of Erlang(shape, mu) upward
//                             jumps arriving at rate jump_rate  (no downward
//                             jumps: spectrally positive)
//   CompoundPoissonDriftDown: mirror image, Y(t) = +c*t - jumps (spectrally
//                             negative); c is stored in `drift` and must be > 0
#include <string>

#include "levymax/errors.hpp"

namespace levymax {

enum class ModelKind { BrownianDrift, CompoundPoissonDriftUp, CompoundPoissonDriftDown };
enum class Side { SpectrallyPositive, SpectrallyNegative };

struct LevyModel {
  ModelKind kind = ModelKind::BrownianDrift;
  double drift = 0.0;       // BrownianDrift: signed drift; compound models: slope magnitude c > 0
  double volatility = 0.0;  // BrownianDrift only
  double jump_rate = 0.0;   // compound models: Poisson arrival rate
  double jump_mu = 1.0;     // Erlang jump size rate parameter
  int jump_shape = 1;       // Erlang shape (1 = exponential jumps)
};

// value plus first and second derivative of a scalar function at a point
struct ExponentEval {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

LevyModel make_brownian(double drift, double volatility);
LevyModel make_cp_up(double c, double jump_rate, double jump_mu, int jump_shape = 1);
LevyModel make_cp_down(double c, double jump_rate, double jump_mu, int jump_shape = 1);

void validate(const LevyModel& m);
bool supports(const LevyModel& m, Side side);  // BrownianDrift qualifies for both

double mean_rate(const LevyModel& m);      // E Y(1)
double variance_rate(const LevyModel& m);  // Var Y(1)

// phi(a) = log E exp(-a Y(1)), spectrally positive models, a >= 0
ExponentEval laplace_exponent_sp(const LevyModel& m, double a);
// Phi(a) = log E exp(a Y(1)), spectrally negative models, a >= 0
ExponentEval cumulant_sn(const LevyModel& m, double a);
// dispatch on side (phi for SP, Phi for SN)
ExponentEval exponent(const LevyModel& m, Side side, double a);

// largest alpha >= 0 with exponent(alpha) = beta; bracketed Newton with
// bisection fallback, residual tolerance max(1e-12, 4*eps*|beta|), 500 iter cap
double right_inverse(const LevyModel& m, Side side, double beta);

// value = right_inverse(beta), first = 1/f'(value), second = -f''(value)/f'(value)^3
ExponentEval inverse_derivatives(const LevyModel& m, Side side, double beta);

// config document I/O; accepted fields: kind, drift, volatility, jump_rate,
// jump_mu, jump_shape; unknown fields rejected
LevyModel model_from_json_text(const std::string& text);
std::string model_to_json_text(const LevyModel& m);
std::string kind_name(ModelKind k);

// named presets used by the CLI and test suites:
//   sp_cl: CompoundPoissonDriftUp(c=2, rate=1, mu=1)
//   sn_cl: CompoundPoissonDriftDown(c=2, rate=1, mu=1)
//   sn_bm: BrownianDrift(drift=-1, vol=1)
//   sp_bm: BrownianDrift(drift=0, vol=sqrt(2))
LevyModel model_preset(const std::string& name);

}  // namespace levymax
