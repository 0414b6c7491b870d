#include "levymax/levy_model.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace levymax {

LevyModel make_brownian(double drift, double volatility) {
  LevyModel m;
  m.kind = ModelKind::BrownianDrift;
  m.drift = drift;
  m.volatility = volatility;
  validate(m);
  return m;
}

LevyModel make_cp_up(double c, double jump_rate, double jump_mu, int jump_shape) {
  LevyModel m;
  m.kind = ModelKind::CompoundPoissonDriftUp;
  m.drift = c;
  m.jump_rate = jump_rate;
  m.jump_mu = jump_mu;
  m.jump_shape = jump_shape;
  validate(m);
  return m;
}

LevyModel make_cp_down(double c, double jump_rate, double jump_mu, int jump_shape) {
  LevyModel m = make_cp_up(c, jump_rate, jump_mu, jump_shape);
  m.kind = ModelKind::CompoundPoissonDriftDown;
  return m;
}

void validate(const LevyModel& m) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(m.drift) || !finite(m.volatility) || !finite(m.jump_rate) || !finite(m.jump_mu))
    fail(errc::invalid_model, "model: non-finite parameter");
  switch (m.kind) {
    case ModelKind::BrownianDrift:
      if (m.volatility < 0) fail(errc::invalid_model, "model: volatility must be >= 0");
      if (m.volatility == 0 && m.drift == 0)
        fail(errc::invalid_model, "model: degenerate zero process");
      break;
    case ModelKind::CompoundPoissonDriftUp:
    case ModelKind::CompoundPoissonDriftDown:
      if (!(m.drift > 0)) fail(errc::invalid_model, "model: compound-Poisson slope c must be > 0");
      if (m.jump_rate < 0) fail(errc::invalid_model, "model: jump_rate must be >= 0");
      if (!(m.jump_mu > 0)) fail(errc::invalid_model, "model: jump_mu must be > 0");
      if (m.jump_shape < 1) fail(errc::invalid_model, "model: jump_shape must be >= 1");
      break;
  }
}

bool supports(const LevyModel& m, Side side) {
  switch (m.kind) {
    case ModelKind::BrownianDrift:
      return true;
    case ModelKind::CompoundPoissonDriftUp:
      return side == Side::SpectrallyPositive;
    case ModelKind::CompoundPoissonDriftDown:
      return side == Side::SpectrallyNegative;
  }
  return false;
}

double mean_rate(const LevyModel& m) {
  switch (m.kind) {
    case ModelKind::BrownianDrift:
      return m.drift;
    case ModelKind::CompoundPoissonDriftUp:
      return m.jump_rate * m.jump_shape / m.jump_mu - m.drift;
    case ModelKind::CompoundPoissonDriftDown:
      return m.drift - m.jump_rate * m.jump_shape / m.jump_mu;
  }
  return 0.0;
}

double variance_rate(const LevyModel& m) {
  if (m.kind == ModelKind::BrownianDrift) return m.volatility * m.volatility;
  // E J^2 for Erlang(shape, mu) is shape*(shape+1)/mu^2
  return m.jump_rate * m.jump_shape * (m.jump_shape + 1) / (m.jump_mu * m.jump_mu);
}

namespace {

// shared closed form: c*a - rate*(1 - (mu/(mu+a))^shape) and derivatives;
// this is phi for the up model and Phi for the down model
ExponentEval cp_exponent(const LevyModel& m, double a) {
  const double c = m.drift, rate = m.jump_rate, mu = m.jump_mu;
  const int k = m.jump_shape;
  const double ratio = std::pow(mu / (mu + a), k);
  ExponentEval e;
  e.value = c * a - rate * (1.0 - ratio);
  e.first = c - rate * k * ratio / (mu + a);
  e.second = rate * k * (k + 1) * ratio / ((mu + a) * (mu + a));
  return e;
}

}  // namespace

ExponentEval laplace_exponent_sp(const LevyModel& m, double a) {
  validate(m);
  if (!supports(m, Side::SpectrallyPositive))
    fail(errc::unsupported_sidedness, "laplace_exponent_sp: model has downward jumps");
  if (!std::isfinite(a)) fail(errc::negative_input, "laplace_exponent_sp: alpha must be finite");
  // analytic extension below 0 is allowed (used by derivative oracles); the
  // compound models are only defined down to -jump_mu
  if (m.kind != ModelKind::BrownianDrift && !(m.jump_mu + a > 0))
    fail(errc::negative_input, "laplace_exponent_sp: alpha below analytic domain");
  if (m.kind == ModelKind::BrownianDrift) {
    const double v2 = m.volatility * m.volatility;
    return {0.5 * v2 * a * a - m.drift * a, v2 * a - m.drift, v2};
  }
  return cp_exponent(m, a);
}

ExponentEval cumulant_sn(const LevyModel& m, double a) {
  validate(m);
  if (!supports(m, Side::SpectrallyNegative))
    fail(errc::unsupported_sidedness, "cumulant_sn: model has upward jumps");
  if (!std::isfinite(a)) fail(errc::negative_input, "cumulant_sn: alpha must be finite");
  if (m.kind != ModelKind::BrownianDrift && !(m.jump_mu + a > 0))
    fail(errc::negative_input, "cumulant_sn: alpha below analytic domain");
  if (m.kind == ModelKind::BrownianDrift) {
    const double v2 = m.volatility * m.volatility;
    return {m.drift * a + 0.5 * v2 * a * a, m.drift + v2 * a, v2};
  }
  return cp_exponent(m, a);
}

ExponentEval exponent(const LevyModel& m, Side side, double a) {
  return side == Side::SpectrallyPositive ? laplace_exponent_sp(m, a) : cumulant_sn(m, a);
}

double right_inverse(const LevyModel& m, Side side, double beta) {
  if (!(beta >= 0)) fail(errc::negative_input, "right_inverse: beta must be >= 0");
  auto f = [&](double a) { return exponent(m, side, a); };

  // the exponent is convex with f(0) = 0; locate the left edge of the
  // increasing branch so the largest root is isolated
  double lo = 0.0;
  if (f(0.0).first < 0.0) {
    double hi = 1.0;
    int guard = 0;
    while (f(hi).first <= 0.0) {
      hi *= 2.0;
      if (++guard > 200) fail(errc::no_root, "right_inverse: exponent never increases");
    }
    // bisect f' = 0
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (f(mid).first < 0.0 ? lo : hi) = mid;
    }
    lo = hi;  // f is increasing from here on
  }
  if (beta == 0.0 && f(lo).value >= 0.0 && lo == 0.0) return 0.0;

  double hi = std::max(1.0, 2.0 * lo);
  int guard = 0;
  while (f(hi).value < beta) {
    if (f(hi).first <= 0.0 && hi > 1e12)
      fail(errc::no_root, "right_inverse: exponent bounded above below beta");
    hi *= 2.0;
    if (++guard > 300) fail(errc::no_root, "right_inverse: no bracket found");
  }

  const double tol = std::max(1e-12, 4.0 * DBL_EPSILON * std::abs(beta));
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 500; ++it) {
    ExponentEval e = f(x);
    const double resid = e.value - beta;
    if (std::abs(resid) <= tol) return x;
    if (resid > 0.0)
      hi = x;
    else
      lo = x;
    double step = (e.first > 0.0) ? resid / e.first : 0.0;
    double xn = x - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // bisection fallback
    if (xn == x) return x;                            // machine-precision limit
    x = xn;
  }
  fail(errc::non_convergence, "right_inverse: iteration cap reached");
}

ExponentEval inverse_derivatives(const LevyModel& m, Side side, double beta) {
  if (!(beta > 0)) fail(errc::negative_input, "inverse_derivatives: beta must be > 0");
  const double x = right_inverse(m, side, beta);
  const ExponentEval e = exponent(m, side, x);
  if (e.first <= 1e-14)
    fail(errc::degenerate_derivative, "inverse_derivatives: exponent derivative vanishes at root");
  ExponentEval out;
  out.value = x;
  out.first = 1.0 / e.first;
  out.second = -e.second / (e.first * e.first * e.first);
  return out;
}

std::string kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::BrownianDrift:
      return "BrownianDrift";
    case ModelKind::CompoundPoissonDriftUp:
      return "CompoundPoissonDriftUp";
    case ModelKind::CompoundPoissonDriftDown:
      return "CompoundPoissonDriftDown";
  }
  return "?";
}

LevyModel model_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::invalid_config, std::string("model config: parse error: ") + e.what());
  }
  if (!j.is_object()) fail(errc::invalid_config, "model config: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "kind" && k != "drift" && k != "volatility" && k != "jump_rate" && k != "jump_mu" &&
        k != "jump_shape")
      fail(errc::invalid_config, "model config: unknown field '" + k + "'");
  }
  if (!j.contains("kind") || !j["kind"].is_string())
    fail(errc::invalid_config, "model config: missing string field 'kind'");
  LevyModel m;
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "BrownianDrift")
    m.kind = ModelKind::BrownianDrift;
  else if (kind == "CompoundPoissonDriftUp")
    m.kind = ModelKind::CompoundPoissonDriftUp;
  else if (kind == "CompoundPoissonDriftDown")
    m.kind = ModelKind::CompoundPoissonDriftDown;
  else
    fail(errc::invalid_config, "model config: unknown kind '" + kind + "'");
  auto num = [&](const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number()) fail(errc::invalid_config, std::string("model config: field '") + key + "' must be a number");
    return j[key].get<double>();
  };
  m.drift = num("drift", 0.0);
  m.volatility = num("volatility", 0.0);
  m.jump_rate = num("jump_rate", 0.0);
  m.jump_mu = num("jump_mu", 1.0);
  m.jump_shape = static_cast<int>(num("jump_shape", 1.0));
  try {
    validate(m);
  } catch (const Error& e) {
    fail(errc::invalid_config, std::string("model config: ") + e.what());
  }
  return m;
}

std::string model_to_json_text(const LevyModel& m) {
  nlohmann::json j;
  j["kind"] = kind_name(m.kind);
  j["drift"] = m.drift;
  j["volatility"] = m.volatility;
  j["jump_rate"] = m.jump_rate;
  j["jump_mu"] = m.jump_mu;
  j["jump_shape"] = m.jump_shape;
  return j.dump();
}

LevyModel model_preset(const std::string& name) {
  if (name == "sp_cl") return make_cp_up(2.0, 1.0, 1.0);
  if (name == "sn_cl") return make_cp_down(2.0, 1.0, 1.0);
  if (name == "sn_bm") return make_brownian(-1.0, 1.0);
  if (name == "sp_bm") return make_brownian(0.0, std::sqrt(2.0));
  fail(errc::invalid_config, "unknown model preset '" + name + "'");
}

}  // namespace levymax
