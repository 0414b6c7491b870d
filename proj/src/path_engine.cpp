#include "levymax/path_engine.hpp"

#include <algorithm>
#include <cmath>

namespace levymax {
namespace {

double erlang_draw(const LevyModel& m, RngStream& rng) {
  double s = 0.0;
  for (int i = 0; i < m.jump_shape; ++i) s += rng.exponential(m.jump_mu);
  return s;
}

// slope between jumps and jump sign for the compound models
double cp_slope(const LevyModel& m) {
  return m.kind == ModelKind::CompoundPoissonDriftUp ? -m.drift : m.drift;
}
double cp_sign(const LevyModel& m) {
  return m.kind == ModelKind::CompoundPoissonDriftUp ? 1.0 : -1.0;
}

void require_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    fail(errc::invalid_horizon, "horizon must be positive and finite");
}

}  // namespace

double sample_exponential(double rate, RngStream& rng) { return rng.exponential(rate); }

PathExtrema extrema_from_events(double slope, const std::vector<JumpEvent>& events,
                                double horizon) {
  require_horizon(horizon);
  double prev = 0.0;
  for (const auto& e : events) {
    if (!(e.time > prev) || !(e.time < horizon))
      fail(errc::invalid_horizon, "event times must be strictly increasing inside (0, horizon)");
    prev = e.time;
  }

  PathExtrema out;
  out.horizon = horizon;
  double t = 0.0, y = 0.0;
  // candidates in time order: t=0, then for each jump the pre-jump segment
  // endpoint and the post-jump value, then the terminal segment endpoint.
  // Every local maximum of a piecewise-linear path is one of these, and the
  // >= comparisons keep the LAST attainment.
  auto consider = [&out](double when, double value) {
    if (value >= out.max_value) {
      out.max_value = value;
      out.argmax_time = when;
    }
  };
  for (const auto& e : events) {
    y += slope * (e.time - t);
    t = e.time;
    consider(t, y);
    y += e.size;
    consider(t, y);
  }
  y += slope * (horizon - t);
  consider(horizon, y);
  out.terminal_value = y;
  return out;
}

PathExtrema sample_extrema_piecewise_linear(const LevyModel& model, double horizon,
                                            RngStream& rng) {
  validate(model);
  if (model.kind == ModelKind::BrownianDrift && model.volatility != 0.0)
    fail(errc::invalid_model, "piecewise-linear sampler needs zero volatility");
  require_horizon(horizon);

  std::vector<JumpEvent> events;
  if (model.kind != ModelKind::BrownianDrift && model.jump_rate > 0.0) {
    const double sign = cp_sign(model);
    double t = rng.exponential(model.jump_rate);
    while (t < horizon) {
      events.push_back({t, sign * erlang_draw(model, rng)});
      t += rng.exponential(model.jump_rate);
    }
  }
  const double slope = model.kind == ModelKind::BrownianDrift ? model.drift : cp_slope(model);
  return extrema_from_events(slope, events, horizon);
}

PathExtrema sample_extrema_brownian(const LevyModel& model, double horizon, unsigned cells,
                                    RngStream& rng) {
  validate(model);
  if (model.kind != ModelKind::BrownianDrift)
    fail(errc::invalid_model, "bridge sampler handles BrownianDrift only");
  require_horizon(horizon);
  if (cells < 1) fail(errc::degenerate_cells, "cells must be >= 1");

  const double dt = horizon / double(cells);
  const double vol_step = model.volatility * std::sqrt(dt);
  const double var_step = model.volatility * model.volatility * dt;

  PathExtrema out;
  out.horizon = horizon;
  double y = 0.0;
  for (unsigned i = 0; i < cells; ++i) {
    const double a = y;
    const double b = y + model.drift * dt + vol_step * rng.normal();
    // bridge maximum on the cell: P(M >= m | a,b) = exp(-2(m-a)(m-b)/var_step)
    // for m >= max(a,b); inversion gives the largest quadratic root
    const double ab = a - b;
    const double ell = var_step > 0.0 ? -0.5 * var_step * std::log(rng.uniform()) : 0.0;
    const double m = 0.5 * ((a + b) + std::sqrt(ab * ab + 4.0 * ell));
    if (m >= out.max_value) {
      out.max_value = m;
      out.argmax_time = (double(i) + 0.5) * dt;
    }
    y = b;
  }
  out.terminal_value = y;
  if (out.max_value == 0.0) out.argmax_time = 0.0;
  return out;
}

double sample_terminal(const LevyModel& model, double horizon, RngStream& rng) {
  validate(model);
  require_horizon(horizon);
  if (model.kind == ModelKind::BrownianDrift)
    return model.drift * horizon + model.volatility * std::sqrt(horizon) * rng.normal();
  double y = cp_slope(model) * horizon;
  if (model.jump_rate > 0.0) {
    const double sign = cp_sign(model);
    double t = rng.exponential(model.jump_rate);
    while (t < horizon) {
      y += sign * erlang_draw(model, rng);
      t += rng.exponential(model.jump_rate);
    }
  }
  return y;
}

PathExtrema sample_continuous_pair(const LevyModel& model, double beta, RngStream& rng) {
  if (!(beta > 0.0)) fail(errc::invalid_rate, "beta must be > 0");
  const double horizon = rng.exponential(beta);
  if (model.kind == ModelKind::BrownianDrift)
    return sample_extrema_brownian(model, horizon, kDefaultBridgeCells, rng);
  return sample_extrema_piecewise_linear(model, horizon, rng);
}

}  // namespace levymax
