#pragma once
// Path-level samplers for the running maximum of Y over a horizon, the LAST
// time that maximum is attained, and the terminal value.
//
// Two exact engines:
//   - compound-Poisson-plus-drift paths are piecewise linear, so maximum and
//     argmax come out exact from an event walk;
//   - Brownian paths get an exactly distributed maximum via the within-cell
//     bridge-maximum inversion; the argmax is approximated by the winning
//     cell's midpoint (bias <= cell width / 2).
#include <vector>

#include "levymax/levy_model.hpp"
#include "levymax/rng.hpp"

namespace levymax {

struct PathExtrema {
  double max_value = 0.0;      // sup of Y over [0, horizon]; >= 0 since Y(0) = 0
  double argmax_time = 0.0;    // LAST time the sup is attained
  double terminal_value = 0.0; // Y(horizon)
  double horizon = 0.0;
};

struct JumpEvent {
  double time;  // strictly increasing, inside (0, horizon)
  double size;  // signed jump
};

inline constexpr unsigned kDefaultBridgeCells = 256;

double sample_exponential(double rate, RngStream& rng);

// Pure core for piecewise-linear paths Y(t) = slope*t + sum of jumps up to t.
// Ties in the running maximum resolve to the LATEST attainment. Exposed so
// tests can replay a frozen event sequence against an independent scan.
PathExtrema extrema_from_events(double slope, const std::vector<JumpEvent>& events,
                                double horizon);

// Exact extrema for zero-volatility models (jump epochs drawn inside).
PathExtrema sample_extrema_piecewise_linear(const LevyModel& model, double horizon,
                                            RngStream& rng);

// BrownianDrift only. Grid of `cells` cells; the maximum is drawn from the
// exact bridge law within each cell, so its distribution is free of
// discretization bias at any cell count; argmax_time is the midpoint of the
// winning cell.
PathExtrema sample_extrema_brownian(const LevyModel& model, double horizon,
                                    unsigned cells, RngStream& rng);

// Y(horizon) alone, exact for every supported model.
double sample_terminal(const LevyModel& model, double horizon, RngStream& rng);

// Draws T ~ exp(beta) and returns the exact extrema over [0, T].
PathExtrema sample_continuous_pair(const LevyModel& model, double beta, RngStream& rng);

}  // namespace levymax
