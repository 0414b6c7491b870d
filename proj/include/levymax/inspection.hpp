#pragma once
// Poisson-inspected random walk up to an independent exponential kill time:
// the walk S_0 = 0, S_n = Y(U_n) observed at inspection epochs U_1 < U_2 < ...
// of a rate-omega Poisson process, stopped at an exp(beta) kill. The number
// of completed inspections N is geometric with success probability
// q = beta/(beta+omega).
#include <cstdint>
#include <utility>
#include <vector>

#include "levymax/levy_model.hpp"
#include "levymax/rng.hpp"
#include "levymax/stats.hpp"

namespace levymax {

struct InspectionParams {
  double beta = 1.0;   // kill rate
  double omega = 1.0;  // inspection rate
  double q() const { return beta / (beta + omega); }
};

void validate(const InspectionParams& p);

struct InspectedWalk {
  std::vector<double> epochs;  // U_1..U_N, strictly increasing
  std::vector<double> values;  // S_0..S_N (so size == count + 1)
  std::int64_t count = 0;      // N
  double max_value = 0.0;      // running maximum over S_0..S_N (>= 0)
  std::int64_t argmax_index = 0;  // LARGEST k with S_k == max_value
  double argmax_epoch = 0.0;      // U_{argmax_index}, with U_0 := 0
};

// P(N = n) = (1-q)^n q for n = 0..count-1
std::vector<double> inspection_count_pmf(const InspectionParams& p, std::size_t count);

std::int64_t sample_inspection_count(const InspectionParams& p, RngStream& rng);

// competing-risks construction: inter-event times exp(beta+omega), each event
// independently an inspection (prob omega/(beta+omega)) or the kill; the walk
// advances by an exact Y(tau) increment on every inspection
InspectedWalk sample_inspected_walk(const LevyModel& model, const InspectionParams& p,
                                    RngStream& rng);

// direct construction kept as a cross-check oracle: draw the kill time
// T ~ exp(beta) first, then lay down the rate-omega inspection epochs on [0,T]
InspectedWalk sample_inspected_walk_direct(const LevyModel& model, const InspectionParams& p,
                                           RngStream& rng);

// n walks from each construction; two-sample KS on max_value and chi-square
// homogeneity on count. Reports the smaller p (passes iff both exceed the
// threshold 0.01).
TestReport alternative_construction_check(const LevyModel& model, const InspectionParams& p,
                                          std::int64_t n, RngStream& rng);

// (S_N - max, U_N - argmax_epoch): the post-maximum remainder of the walk;
// first coordinate <= 0, second >= 0, both 0 on a count-0 walk
std::pair<double, double> duality_pair(const InspectedWalk& walk);

// min over S_0..S_N (<= 0); the duality partner of max_value
double running_minimum(const InspectedWalk& walk);

}  // namespace levymax
