#pragma once
// Named verification scenarios wiring the samplers, recursions, transforms
// and statistical tests into reproducible experiments. Every scenario is
// deterministic given (scenario, seed): sampling loops assign one RngStream
// per sample index, so results are bitwise independent of the thread count.
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "levymax/inspection.hpp"
#include "levymax/levy_model.hpp"
#include "levymax/stats.hpp"
#include "levymax/transforms.hpp"

namespace levymax {

struct Scenario {
  std::string name;             // unique within a run
  std::string check;            // dispatch key, see run_scenario
  std::string expect = "pass";  // "pass", or "reject" for negative controls
  LevyModel model;
  InspectionParams params{1.0, 1.0};
  std::int64_t sample_size = 100000;
  std::uint64_t seed = 42;
  std::map<std::string, double> extras;  // check-specific knobs (factors,
                                         // truncation, permutations, ...)
};

double extra_or(const Scenario& scn, const std::string& key, double fallback);

// side used for transform formulas: compound models by their jump direction,
// BrownianDrift defaults to spectrally negative unless extras["side"] == 0
Side scenario_side(const Scenario& scn);

// law of the continuous running maximum vs the sum of an independent
// thinned-horizon maximum and an inspected-walk maximum (KS)
TestReport verify_max_decomposition(const Scenario& scn);

// joint law of (max, argmax) vs the componentwise sum of the two independent
// pairs (energy permutation test); exact-argmax (piecewise-linear) models only
TestReport verify_pair_decomposition(const Scenario& scn);

// telescoped decomposition along kill rates beta*c^n: the truncated sum of
// stage maxima reproduces the continuous maximum (KS); the choice of c is
// immaterial (see verify_cascade_invariance)
TestReport verify_cascade(const Scenario& scn);
TestReport verify_cascade_invariance(const Scenario& scn);

// geometric number of geometric summands collapses to a single geometric law
TestReport verify_geometric_sum(const Scenario& scn);

// chi-square of simulated inspection counts against the geometric pmf
TestReport verify_count_pmf(const Scenario& scn);

// spectrally negative inspected maximum: atom at zero with the inverse-ratio
// probability, exponential(Psi(beta)) tail on the positive part
TestReport verify_sn_marginal(const Scenario& scn);

struct MomentCheck {
  MomentReport analytic;
  MomentReport empirical;
  // per-field standard errors and z-scores, field order: mean_max,
  // mean_argmax, cross_moment, covariance, var_max, var_argmax
  std::array<double, 6> se{};
  std::array<double, 6> z{};
};
MomentCheck moment_check(const Scenario& scn);
// worst |z| across the six moments against a 4-standard-error band
TestReport verify_moments(const Scenario& scn);

// ruin declared when an excursion below zero outlives a fresh exp(omega)
// clock vs ruin detected at rate-omega inspection epochs: equal occurrence
// frequency and equal hitting-time law
TestReport verify_parisian(const Scenario& scn);

// long-run law of the Bernoulli-killed recursion vs the geometric-maximum
// sampler (KS)
TestReport verify_fixed_point(const Scenario& scn);

// null rejection rate of each statistical test at level 0.05 over repeated
// replications must sit inside [0.01, 0.12]
TestReport verify_calibration_ks(const Scenario& scn);
TestReport verify_calibration_chi(const Scenario& scn);
TestReport verify_calibration_energy(const Scenario& scn);
TestReport verify_calibration_dcov(const Scenario& scn);

struct ScenarioResult {
  std::string name;
  std::string check;
  std::string expect;
  TestReport report;
  bool ok = false;  // report passed if expected to pass, failed if "reject"
};

// true when the name is a valid Scenario::check dispatch key
bool known_check(const std::string& check);

ScenarioResult run_scenario(const Scenario& scn);
// sorts by name (deterministic merge order), rejects duplicate names
std::vector<ScenarioResult> run_suite(std::vector<Scenario> suite);

std::vector<Scenario> acceptance_suite(std::uint64_t seed);
std::vector<Scenario> smoke_suite(std::uint64_t seed);
std::vector<Scenario> calibration_suite(std::uint64_t seed);

}  // namespace levymax
