#include "levymax/inspection.hpp"

#include <algorithm>
#include <cmath>

#include "levymax/path_engine.hpp"

namespace levymax {

void validate(const InspectionParams& p) {
  if (!(p.beta > 0.0) || !std::isfinite(p.beta))
    fail(errc::invalid_rate, "inspection: beta must be positive and finite");
  if (!(p.omega > 0.0) || !std::isfinite(p.omega))
    fail(errc::invalid_rate, "inspection: omega must be positive and finite");
}

std::vector<double> inspection_count_pmf(const InspectionParams& p, std::size_t count) {
  validate(p);
  std::vector<double> pmf(count);
  const double q = p.q();
  double mass = q;
  for (std::size_t n = 0; n < count; ++n) {
    pmf[n] = mass;
    mass *= 1.0 - q;
  }
  return pmf;
}

std::int64_t sample_inspection_count(const InspectionParams& p, RngStream& rng) {
  validate(p);
  return rng.geometric_failures(p.q());
}

namespace {

void finish_bookkeeping(InspectedWalk& w) {
  w.count = std::int64_t(w.epochs.size());
  w.max_value = 0.0;
  w.argmax_index = 0;
  for (std::size_t k = 1; k < w.values.size(); ++k) {
    if (w.values[k] >= w.max_value) {
      w.max_value = w.values[k];
      w.argmax_index = std::int64_t(k);
    }
  }
  w.argmax_epoch = w.argmax_index == 0 ? 0.0 : w.epochs[std::size_t(w.argmax_index) - 1];
}

}  // namespace

InspectedWalk sample_inspected_walk(const LevyModel& model, const InspectionParams& p,
                                    RngStream& rng) {
  validate(p);
  validate(model);
  InspectedWalk w;
  w.values.push_back(0.0);
  double t = 0.0;
  for (;;) {
    const double tau = rng.exponential(p.beta + p.omega);
    if (!rng.bernoulli(p.omega / (p.beta + p.omega))) break;  // the kill wins
    t += tau;
    w.epochs.push_back(t);
    w.values.push_back(w.values.back() + sample_terminal(model, tau, rng));
  }
  finish_bookkeeping(w);
  return w;
}

InspectedWalk sample_inspected_walk_direct(const LevyModel& model, const InspectionParams& p,
                                           RngStream& rng) {
  validate(p);
  validate(model);
  const double kill = rng.exponential(p.beta);
  InspectedWalk w;
  w.values.push_back(0.0);
  double t = rng.exponential(p.omega);
  double prev = 0.0;
  while (t < kill) {
    w.epochs.push_back(t);
    w.values.push_back(w.values.back() + sample_terminal(model, t - prev, rng));
    prev = t;
    t += rng.exponential(p.omega);
  }
  finish_bookkeeping(w);
  return w;
}

TestReport alternative_construction_check(const LevyModel& model, const InspectionParams& p,
                                          std::int64_t n, RngStream& rng) {
  if (n < 10000) fail(errc::invalid_config, "alternative_construction_check: n must be >= 1e4");
  std::vector<double> max_a(static_cast<std::size_t>(n));
  std::vector<double> max_b(static_cast<std::size_t>(n));
  std::vector<std::int64_t> cnt_a, cnt_b;
  auto tally = [](std::vector<std::int64_t>& hist, std::int64_t c) {
    if (std::size_t(c) >= hist.size()) hist.resize(std::size_t(c) + 1, 0);
    ++hist[std::size_t(c)];
  };
  for (std::int64_t i = 0; i < n; ++i) {
    const auto wa = sample_inspected_walk(model, p, rng);
    max_a[std::size_t(i)] = wa.max_value;
    tally(cnt_a, wa.count);
    const auto wb = sample_inspected_walk_direct(model, p, rng);
    max_b[std::size_t(i)] = wb.max_value;
    tally(cnt_b, wb.count);
  }
  const auto ks = ks_two_sample(sample_1d(std::move(max_a)), sample_1d(std::move(max_b)), 0.01,
                                rng.seed(), "alt_construction_max");
  const std::size_t cells = std::max(cnt_a.size(), cnt_b.size());
  cnt_a.resize(cells, 0);
  cnt_b.resize(cells, 0);
  double chi_stat = 0.0, chi_p = 1.0;
  if (cells > 1) {  // a single shared cell is exact agreement, nothing to test
    const auto chi =
        chi_square_two_sample(cnt_a, cnt_b, 5.0, 0.01, rng.seed(), "alt_construction_count");
    chi_stat = chi.statistic;
    chi_p = chi.p_value;
  }
  const bool ks_smaller = ks.p_value <= chi_p;
  return make_report("alt_construction", ks_smaller ? ks.statistic : chi_stat,
                     std::min(ks.p_value, chi_p), 0.01, n, n, rng.seed());
}

std::pair<double, double> duality_pair(const InspectedWalk& walk) {
  const double terminal = walk.values.back();
  const double last_epoch = walk.count == 0 ? 0.0 : walk.epochs.back();
  return {terminal - walk.max_value, last_epoch - walk.argmax_epoch};
}

double running_minimum(const InspectedWalk& walk) {
  return *std::min_element(walk.values.begin(), walk.values.end());
}

}  // namespace levymax
