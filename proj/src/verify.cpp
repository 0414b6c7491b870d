#include "levymax/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "levymax/lindley.hpp"
#include "levymax/parallel.hpp"
#include "levymax/path_engine.hpp"

namespace levymax {
namespace {

std::uint64_t scn_stream(const Scenario& scn, const std::string& what) {
  return stream_base(scn.name + ":" + what);
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t salt) {
  return mix64(seed ^ mix64(salt + 1));
}

bool flag(const Scenario& scn, const std::string& key) {
  return extra_or(scn, key, 0.0) > 0.0;
}

// prefer a failing component; otherwise the one with the thinner pass margin
TestReport worst_of(const TestReport& a, const TestReport& b) {
  if (a.pass != b.pass) return a.pass ? b : a;
  return a.p_value / a.threshold <= b.p_value / b.threshold ? a : b;
}

double erlang_jump(const LevyModel& m, RngStream& rng) {
  double s = 0.0;
  for (int j = 0; j < m.jump_shape; ++j) s += rng.exponential(m.jump_mu);
  return s;
}

}  // namespace

double extra_or(const Scenario& scn, const std::string& key, double fallback) {
  const auto it = scn.extras.find(key);
  return it == scn.extras.end() ? fallback : it->second;
}

Side scenario_side(const Scenario& scn) {
  switch (scn.model.kind) {
    case ModelKind::CompoundPoissonDriftUp:
      return Side::SpectrallyPositive;
    case ModelKind::CompoundPoissonDriftDown:
      return Side::SpectrallyNegative;
    default:
      return extra_or(scn, "side", 1.0) == 0.0 ? Side::SpectrallyPositive
                                               : Side::SpectrallyNegative;
  }
}

TestReport verify_max_decomposition(const Scenario& scn) {
  const auto& m = scn.model;
  const double beta = scn.params.beta;
  // negative control: reuse the un-thinned kill rate on the right-hand side
  const double tail_rate = flag(scn, "broken") ? beta : beta + scn.params.omega;
  const std::int64_t n = scn.sample_size;
  std::vector<double> lhs(static_cast<std::size_t>(n)), rhs(static_cast<std::size_t>(n));
  const std::uint64_t sl = scn_stream(scn, "lhs"), sc = scn_stream(scn, "rhs_cont"),
                      sw = scn_stream(scn, "rhs_walk");
  par::for_index(n, [&](std::int64_t i) {
    RngStream g(scn.seed, sl | std::uint64_t(i));
    lhs[std::size_t(i)] = sample_continuous_pair(m, beta, g).max_value;
    RngStream h(scn.seed, sc | std::uint64_t(i));
    const double cont = sample_continuous_pair(m, tail_rate, h).max_value;
    RngStream k(scn.seed, sw | std::uint64_t(i));
    rhs[std::size_t(i)] = cont + sample_inspected_walk(m, scn.params, k).max_value;
  });
  return ks_two_sample(sample_1d(std::move(lhs)), sample_1d(std::move(rhs)), 0.01, scn.seed,
                       scn.name);
}

TestReport verify_pair_decomposition(const Scenario& scn) {
  const auto& m = scn.model;
  if (m.kind == ModelKind::BrownianDrift)
    fail(errc::invalid_model,
         "pair decomposition checks need a piecewise-linear model (exact argmax)");
  const double beta = scn.params.beta;
  const std::int64_t n = scn.sample_size;
  const int perms = int(extra_or(scn, "permutations", 200.0));
  std::vector<std::array<double, 2>> lhs(static_cast<std::size_t>(n)), rhs(static_cast<std::size_t>(n));
  const std::uint64_t sl = scn_stream(scn, "lhs"), sc = scn_stream(scn, "rhs_cont"),
                      sw = scn_stream(scn, "rhs_walk");
  par::for_index(n, [&](std::int64_t i) {
    RngStream g(scn.seed, sl | std::uint64_t(i));
    const auto a = sample_continuous_pair(m, beta, g);
    lhs[std::size_t(i)] = {a.max_value, a.argmax_time};
    RngStream h(scn.seed, sc | std::uint64_t(i));
    const auto b = sample_continuous_pair(m, beta + scn.params.omega, h);
    RngStream k(scn.seed, sw | std::uint64_t(i));
    const auto w = sample_inspected_walk(m, scn.params, k);
    rhs[std::size_t(i)] = {b.max_value + w.max_value, b.argmax_time + w.argmax_epoch};
  });
  if (flag(scn, "swap_g")) {
    // negative control: re-pair the coordinates cyclically; both marginals
    // stay exact, the coupling is destroyed
    std::vector<double> g2(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) g2[std::size_t(i)] = rhs[std::size_t(i)][1];
    for (std::int64_t i = 0; i < n; ++i)
      rhs[std::size_t(i)][1] = g2[std::size_t((i + 1) % n)];
  }
  return energy_permutation_2d(sample_2d(std::move(lhs)), sample_2d(std::move(rhs)), perms,
                               scn.seed, 0.01, scn.name);
}

namespace {

std::vector<double> cascade_samples(const Scenario& scn, double factor, int truncation,
                                    const std::string& label) {
  const auto& m = scn.model;
  const double beta = scn.params.beta;
  const Side side = scenario_side(scn);
  if (!(factor > 1.0)) fail(errc::invalid_config, "cascade: factor must be > 1");
  if (truncation < 1) fail(errc::invalid_config, "cascade: truncation must be >= 1");
  const double residual =
      mean_max_continuous(m, side, beta * std::pow(factor, double(truncation)));
  const double total = mean_max_continuous(m, side, beta);
  if (!(residual <= 1e-3 * total))
    fail(errc::truncation_too_coarse, "cascade: dropped stage mean " + std::to_string(residual) +
                                          " exceeds 1e-3 of total " + std::to_string(total));
  // negative control: wrong success probability for the stage counts
  const double q = flag(scn, "broken") ? 1.0 / (factor * factor) : 1.0 / factor;
  const std::int64_t n = scn.sample_size;
  std::vector<double> out(static_cast<std::size_t>(n));
  const std::uint64_t base = scn_stream(scn, label);
  par::for_index(n, [&](std::int64_t i) {
    RngStream g(scn.seed, base | std::uint64_t(i));
    double sum = 0.0;
    double rate = beta;
    for (int stage = 1; stage <= truncation; ++stage) {
      rate *= factor;
      const std::int64_t count = g.geometric_failures(q);
      double s = 0.0, best = 0.0;
      for (std::int64_t k = 0; k < count; ++k) {
        s += sample_terminal(m, g.exponential(rate), g);
        best = std::max(best, s);
      }
      sum += best;
    }
    out[std::size_t(i)] = sum;
  });
  return out;
}

}  // namespace

TestReport verify_cascade(const Scenario& scn) {
  const double factor = extra_or(scn, "factor", 2.0);
  const int truncation = int(extra_or(scn, "truncation", 20.0));
  auto cascade = cascade_samples(scn, factor, truncation, "cascade");
  const std::int64_t n = scn.sample_size;
  std::vector<double> direct(static_cast<std::size_t>(n));
  const std::uint64_t base = scn_stream(scn, "direct");
  par::for_index(n, [&](std::int64_t i) {
    RngStream g(scn.seed, base | std::uint64_t(i));
    direct[std::size_t(i)] = sample_continuous_pair(scn.model, scn.params.beta, g).max_value;
  });
  return ks_two_sample(sample_1d(std::move(direct)), sample_1d(std::move(cascade)), 0.01,
                       scn.seed, scn.name);
}

TestReport verify_cascade_invariance(const Scenario& scn) {
  auto a = cascade_samples(scn, extra_or(scn, "factor", 2.0),
                           int(extra_or(scn, "truncation", 20.0)), "cascade_a");
  auto b = cascade_samples(scn, extra_or(scn, "factor2", 4.0),
                           int(extra_or(scn, "truncation2", 10.0)), "cascade_b");
  return ks_two_sample(sample_1d(std::move(a)), sample_1d(std::move(b)), 0.01, scn.seed,
                       scn.name);
}

TestReport verify_geometric_sum(const Scenario& scn) {
  const double p = extra_or(scn, "p", 0.5);
  const double p_prime = extra_or(scn, "p_prime", 0.5);
  if (!(p > 0.0 && p <= 1.0 && p_prime > 0.0 && p_prime <= 1.0))
    fail(errc::invalid_probability, "geometric_sum: p, p_prime must lie in (0,1]");
  const double q_null = flag(scn, "wrong_null") ? p : p * p_prime;
  const std::int64_t n = scn.sample_size;
  const std::size_t cells = 60;
  std::vector<std::int64_t> observed(cells + 1, 0);
  RngStream g(scn.seed, scn_stream(scn, "sums"));
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t terms = g.geometric_failures(p_prime) + 1;
    std::int64_t sum = 0;
    for (std::int64_t t = 0; t < terms; ++t) sum += g.geometric_failures(p) + 1;
    ++observed[std::min(std::size_t(sum - 1), cells)];
  }
  std::vector<double> pmf(cells);
  double mass = q_null;
  for (std::size_t j = 0; j < cells; ++j) {
    pmf[j] = mass;
    mass *= 1.0 - q_null;
  }
  const double threshold = extra_or(scn, "threshold", 0.01);
  return chi_square_pmf(observed, pmf, 5, threshold, scn.seed, scn.name);
}

TestReport verify_count_pmf(const Scenario& scn) {
  const std::size_t cells = 30;
  std::vector<std::int64_t> observed(cells + 1, 0);
  RngStream g(scn.seed, scn_stream(scn, "counts"));
  for (std::int64_t i = 0; i < scn.sample_size; ++i)
    ++observed[std::min(std::size_t(sample_inspection_count(scn.params, g)), cells)];
  return chi_square_pmf(observed, inspection_count_pmf(scn.params, cells), 5, 0.01, scn.seed,
                        scn.name);
}

TestReport verify_sn_marginal(const Scenario& scn) {
  const auto& m = scn.model;
  if (!supports(m, Side::SpectrallyNegative))
    fail(errc::unsupported_sidedness, "sn_marginal needs a spectrally negative model");
  const std::int64_t n = scn.sample_size;
  std::vector<double> maxima(static_cast<std::size_t>(n));
  const std::uint64_t base = scn_stream(scn, "walks");
  par::for_index(n, [&](std::int64_t i) {
    RngStream g(scn.seed, base | std::uint64_t(i));
    maxima[std::size_t(i)] = sample_inspected_walk(m, scn.params, g).max_value;
  });
  std::int64_t zeros = 0;
  std::vector<double> positive;
  for (double v : maxima) {
    if (v == 0.0)
      ++zeros;
    else
      positive.push_back(v);
  }
  const double atom_ref = atom_at_zero_sn(m, scn.params.beta, scn.params.omega);
  const double se = std::sqrt(atom_ref * (1.0 - atom_ref) / double(n));
  const auto atom_rep = z_band_report(scn.name + ":atom", double(zeros) / double(n), atom_ref,
                                      se, 3.0, n, scn.seed);
  // negative control: deliberately mis-scaled tail rate
  const double scale = flag(scn, "broken") ? 1.15 : 1.0;
  const double rate = scale * right_inverse(m, Side::SpectrallyNegative, scn.params.beta);
  auto cdf = [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); };
  const auto tail_rep =
      ks_one_sample(sample_1d(std::move(positive)), cdf, 0.01, scn.seed, scn.name + ":tail");
  return worst_of(atom_rep, tail_rep);
}

MomentCheck moment_check(const Scenario& scn) {
  const auto& m = scn.model;
  const Side side = scenario_side(scn);
  MomentCheck out;
  out.analytic = moments_inspected(m, side, scn.params.beta, scn.params.omega);
  if (flag(scn, "broken")) out.analytic.mean_max *= 1.05;  // negative control

  const std::int64_t n = scn.sample_size;
  std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
  const std::uint64_t base = scn_stream(scn, "walks");
  par::for_index(n, [&](std::int64_t i) {
    RngStream g(scn.seed, base | std::uint64_t(i));
    const auto w = sample_inspected_walk(m, scn.params, g);
    xs[std::size_t(i)] = w.max_value;
    ys[std::size_t(i)] = w.argmax_epoch;
  });

  const double dn = double(n);
  double mx = 0.0, my = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    mx += xs[std::size_t(i)];
    my += ys[std::size_t(i)];
  }
  mx /= dn;
  my /= dn;

  // per-sample statistics whose means estimate the six reported moments
  std::array<double, 6> mean{}, msq{};
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = xs[std::size_t(i)], y = ys[std::size_t(i)];
    const std::array<double, 6> s = {x,
                                     y,
                                     x * y,
                                     (x - mx) * (y - my),
                                     (x - mx) * (x - mx),
                                     (y - my) * (y - my)};
    for (std::size_t k = 0; k < 6; ++k) {
      mean[k] += s[k];
      msq[k] += s[k] * s[k];
    }
  }
  for (std::size_t k = 0; k < 6; ++k) {
    mean[k] /= dn;
    msq[k] /= dn;
    out.se[k] = std::sqrt(std::max(0.0, msq[k] - mean[k] * mean[k]) / dn);
  }
  out.empirical = {mean[0], mean[1], mean[2], mean[3], mean[4], mean[5]};
  const std::array<double, 6> ref = {out.analytic.mean_max,   out.analytic.mean_argmax,
                                     out.analytic.cross_moment, out.analytic.covariance,
                                     out.analytic.var_max,     out.analytic.var_argmax};
  for (std::size_t k = 0; k < 6; ++k)
    out.z[k] = out.se[k] > 0.0 ? (mean[k] - ref[k]) / out.se[k]
                               : (mean[k] == ref[k] ? 0.0 : 1e300);
  return out;
}

TestReport verify_moments(const Scenario& scn) {
  const auto chk = moment_check(scn);
  static const char* const kFields[6] = {"mean_max", "mean_argmax", "cross_moment",
                                         "covariance", "var_max", "var_argmax"};
  std::size_t worst = 0;
  for (std::size_t k = 1; k < 6; ++k)
    if (std::abs(chk.z[k]) > std::abs(chk.z[worst])) worst = k;
  const std::array<double, 6> emp = {chk.empirical.mean_max,   chk.empirical.mean_argmax,
                                     chk.empirical.cross_moment, chk.empirical.covariance,
                                     chk.empirical.var_max,     chk.empirical.var_argmax};
  const std::array<double, 6> ref = {chk.analytic.mean_max,   chk.analytic.mean_argmax,
                                     chk.analytic.cross_moment, chk.analytic.covariance,
                                     chk.analytic.var_max,     chk.analytic.var_argmax};
  return z_band_report(scn.name + ":" + kFields[worst], emp[worst], ref[worst], chk.se[worst],
                       4.0, scn.sample_size, scn.seed);
}

TestReport verify_parisian(const Scenario& scn) {
  const auto& m = scn.model;
  if (m.kind != ModelKind::CompoundPoissonDriftUp)
    fail(errc::invalid_model, "parisian check needs the claim-surplus compound model");
  if (!(mean_rate(m) < 0.0))
    fail(errc::invalid_model, "parisian check needs positive safety loading");
  const double omega = scn.params.omega;
  const double omega_b = flag(scn, "broken") ? 2.0 * omega : omega;
  const double beta_proxy = extra_or(scn, "beta_proxy", 1e-3);
  // once the surplus -Y reaches this level, later ruin has probability
  // exp(-R * level) (Cramer bound); at the default 40 and R = 1/2 the skipped
  // mass is ~2e-9, far below the statistical resolution
  const double escape = extra_or(scn, "escape_level", 40.0);
  const std::int64_t n = scn.sample_size;
  const double c = m.drift, lambda = m.jump_rate;

  std::vector<double> time_a(std::size_t(n), -1.0), time_b(std::size_t(n), -1.0);
  const std::uint64_t sa = scn_stream(scn, "excursions"), sb = scn_stream(scn, "inspections");
  par::for_index(n, [&](std::int64_t i) {
    {  // sampler A: fresh exp(omega) clock per excursion above zero
      RngStream g(scn.seed, sa | std::uint64_t(i));
      const double horizon = g.exponential(beta_proxy);
      double t = 0.0, y = 0.0, remaining = 0.0;
      bool in_excursion = false;
      for (;;) {
        const double dt = g.exponential(lambda);
        if (in_excursion) {
          const double to_zero = y / c;
          if (remaining <= dt && remaining <= to_zero) {
            const double ring = t + remaining;
            if (ring <= horizon) time_a[std::size_t(i)] = ring;
            break;
          }
          if (to_zero <= dt)
            in_excursion = false;
          else
            remaining -= dt;
        }
        if (t + dt >= horizon) break;
        const double y_pre = y - c * dt;
        t += dt;
        y = y_pre + erlang_jump(m, g);
        if (!in_excursion && y > 0.0 && y_pre <= 0.0) {
          in_excursion = true;
          remaining = g.exponential(omega);
        }
        if (!in_excursion && y <= -escape) break;
      }
    }
    {  // sampler B: first rate-omega inspection that sees the process above 0
      RngStream h(scn.seed, sb | std::uint64_t(i));
      const double horizon = h.exponential(beta_proxy);
      double t = 0.0, y = 0.0;
      for (;;) {
        const double gap = h.exponential(omega_b);
        if (t + gap >= horizon) break;
        t += gap;
        y += sample_terminal(m, gap, h);
        if (y > 0.0) {
          time_b[std::size_t(i)] = t;
          break;
        }
        if (y <= -escape) break;
      }
    }
  });

  std::vector<double> hit_a, hit_b;
  for (double t : time_a)
    if (t >= 0.0) hit_a.push_back(t);
  for (double t : time_b)
    if (t >= 0.0) hit_b.push_back(t);
  const double fa = double(hit_a.size()) / double(n), fb = double(hit_b.size()) / double(n);
  const double se = std::sqrt((fa * (1.0 - fa) + fb * (1.0 - fb)) / double(n));
  const auto freq_rep = z_band_report(scn.name + ":freq", fa, fb, se, 3.0, n, scn.seed);
  if (hit_a.size() < 10 || hit_b.size() < 10) return freq_rep;  // nothing to KS-compare
  const auto ks_rep = ks_two_sample(sample_1d(std::move(hit_a)), sample_1d(std::move(hit_b)),
                                    0.01, scn.seed, scn.name + ":times");
  return worst_of(freq_rep, ks_rep);
}

TestReport verify_fixed_point(const Scenario& scn) {
  const auto& m = scn.model;
  const double q = scn.params.q();
  const double total_rate = scn.params.beta + scn.params.omega;
  const double q_chain = flag(scn, "broken") ? std::min(0.95, 1.5 * q) : q;
  const std::int64_t n = scn.sample_size;
  const int burn = int(std::ceil(10.0 / q)) + 1;
  std::vector<double> direct(static_cast<std::size_t>(n)), chain(static_cast<std::size_t>(n));
  const std::uint64_t sd = scn_stream(scn, "direct"), sc = scn_stream(scn, "chain");
  auto increment = [&](RngStream& g) { return sample_terminal(m, g.exponential(total_rate), g); };
  par::for_index(n, [&](std::int64_t i) {
    RngStream g(scn.seed, sd | std::uint64_t(i));
    direct[std::size_t(i)] = fixed_point_sample(q, increment, g);
    RngStream h(scn.seed, sc | std::uint64_t(i));
    double w = 0.0;
    for (int t = 0; t < burn; ++t) {
      const double x = increment(h);
      w = h.bernoulli(1.0 - q_chain) ? std::max(w + x, 0.0) : 0.0;
    }
    chain[std::size_t(i)] = w;
  });
  return ks_two_sample(sample_1d(std::move(direct)), sample_1d(std::move(chain)), 0.01, scn.seed,
                       scn.name);
}

namespace {

TestReport calibration_report(const Scenario& scn,
                              const std::function<bool(std::int64_t)>& rejects) {
  const std::int64_t reps = std::int64_t(extra_or(scn, "replications", 200.0));
  std::vector<std::uint8_t> rejected(std::size_t(reps), 0);
  par::for_index(reps, [&](std::int64_t r) { rejected[std::size_t(r)] = rejects(r) ? 1 : 0; });
  std::int64_t count = 0;
  for (auto f : rejected) count += f;
  const double rate = double(count) / double(reps);
  const bool in_band = rate >= 0.01 && rate <= 0.12;
  return make_report(scn.name, rate, in_band ? 1.0 : 0.0, 0.5, reps, 0, scn.seed);
}

}  // namespace

TestReport verify_calibration_ks(const Scenario& scn) {
  const std::int64_t n = std::int64_t(extra_or(scn, "n", 2000.0));
  const std::uint64_t sa = scn_stream(scn, "a"), sb = scn_stream(scn, "b");
  return calibration_report(scn, [&](std::int64_t r) {
    RngStream g(scn.seed, sa | std::uint64_t(r));
    RngStream h(scn.seed, sb | std::uint64_t(r));
    std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (auto& v : a) v = g.exponential(1.0);
    for (auto& v : b) v = h.exponential(1.0);
    return !ks_two_sample(sample_1d(std::move(a)), sample_1d(std::move(b)), 0.05).pass;
  });
}

TestReport verify_calibration_chi(const Scenario& scn) {
  const std::int64_t n = std::int64_t(extra_or(scn, "n", 5000.0));
  const std::uint64_t base = scn_stream(scn, "draws");
  const double q = 0.3;
  const std::size_t cells = 25;
  std::vector<double> pmf(cells);
  double mass = q;
  for (auto& p : pmf) {
    p = mass;
    mass *= 1.0 - q;
  }
  return calibration_report(scn, [&](std::int64_t r) {
    RngStream g(scn.seed, base | std::uint64_t(r));
    std::vector<std::int64_t> observed(cells + 1, 0);
    for (std::int64_t i = 0; i < n; ++i)
      ++observed[std::min(std::size_t(g.geometric_failures(q)), cells)];
    return !chi_square_pmf(observed, pmf, 5, 0.05).pass;
  });
}

TestReport verify_calibration_energy(const Scenario& scn) {
  const std::int64_t n = std::int64_t(extra_or(scn, "n", 150.0));
  const int perms = int(extra_or(scn, "permutations", 100.0));
  const std::uint64_t sa = scn_stream(scn, "a"), sb = scn_stream(scn, "b");
  return calibration_report(scn, [&](std::int64_t r) {
    RngStream g(scn.seed, sa | std::uint64_t(r));
    RngStream h(scn.seed, sb | std::uint64_t(r));
    std::vector<std::array<double, 2>> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (auto& v : a) v = {g.normal(), g.normal()};
    for (auto& v : b) v = {h.normal(), h.normal()};
    return !energy_permutation_2d(sample_2d(std::move(a)), sample_2d(std::move(b)), perms,
                                  derived_seed(scn.seed, std::uint64_t(r)), 0.05)
                .pass;
  });
}

TestReport verify_calibration_dcov(const Scenario& scn) {
  const std::int64_t n = std::int64_t(extra_or(scn, "n", 300.0));
  const int perms = int(extra_or(scn, "permutations", 100.0));
  const std::uint64_t sa = scn_stream(scn, "x"), sb = scn_stream(scn, "y");
  return calibration_report(scn, [&](std::int64_t r) {
    RngStream g(scn.seed, sa | std::uint64_t(r));
    RngStream h(scn.seed, sb | std::uint64_t(r));
    std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    for (auto& v : x) v = g.normal();
    for (auto& v : y) v = h.normal();
    return !distance_covariance_independence(x, y, perms,
                                             derived_seed(scn.seed, std::uint64_t(r)), 0.05)
                .pass;
  });
}

namespace {

using CheckFn = TestReport (*)(const Scenario&);

const std::map<std::string, CheckFn>& check_table() {
  static const std::map<std::string, CheckFn> kChecks = {
      {"max_decomposition", verify_max_decomposition},
      {"pair_decomposition", verify_pair_decomposition},
      {"cascade", verify_cascade},
      {"cascade_invariance", verify_cascade_invariance},
      {"geometric_sum", verify_geometric_sum},
      {"count_pmf", verify_count_pmf},
      {"sn_marginal", verify_sn_marginal},
      {"moments", verify_moments},
      {"parisian", verify_parisian},
      {"fixed_point", verify_fixed_point},
      {"calibration_ks", verify_calibration_ks},
      {"calibration_chi", verify_calibration_chi},
      {"calibration_energy", verify_calibration_energy},
      {"calibration_dcov", verify_calibration_dcov},
  };
  return kChecks;
}

}  // namespace

bool known_check(const std::string& check) { return check_table().count(check) > 0; }

ScenarioResult run_scenario(const Scenario& scn) {
  if (scn.expect != "pass" && scn.expect != "reject")
    fail(errc::invalid_config, "scenario " + scn.name + ": expect must be pass or reject");
  if (scn.sample_size < 1)
    fail(errc::invalid_config, "scenario " + scn.name + ": sample_size must be >= 1");
  const auto it = check_table().find(scn.check);
  if (it == check_table().end())
    fail(errc::invalid_config, "scenario " + scn.name + ": unknown check " + scn.check);
  ScenarioResult out;
  out.name = scn.name;
  out.check = scn.check;
  out.expect = scn.expect;
  out.report = it->second(scn);
  out.ok = scn.expect == "reject" ? !out.report.pass : out.report.pass;
  return out;
}

std::vector<ScenarioResult> run_suite(std::vector<Scenario> suite) {
  std::sort(suite.begin(), suite.end(),
            [](const Scenario& a, const Scenario& b) { return a.name < b.name; });
  std::set<std::string> names;
  for (const auto& s : suite)
    if (!names.insert(s.name).second)
      fail(errc::invalid_config, "duplicate scenario name " + s.name);
  std::vector<ScenarioResult> out;
  out.reserve(suite.size());
  for (const auto& s : suite) out.push_back(run_scenario(s));
  return out;
}

std::vector<Scenario> acceptance_suite(std::uint64_t seed) {
  const LevyModel sp = model_preset("sp_cl");
  const LevyModel sn = model_preset("sn_bm");
  std::vector<Scenario> suite;
  auto add = [&](Scenario s) { suite.push_back(std::move(s)); };

  add({"moments_sp", "moments", "pass", sp, {1.0, 1.0}, 1000000, seed, {}});
  add({"moments_sn", "moments", "pass", sn, {1.0, 1.0}, 1000000, seed, {}});
  add({"moments_sp_control", "moments", "reject", sp, {1.0, 1.0}, 100000, seed,
       {{"broken", 1.0}}});

  add({"sn_marginal", "sn_marginal", "pass", sn, {1.0, 1.0}, 1000000, seed, {}});
  add({"sn_marginal_control", "sn_marginal", "reject", sn, {1.0, 1.0}, 200000, seed,
       {{"broken", 1.0}}});

  add({"max_decomposition", "max_decomposition", "pass", sp, {0.5, 1.0}, 100000, seed, {}});
  add({"max_decomposition_tiny_omega", "max_decomposition", "pass", sp, {0.5, 1e-6}, 30000,
       seed, {}});
  add({"max_decomposition_control", "max_decomposition", "reject", sp, {0.5, 1.0}, 100000, seed,
       {{"broken", 1.0}}});

  add({"pair_decomposition", "pair_decomposition", "pass", sp, {0.5, 1.0}, 20000, seed,
       {{"permutations", 200.0}}});
  add({"pair_decomposition_control", "pair_decomposition", "reject", sp, {0.5, 1.0}, 20000,
       seed, {{"permutations", 200.0}, {"swap_g", 1.0}}});

  add({"fixed_point", "fixed_point", "pass", sp, {1.0, 1.0}, 100000, seed, {}});
  add({"fixed_point_control", "fixed_point", "reject", sp, {1.0, 1.0}, 100000, seed,
       {{"broken", 1.0}}});

  add({"cascade", "cascade", "pass", sp, {0.5, 1.0}, 100000, seed,
       {{"factor", 2.0}, {"truncation", 20.0}}});
  add({"cascade_invariance", "cascade_invariance", "pass", sp, {0.5, 1.0}, 100000, seed,
       {{"factor", 2.0}, {"truncation", 20.0}, {"factor2", 4.0}, {"truncation2", 10.0}}});
  add({"cascade_control", "cascade", "reject", sp, {0.5, 1.0}, 50000, seed,
       {{"factor", 2.0}, {"truncation", 20.0}, {"broken", 1.0}}});

  add({"geometric_sum", "geometric_sum", "pass", sp, {1.0, 1.0}, 1000000, seed,
       {{"p", 0.5}, {"p_prime", 0.5}}});
  add({"geometric_sum_control", "geometric_sum", "reject", sp, {1.0, 1.0}, 1000000, seed,
       {{"p", 0.5}, {"p_prime", 0.5}, {"wrong_null", 1.0}, {"threshold", 1e-6}}});
  add({"count_pmf", "count_pmf", "pass", sp, {1.0, 3.0}, 1000000, seed, {}});

  add({"parisian", "parisian", "pass", sp, {1.0, 1.0}, 100000, seed, {}});
  add({"parisian_control", "parisian", "reject", sp, {1.0, 1.0}, 100000, seed,
       {{"broken", 1.0}}});

  add({"calibration_ks", "calibration_ks", "pass", sp, {1.0, 1.0}, 2000, seed, {}});
  add({"calibration_chi", "calibration_chi", "pass", sp, {1.0, 1.0}, 5000, seed, {}});
  add({"calibration_energy", "calibration_energy", "pass", sp, {1.0, 1.0}, 150, seed, {}});
  add({"calibration_dcov", "calibration_dcov", "pass", sp, {1.0, 1.0}, 300, seed, {}});
  return suite;
}

std::vector<Scenario> smoke_suite(std::uint64_t seed) {
  const LevyModel sp = model_preset("sp_cl");
  const LevyModel sn = model_preset("sn_bm");
  std::vector<Scenario> suite;
  auto add = [&](Scenario s) { suite.push_back(std::move(s)); };
  add({"smoke_max_decomposition", "max_decomposition", "pass", sp, {0.5, 1.0}, 20000, seed, {}});
  add({"smoke_max_decomposition_control", "max_decomposition", "reject", sp, {0.5, 1.0}, 20000,
       seed, {{"broken", 1.0}}});
  add({"smoke_pair_decomposition", "pair_decomposition", "pass", sp, {0.5, 1.0}, 3000, seed,
       {{"permutations", 100.0}}});
  add({"smoke_sn_marginal", "sn_marginal", "pass", sn, {1.0, 1.0}, 50000, seed, {}});
  add({"smoke_moments_sp", "moments", "pass", sp, {1.0, 1.0}, 100000, seed, {}});
  add({"smoke_fixed_point", "fixed_point", "pass", sp, {1.0, 1.0}, 20000, seed, {}});
  add({"smoke_geometric_sum", "geometric_sum", "pass", sp, {1.0, 1.0}, 100000, seed,
       {{"p", 0.5}, {"p_prime", 0.5}}});
  add({"smoke_count_pmf", "count_pmf", "pass", sp, {1.0, 3.0}, 100000, seed, {}});
  return suite;
}

std::vector<Scenario> calibration_suite(std::uint64_t seed) {
  const LevyModel sp = model_preset("sp_cl");
  std::vector<Scenario> suite;
  suite.push_back({"calibration_ks", "calibration_ks", "pass", sp, {1.0, 1.0}, 2000, seed, {}});
  suite.push_back({"calibration_chi", "calibration_chi", "pass", sp, {1.0, 1.0}, 5000, seed, {}});
  suite.push_back(
      {"calibration_energy", "calibration_energy", "pass", sp, {1.0, 1.0}, 150, seed, {}});
  suite.push_back(
      {"calibration_dcov", "calibration_dcov", "pass", sp, {1.0, 1.0}, 300, seed, {}});
  return suite;
}

}  // namespace levymax
