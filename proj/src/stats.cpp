#include "levymax/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "levymax/parallel.hpp"
#include "levymax/rng.hpp"

namespace levymax {

TestReport make_report(const std::string& name, double statistic, double p_value,
                       double threshold, std::int64_t n1, std::int64_t n2, std::uint64_t seed) {
  TestReport r;
  r.test_name = name;
  r.statistic = statistic;
  r.p_value = std::clamp(p_value, 0.0, 1.0);
  r.threshold = threshold;
  r.pass = r.p_value > threshold;
  r.n1 = n1;
  r.n2 = n2;
  r.seed = seed;
  return r;
}

EmpiricalSample sample_1d(std::vector<double> v) {
  if (v.empty()) fail(errc::empty_sample, "sample_1d: empty");
  EmpiricalSample s;
  s.sorted = v;
  std::sort(s.sorted.begin(), s.sorted.end());
  s.values = std::move(v);
  return s;
}

EmpiricalSample sample_2d(std::vector<std::array<double, 2>> v) {
  if (v.empty()) fail(errc::empty_sample, "sample_2d: empty");
  EmpiricalSample s;
  s.pairs = std::move(v);
  return s;
}

double kolmogorov_q(double lambda) {
  if (!(lambda > 0.2)) return 1.0;  // Q(0.2) = 1 - 5e-13; series needs no more
  double sum = 0.0, sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * std::exp(-2.0 * double(j) * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

namespace {

double ks_p_value(double d, double n_effective) {
  const double rn = std::sqrt(n_effective);
  return kolmogorov_q((rn + 0.12 + 0.11 / rn) * d);
}

void require_1d(const EmpiricalSample& s, const char* who) {
  if (s.two_d()) fail(errc::invalid_config, std::string(who) + ": 1D sample required");
  if (s.sorted.empty()) fail(errc::empty_sample, std::string(who) + ": empty sample");
}

}  // namespace

TestReport ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b, double threshold,
                         std::uint64_t seed, const std::string& name) {
  require_1d(a, "ks_two_sample");
  require_1d(b, "ks_two_sample");
  const std::vector<double>& x = a.sorted;
  const std::vector<double>& y = b.sorted;
  const double nx = double(x.size()), ny = double(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  // walk the pooled order; ties advance both counters before comparing, so
  // atom-heavy samples are handled correctly
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(double(i) / nx - double(j) / ny));
  }
  const double ne = nx * ny / (nx + ny);
  return make_report(name, d, ks_p_value(d, ne), threshold, std::int64_t(x.size()),
                     std::int64_t(y.size()), seed);
}

TestReport ks_one_sample(const EmpiricalSample& a, const std::function<double(double)>& cdf,
                         double threshold, std::uint64_t seed, const std::string& name) {
  require_1d(a, "ks_one_sample");
  const std::vector<double>& x = a.sorted;
  const double n = double(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    if (!(f >= 0.0 && f <= 1.0)) fail(errc::invalid_probability, "ks_one_sample: cdf out of [0,1]");
    d = std::max(d, std::max(std::abs(f - double(i) / n), std::abs(double(i + 1) / n - f)));
  }
  return make_report(name, d, ks_p_value(d, n), threshold, std::int64_t(x.size()), 0, seed);
}

namespace {

TestReport chi_square_from_cells(const std::string& name, std::vector<double> expected,
                                 std::vector<double> observed, std::int64_t df_drop,
                                 double threshold, std::int64_t n1, std::int64_t n2,
                                 std::uint64_t seed) {
  if (std::int64_t(expected.size()) - df_drop < 1)
    fail(errc::degenerate_cells, name + ": fewer than 2 cells after merging");
  double stat = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (expected[k] <= 0.0) {
      if (observed[k] > 0.0) return make_report(name, 1e300, 0.0, threshold, n1, n2, seed);
      continue;
    }
    const double diff = observed[k] - expected[k];
    stat += diff * diff / expected[k];
  }
  const double df = double(std::int64_t(expected.size()) - df_drop);
  const double p = boost::math::gamma_q(0.5 * df, 0.5 * stat);
  return make_report(name, stat, p, threshold, n1, n2, seed);
}

}  // namespace

TestReport chi_square_pmf(const std::vector<std::int64_t>& observed,
                          const std::vector<double>& expected_pmf, std::int64_t tail_merge_min,
                          double threshold, std::uint64_t seed, const std::string& name) {
  if (observed.size() != expected_pmf.size() + 1)
    fail(errc::length_mismatch, "chi_square_pmf: observed must have pmf cells plus a tail cell");
  const double n = double(std::accumulate(observed.begin(), observed.end(), std::int64_t(0)));
  if (!(n > 0)) fail(errc::empty_sample, "chi_square_pmf: no observations");
  double sum_p = 0.0;
  for (double p : expected_pmf) {
    if (!(p >= 0.0) || !std::isfinite(p))
      fail(errc::invalid_probability, "chi_square_pmf: pmf entries must be in [0,1]");
    sum_p += p;
  }
  if (sum_p > 1.0 + 1e-9) fail(errc::invalid_probability, "chi_square_pmf: pmf sums above 1");

  double merged_exp = std::max(0.0, 1.0 - sum_p) * n;
  double merged_obs = double(observed.back());
  std::vector<double> exp_cells, obs_cells;
  for (std::size_t k = 0; k < expected_pmf.size(); ++k) {
    const double e = expected_pmf[k] * n;
    if (e >= double(tail_merge_min)) {
      exp_cells.push_back(e);
      obs_cells.push_back(double(observed[k]));
    } else {
      merged_exp += e;
      merged_obs += double(observed[k]);
    }
  }
  if (merged_exp > 0.0 || merged_obs > 0.0) {
    exp_cells.push_back(merged_exp);
    obs_cells.push_back(merged_obs);
  }
  if (exp_cells.size() < 2) fail(errc::degenerate_cells, "chi_square_pmf: fewer than 2 cells");
  return chi_square_from_cells(name, exp_cells, obs_cells, 1, threshold, std::int64_t(n), 0, seed);
}

TestReport chi_square_two_sample(const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b, double min_expected,
                                 double threshold, std::uint64_t seed, const std::string& name) {
  if (a.size() != b.size())
    fail(errc::length_mismatch, "chi_square_two_sample: cell counts differ");
  if (a.empty()) fail(errc::empty_sample, "chi_square_two_sample: no cells");
  const double na = double(std::accumulate(a.begin(), a.end(), std::int64_t(0)));
  const double nb = double(std::accumulate(b.begin(), b.end(), std::int64_t(0)));
  if (!(na > 0) || !(nb > 0)) fail(errc::empty_sample, "chi_square_two_sample: empty sample");

  // pooled expected counts; merge cells too thin to support the chi-square
  // approximation into one tail cell
  std::vector<double> exp_cells, obs_cells;
  double tail_a = 0.0, tail_b = 0.0, tail_p = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double p = (double(a[k]) + double(b[k])) / (na + nb);
    if (std::min(na * p, nb * p) >= min_expected) {
      exp_cells.push_back(na * p);
      obs_cells.push_back(double(a[k]));
      exp_cells.push_back(nb * p);
      obs_cells.push_back(double(b[k]));
    } else {
      tail_p += p;
      tail_a += double(a[k]);
      tail_b += double(b[k]);
    }
  }
  std::int64_t cells = std::int64_t(exp_cells.size()) / 2;
  if (tail_p > 0.0) {
    exp_cells.push_back(na * tail_p);
    obs_cells.push_back(tail_a);
    exp_cells.push_back(nb * tail_p);
    obs_cells.push_back(tail_b);
    ++cells;
  }
  if (cells < 2) fail(errc::degenerate_cells, "chi_square_two_sample: fewer than 2 cells");
  // df = cells - 1: each cell contributes two terms but pooled proportions
  // absorb one constraint per cell and the totals are fixed
  return chi_square_from_cells(name, exp_cells, obs_cells, std::int64_t(exp_cells.size()) - cells + 1,
                               threshold, std::int64_t(na), std::int64_t(nb), seed);
}

namespace {

// robust per-coordinate location/scale for standardization
void median_and_mad(std::vector<double> v, double& med, double& scale) {
  const std::size_t n = v.size();
  std::nth_element(v.begin(), v.begin() + n / 2, v.end());
  med = v[n / 2];
  if (n % 2 == 0) {
    const double hi = med;
    std::nth_element(v.begin(), v.begin() + (n / 2 - 1), v.begin() + n / 2);
    med = 0.5 * (v[n / 2 - 1] + hi);
  }
  for (double& x : v) x = std::abs(x - med);
  std::nth_element(v.begin(), v.begin() + n / 2, v.end());
  scale = v[n / 2];
  if (scale <= 0.0) {
    double s = 0.0, s2 = 0.0;
    for (double x : v) {
      s += x;
      s2 += x * x;
    }
    const double var = s2 / double(n) - (s / double(n)) * (s / double(n));
    scale = var > 0.0 ? std::sqrt(var) : 1.0;
  }
}

inline double dist_row_sum(const std::vector<float>& xs, const std::vector<float>& ys,
                           std::size_t i, std::size_t lo, std::size_t hi) {
  const float xi = xs[i], yi = ys[i];
  double acc = 0.0;
  for (std::size_t j = lo; j < hi; ++j) {
    const float dx = xi - xs[j];
    const float dy = yi - ys[j];
    acc += std::sqrt(dx * dx + dy * dy);
  }
  return acc;
}

// pairwise distance sum within an index subset, serial (one permutation)
double subset_pair_sum(const std::vector<float>& xs, const std::vector<float>& ys,
                       const std::vector<std::uint32_t>& idx, std::size_t lo, std::size_t hi,
                       std::vector<float>& bx, std::vector<float>& by) {
  const std::size_t m = hi - lo;
  bx.resize(m);
  by.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    bx[k] = xs[idx[lo + k]];
    by[k] = ys[idx[lo + k]];
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) acc += dist_row_sum(bx, by, i, i + 1, m);
  return acc;
}

TestReport energy_core(const EmpiricalSample& a, const EmpiricalSample& b, int permutations,
                       std::uint64_t seed, double threshold, const std::string& name,
                       bool parallel) {
  if (!a.two_d() || !b.two_d()) fail(errc::empty_sample, "energy: nonempty 2D samples required");
  if (permutations < 100) fail(errc::invalid_config, "energy: permutations must be >= 100");
  const std::size_t n1 = a.pairs.size(), n2 = b.pairs.size(), n = n1 + n2;

  std::vector<double> c0, c1;
  c0.reserve(n);
  c1.reserve(n);
  for (const auto& p : a.pairs) {
    c0.push_back(p[0]);
    c1.push_back(p[1]);
  }
  for (const auto& p : b.pairs) {
    c0.push_back(p[0]);
    c1.push_back(p[1]);
  }
  double m0, s0, m1, s1;
  median_and_mad(c0, m0, s0);
  median_and_mad(c1, m1, s1);
  std::vector<float> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = float((c0[i] - m0) / s0);
    ys[i] = float((c1[i] - m1) / s1);
  }

  auto pair_sum_range = [&](std::size_t lo, std::size_t hi) {
    auto row = [&](std::int64_t k) {
      const std::size_t i = lo + std::size_t(k);
      return dist_row_sum(xs, ys, i, i + 1, hi);
    };
    const std::int64_t m = std::int64_t(hi - lo);
    return parallel ? par::sum_index(m, row) : par::sum_index_serial(m, row);
  };
  const double t_pool = pair_sum_range(0, n);
  const double s_aa = pair_sum_range(0, n1);
  // rows n1..n-1 against the suffix only
  auto bb_row = [&](std::int64_t k) {
    const std::size_t i = n1 + std::size_t(k);
    return dist_row_sum(xs, ys, i, i + 1, n);
  };
  const double s_bb = parallel ? par::sum_index(std::int64_t(n2), bb_row)
                               : par::sum_index_serial(std::int64_t(n2), bb_row);

  const double dn1 = double(n1), dn2 = double(n2);
  auto stat_from = [&](double aa, double bb) {
    const double ab = t_pool - aa - bb;
    const double e = 2.0 * ab / (dn1 * dn2) - 2.0 * aa / (dn1 * dn1) - 2.0 * bb / (dn2 * dn2);
    return dn1 * dn2 / (dn1 + dn2) * e;
  };
  const double observed = stat_from(s_aa, s_bb);

  const std::uint64_t base = stream_base("energy_perm");
  std::vector<std::uint8_t> ge(std::size_t(permutations), 0);
  auto one_perm = [&](std::int64_t p) {
    RngStream g(seed, base | std::uint64_t(p));
    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = std::uint32_t(i);
    for (std::size_t i = n - 1; i > 0; --i)
      std::swap(idx[i], idx[g.below(std::uint64_t(i + 1))]);
    std::vector<float> bx, by;
    const double aa = subset_pair_sum(xs, ys, idx, 0, n1, bx, by);
    const double bb = subset_pair_sum(xs, ys, idx, n1, n, bx, by);
    ge[std::size_t(p)] = stat_from(aa, bb) >= observed ? 1 : 0;
  };
  if (parallel)
    par::for_index(permutations, one_perm);
  else
    par::for_index_serial(permutations, one_perm);

  std::int64_t count = 0;
  for (std::uint8_t g : ge) count += g;
  const double p_value = double(1 + count) / double(permutations + 1);
  return make_report(name, observed, p_value, threshold, std::int64_t(n1), std::int64_t(n2), seed);
}

}  // namespace

TestReport energy_permutation_2d(const EmpiricalSample& a, const EmpiricalSample& b,
                                 int permutations, std::uint64_t seed, double threshold,
                                 const std::string& name) {
  return energy_core(a, b, permutations, seed, threshold, name, true);
}

TestReport energy_permutation_2d_serial(const EmpiricalSample& a, const EmpiricalSample& b,
                                        int permutations, std::uint64_t seed, double threshold,
                                        const std::string& name) {
  return energy_core(a, b, permutations, seed, threshold, name, false);
}

TestReport distance_covariance_independence(const std::vector<double>& x,
                                            const std::vector<double>& y, int permutations,
                                            std::uint64_t seed, double threshold,
                                            const std::string& name) {
  const std::size_t n = x.size();
  if (n == 0) fail(errc::empty_sample, "dcov: empty sample");
  if (y.size() != n) fail(errc::length_mismatch, "dcov: coordinate blocks differ in length");
  if (permutations < 100) fail(errc::invalid_config, "dcov: permutations must be >= 100");

  // row means and grand means of the two distance matrices, never storing n^2
  std::vector<double> arow(n), brow(n);
  par::for_index(std::int64_t(n), [&](std::int64_t ii) {
    const std::size_t i = std::size_t(ii);
    double sa = 0.0, sb = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sa += std::abs(x[i] - x[j]);
      sb += std::abs(y[i] - y[j]);
    }
    arow[i] = sa / double(n);
    brow[i] = sb / double(n);
  });
  double agrand = 0.0, bgrand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    agrand += arow[i];
    bgrand += brow[i];
  }
  agrand /= double(n);
  bgrand /= double(n);

  // V(pi) = (1/n^2) sum_ij A_ij B_{pi(i)pi(j)}; statistic is n * V(identity)
  auto vstat = [&](const std::vector<double>& yp, const std::vector<double>& browp) {
    auto row = [&](std::int64_t ii) {
      const std::size_t i = std::size_t(ii);
      const double xi = x[i], ai = arow[i], ypi = yp[i], bi = browp[i];
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        acc += (std::abs(xi - x[j]) - ai - arow[j] + agrand) *
               (std::abs(ypi - yp[j]) - bi - browp[j] + bgrand);
      return acc;
    };
    return par::sum_index(std::int64_t(n), row) / double(n);  // n * V = sum / n
  };
  const double observed = vstat(y, brow);

  const std::uint64_t base = stream_base("dcov_perm");
  std::vector<std::uint8_t> ge(std::size_t(permutations), 0);
  par::for_index(permutations, [&](std::int64_t p) {
    RngStream g(seed, base | std::uint64_t(p));
    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = std::uint32_t(i);
    for (std::size_t i = n - 1; i > 0; --i)
      std::swap(idx[i], idx[g.below(std::uint64_t(i + 1))]);
    std::vector<double> yp(n), browp(n);
    for (std::size_t i = 0; i < n; ++i) {
      yp[i] = y[idx[i]];
      browp[i] = brow[idx[i]];
    }
    // serial inner evaluation inside one permutation task
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = x[i], ai = arow[i], ypi = yp[i], bi = browp[i];
      double ri = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        ri += (std::abs(xi - x[j]) - ai - arow[j] + agrand) *
              (std::abs(ypi - yp[j]) - bi - browp[j] + bgrand);
      acc += ri;
    }
    ge[std::size_t(p)] = acc / double(n) >= observed ? 1 : 0;
  });
  std::int64_t count = 0;
  for (std::uint8_t g : ge) count += g;
  const double p_value = double(1 + count) / double(permutations + 1);
  return make_report(name, observed, p_value, threshold, std::int64_t(n), std::int64_t(n), seed);
}

TestReport z_band_report(const std::string& name, double estimate, double reference, double se,
                         double band, std::int64_t n, std::uint64_t seed) {
  if (!(se >= 0.0)) fail(errc::negative_input, "z_band_report: se must be >= 0");
  double z;
  if (se == 0.0)
    z = estimate == reference ? 0.0 : std::numeric_limits<double>::infinity();
  else
    z = (estimate - reference) / se;
  const double p = 2.0 * normal_upper_tail(std::abs(z));
  const double thr = 2.0 * normal_upper_tail(band);
  return make_report(name, z, p, thr, n, 0, seed);
}

}  // namespace levymax
