#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "levymax/rng.hpp"
#include "levymax/stats.hpp"

using namespace levymax;

namespace {

std::vector<double> draw_1d(std::uint64_t seed, std::uint64_t sid, int n, double shift,
                            double scale, bool exponential) {
  RngStream g(seed, sid);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = exponential ? scale * g.exponential(1.0) + shift : scale * g.normal() + shift;
  return v;
}

}  // namespace

TEST_CASE("make_report enforces the pass invariant") {
  CHECK(make_report("t", 0, 0.06, 0.05, 1, 1, 0).pass);
  CHECK_FALSE(make_report("t", 0, 0.05, 0.05, 1, 1, 0).pass);  // boundary is a fail
  CHECK_FALSE(make_report("t", 0, 0.01, 0.05, 1, 1, 0).pass);
  CHECK(make_report("t", 0, 2.0, 0.05, 1, 1, 0).p_value == 1.0);  // clamped
}

TEST_CASE("kolmogorov survival function reference values") {
  CHECK(kolmogorov_q(1e-8) == 1.0);
  CHECK(kolmogorov_q(1.0) == doctest::Approx(0.26999967167735452).epsilon(1e-10));
  CHECK(kolmogorov_q(3.0) < 1e-7);
  CHECK(kolmogorov_q(0.5) > kolmogorov_q(0.6));
  CHECK(normal_upper_tail(0.0) == doctest::Approx(0.5));
  CHECK(normal_upper_tail(1.959963985) == doctest::Approx(0.025).epsilon(1e-6));
}

TEST_CASE("ks_two_sample basics") {
  auto same = sample_1d({1.0, 2.0, 3.0, 4.0});
  auto r0 = ks_two_sample(same, same);
  CHECK(r0.statistic == 0.0);
  CHECK(r0.p_value == 1.0);
  CHECK(r0.pass);

  auto a = sample_1d(draw_1d(7, 1, 10000, 0.0, 1.0, false));
  auto b = sample_1d(draw_1d(7, 2, 10000, 5.0, 1.0, false));
  auto r1 = ks_two_sample(a, b);
  CHECK(r1.p_value < 1e-6);
  CHECK_FALSE(r1.pass);

  auto c = sample_1d(draw_1d(11, 3, 100000, 0.0, 2.0, true));
  auto d = sample_1d(draw_1d(11, 4, 100000, 0.0, 2.0, true));
  auto r2 = ks_two_sample(c, d, 0.01);
  CHECK(r2.p_value > 0.01);
  CHECK(r2.pass);
}

TEST_CASE("ks_two_sample handles atom-heavy samples") {
  auto mix = [](std::uint64_t sid, int n) {
    RngStream g(13, sid);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = g.bernoulli(0.6) ? 0.0 : g.exponential(1.0);
    return sample_1d(v);
  };
  auto r = ks_two_sample(mix(1, 50000), mix(2, 50000), 0.01);
  CHECK(r.pass);
  // same atom weight but different positive part must reject
  RngStream g(13, 9);
  std::vector<double> w(50000);
  for (auto& v : w) v = g.bernoulli(0.6) ? 0.0 : g.exponential(0.5);
  auto r2 = ks_two_sample(mix(3, 50000), sample_1d(w), 0.01);
  CHECK_FALSE(r2.pass);
}

TEST_CASE("ks_one_sample against analytic cdfs") {
  auto a = sample_1d(draw_1d(3, 5, 100000, 0.0, 1.0, true));
  auto cdf1 = [](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); };
  auto cdf2 = [](double x) { return x <= 0 ? 0.0 : -std::expm1(-2.0 * x); };
  CHECK(ks_one_sample(a, cdf1, 0.01).pass);
  CHECK_FALSE(ks_one_sample(a, cdf2, 0.01).pass);
  CHECK_THROWS_AS(ks_one_sample(a, [](double) { return 1.5; }), Error);
}

TEST_CASE("ks rejects empty or 2D input") {
  CHECK_THROWS_AS(sample_1d({}), Error);
  EmpiricalSample empty;
  auto ok = sample_1d({1.0});
  CHECK_THROWS_AS(ks_two_sample(ok, empty), Error);
  auto p = sample_2d({{1.0, 2.0}});
  CHECK_THROWS_AS(ks_two_sample(ok, p), Error);
}

TEST_CASE("chi_square_pmf exact-proportion and calibration cases") {
  std::vector<double> pmf = {0.25, 0.25, 0.25};  // implicit tail 0.25
  std::vector<std::int64_t> obs = {2500, 2500, 2500, 2500};
  auto r = chi_square_pmf(obs, pmf);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == 1.0);

  // geometric(q=0.5) draws against its own pmf
  RngStream g(21, 1);
  const int n = 1000000, kmax = 25;
  std::vector<std::int64_t> counts(kmax + 1, 0);
  for (int i = 0; i < n; ++i) {
    auto k = g.geometric_failures(0.5);
    counts[std::size_t(std::min<std::int64_t>(k, kmax))]++;
  }
  std::vector<double> gp(kmax);
  for (int k = 0; k < kmax; ++k) gp[k] = std::pow(0.5, k) * 0.5;
  CHECK(chi_square_pmf(counts, gp, 5, 0.01).pass);

  // wrong-null control: same counts against geometric(0.25)
  std::vector<double> wrong(kmax);
  for (int k = 0; k < kmax; ++k) wrong[k] = std::pow(0.75, k) * 0.25;
  CHECK(chi_square_pmf(counts, wrong, 5, 0.01).p_value < 1e-6);
}

TEST_CASE("chi_square_pmf guards") {
  CHECK_THROWS_AS(chi_square_pmf({1, 2}, {0.5, 0.5}), Error);        // length
  CHECK_THROWS_AS(chi_square_pmf({1, 2, 3}, {0.9, 0.3}), Error);     // sums above 1
  CHECK_THROWS_AS(chi_square_pmf({1000, 0}, {1.0}), Error);          // single cell
  CHECK_THROWS_AS(chi_square_pmf({0, 0}, {1.0}), Error);             // no observations
  // expected zero but observed positive in the tail -> hard reject
  auto r = chi_square_pmf({500, 500, 7}, {0.5, 0.5});
  CHECK(r.p_value == 0.0);
}

TEST_CASE("chi_square_two_sample homogeneity") {
  auto fill = [](std::uint64_t sid, double q, int n) {
    RngStream g(33, sid);
    std::vector<std::int64_t> counts(20, 0);
    for (int i = 0; i < n; ++i)
      counts[std::size_t(std::min<std::int64_t>(g.geometric_failures(q), 19))]++;
    return counts;
  };
  CHECK(chi_square_two_sample(fill(1, 0.4, 200000), fill(2, 0.4, 150000), 5.0, 0.01).pass);
  CHECK(chi_square_two_sample(fill(3, 0.4, 200000), fill(4, 0.5, 200000), 5.0, 0.01).p_value <
        1e-6);
  CHECK_THROWS_AS(chi_square_two_sample({1, 2}, {1}), Error);
  CHECK_THROWS_AS(chi_square_two_sample({}, {}), Error);
}

namespace {

std::vector<std::array<double, 2>> draw_pairs(std::uint64_t seed, std::uint64_t sid, int n,
                                              double y_scale) {
  RngStream g(seed, sid);
  std::vector<std::array<double, 2>> v(n);
  for (int i = 0; i < n; ++i) {
    v[i][0] = g.exponential(1.0);
    v[i][1] = y_scale * (g.normal() + 0.3 * v[i][0]);
  }
  return v;
}

}  // namespace

TEST_CASE("energy permutation test: identical, same-law, and shifted clouds") {
  auto a0 = sample_2d(draw_pairs(5, 1, 600, 1.0));
  auto r0 = energy_permutation_2d(a0, a0, 200, 99);
  CHECK(std::abs(r0.statistic) < 1e-4);
  CHECK(r0.p_value > 0.5);

  auto a = sample_2d(draw_pairs(5, 2, 1500, 1.0));
  auto b = sample_2d(draw_pairs(5, 3, 1500, 1.0));
  auto r1 = energy_permutation_2d(a, b, 200, 99, 0.01);
  CHECK(r1.pass);

  auto c = sample_2d(draw_pairs(5, 4, 1500, 2.0));  // second coordinate doubled
  auto r2 = energy_permutation_2d(a, c, 200, 99, 0.01);
  CHECK_FALSE(r2.pass);
  CHECK(r2.p_value < 0.01);
}

TEST_CASE("energy permutation guards") {
  auto a = sample_2d(draw_pairs(6, 1, 50, 1.0));
  CHECK_THROWS_AS(energy_permutation_2d(a, a, 99, 1), Error);  // too few permutations
  EmpiricalSample e;
  CHECK_THROWS_AS(energy_permutation_2d(a, e, 200, 1), Error);
  auto one_d = sample_1d({1.0, 2.0});
  CHECK_THROWS_AS(energy_permutation_2d(a, one_d, 200, 1), Error);
}

TEST_CASE("energy serial twin reproduces the parallel report exactly") {
  auto a = sample_2d(draw_pairs(8, 1, 400, 1.0));
  auto b = sample_2d(draw_pairs(8, 2, 450, 1.3));
  auto rp = energy_permutation_2d(a, b, 150, 4242);
  auto rs = energy_permutation_2d_serial(a, b, 150, 4242);
  CHECK(rp.statistic == rs.statistic);
  CHECK(rp.p_value == rs.p_value);
  CHECK(rp.pass == rs.pass);
  CHECK(rp.n1 == rs.n1);
  CHECK(rp.n2 == rs.n2);
}

TEST_CASE("distance covariance independence test") {
  RngStream g(17, 1);
  const int n = 1200;
  std::vector<double> x(n), y(n), yc(n, 3.0), ydep(n);
  for (int i = 0; i < n; ++i) {
    x[i] = g.normal();
    y[i] = g.exponential(1.0);
    ydep[i] = x[i];
  }
  CHECK(distance_covariance_independence(x, y, 200, 7, 0.01).pass);
  auto rd = distance_covariance_independence(x, ydep, 200, 7, 0.01);
  CHECK_FALSE(rd.pass);
  CHECK(rd.p_value < 0.01);
  auto rc = distance_covariance_independence(x, yc, 200, 7);
  CHECK(std::abs(rc.statistic) < 1e-12);
  CHECK(rc.p_value > 0.99);
  CHECK_THROWS_AS(distance_covariance_independence(x, {1.0}, 200, 7), Error);
  CHECK_THROWS_AS(distance_covariance_independence({}, {}, 200, 7), Error);
  CHECK_THROWS_AS(distance_covariance_independence(x, y, 10, 7), Error);
}

TEST_CASE("z_band_report maps bands to two-sided p-values") {
  auto in = z_band_report("band", 1.02, 1.0, 0.01, 3.0, 100);
  CHECK(in.statistic == doctest::Approx(2.0));
  CHECK(in.pass);
  auto out = z_band_report("band", 1.05, 1.0, 0.01, 3.0, 100);
  CHECK_FALSE(out.pass);
  CHECK(z_band_report("band", 1.0, 1.0, 0.0, 3.0).pass);        // exact match, zero se
  CHECK_FALSE(z_band_report("band", 1.1, 1.0, 0.0, 3.0).pass);  // mismatch, zero se
  CHECK_THROWS_AS(z_band_report("band", 1.0, 1.0, -1.0, 3.0), Error);
}
