#include "levymax/lindley.hpp"

#include <algorithm>
#include <cmath>

namespace levymax {

std::vector<double> lindley_run(const std::vector<double>& x) {
  std::vector<double> w(x.size());
  double cur = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cur = std::max(cur + x[i], 0.0);
    w[i] = cur;
  }
  return w;
}

double lindley_closed_form(const std::vector<double>& x, std::size_t n) {
  if (n > x.size()) fail(errc::index_out_of_range, "lindley_closed_form: n exceeds length");
  double s = 0.0, min_s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += x[i];
    min_s = std::min(min_s, s);
  }
  return s - min_s;
}

std::vector<double> killed_lindley_run(const std::vector<double>& x,
                                       const std::vector<std::uint8_t>& kill_flags) {
  if (x.size() != kill_flags.size())
    fail(errc::length_mismatch, "killed_lindley_run: flags length differs from x");
  std::vector<double> w(x.size());
  double cur = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cur = kill_flags[i] ? std::max(cur + x[i], 0.0) : 0.0;
    w[i] = cur;
  }
  return w;
}

double fixed_point_sample(double p, const std::function<double(RngStream&)>& increment_sampler,
                          RngStream& rng) {
  if (!(p > 0.0 && p < 1.0)) fail(errc::invalid_probability, "fixed_point_sample: p not in (0,1)");
  const std::int64_t n = rng.geometric_failures(p);
  double s = 0.0, best = 0.0;  // S_0 = 0 is always in the maximum
  for (std::int64_t k = 0; k < n; ++k) {
    s += increment_sampler(rng);
    best = std::max(best, s);
  }
  return best;
}

std::vector<TwoDimState> two_dim_run(const std::vector<std::pair<double, double>>& xs) {
  std::vector<TwoDimState> out(xs.size());
  double w = 0.0, wp = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i].second >= 0.0))
      fail(errc::negative_second_coordinate, "two_dim_run: x' must be >= 0");
    const double step = w + xs[i].first;
    if (step >= 0.0) {
      w = step;
      wp += xs[i].second;
    } else {
      w = 0.0;
      wp = 0.0;
    }
    out[i] = {w, wp};
  }
  return out;
}

TwoDimClosedForm two_dim_closed_form(const std::vector<std::pair<double, double>>& xs,
                                     std::size_t n) {
  if (n > xs.size()) fail(errc::index_out_of_range, "two_dim_closed_form: n exceeds length");
  TwoDimClosedForm r;  // s_0 = 0 starts as the maximum at k = 0
  double s = 0.0, sp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i].second >= 0.0))
      fail(errc::negative_second_coordinate, "two_dim_closed_form: x' must be >= 0");
    s += xs[i].first;
    sp += xs[i].second;
    if (s >= r.m) {  // weak inequality: keep the LAST argmax
      r.m = s;
      r.k = i + 1;
      r.m_prime = sp;
    }
  }
  return r;
}

std::vector<double> size_biased_pmf(const std::vector<double>& pmf) {
  if (pmf.empty()) fail(errc::empty_sample, "size_biased_pmf: empty pmf");
  double total = 0.0, mean = 0.0;
  for (std::size_t n = 0; n < pmf.size(); ++n) {
    if (!(pmf[n] >= 0.0) || !std::isfinite(pmf[n]))
      fail(errc::invalid_probability, "size_biased_pmf: entries must be in [0,1]");
    total += pmf[n];
    mean += double(n) * pmf[n];
  }
  if (std::abs(total - 1.0) > 1e-12)
    fail(errc::invalid_probability, "size_biased_pmf: pmf must sum to 1 (tolerance 1e-12)");
  if (!std::isfinite(mean)) fail(errc::infinite_mean, "size_biased_pmf: mean diverges");
  std::vector<double> out(pmf.size());
  double tail = total;  // P(N >= n), walked downward
  for (std::size_t n = 0; n < pmf.size(); ++n) {
    out[n] = tail / (mean + 1.0);
    tail -= pmf[n];
  }
  return out;
}

std::vector<double> z_recursion_run(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size() + 1)
    fail(errc::length_mismatch, "z_recursion_run: u must have one more element than v");
  for (double a : u)
    if (!(a >= 0.0)) fail(errc::negative_input, "z_recursion_run: u must be >= 0");
  for (double a : v)
    if (!(a >= 0.0)) fail(errc::negative_input, "z_recursion_run: v must be >= 0");
  std::vector<double> z(u.size());
  z[0] = u[0];
  for (std::size_t k = 0; k + 1 < u.size(); ++k)
    z[k + 1] = u[k + 1] + std::max(z[k] - v[k], 0.0);
  return z;
}

}  // namespace levymax
