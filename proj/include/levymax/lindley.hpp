#pragma once
// Lindley-type recursion engines: the classical recursion with its
// max-of-partial-sums closed form, the Bernoulli-killed variant whose unique
// stationary law is the maximum of a geometrically stopped random walk, the
// two-dimensional (value, additive-functional) recursion with its
// last-argmax closed form and reversal identity, and small helpers around
// geometric stopping (size-biased pmf, the z-recursion).
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "levymax/errors.hpp"
#include "levymax/rng.hpp"

namespace levymax {

struct TwoDimState {
  double w = 0.0;
  double w_prime = 0.0;
};

struct TwoDimClosedForm {
  double m = 0.0;        // running maximum of partial sums s_0..s_n
  std::size_t k = 0;     // LAST index attaining the maximum
  double m_prime = 0.0;  // s'_k, the second-coordinate partial sum at k
};

// w_n = (w_{n-1} + x_n)^+ with w_0 = 0; returns w_1..w_n
std::vector<double> lindley_run(const std::vector<double>& x);

// w_n = s_n - min_{k<=n} s_k with s the partial sums (s_0 = 0); exact
// pathwise match of lindley_run; n ranges over 0..x.size()
double lindley_closed_form(const std::vector<double>& x, std::size_t n);

// W_n = flag_n * (W_{n-1} + x_n)^+; flags restart the recursion at zero
std::vector<double> killed_lindley_run(const std::vector<double>& x,
                                       const std::vector<std::uint8_t>& kill_flags);

// draws N with P(N=n) = p(1-p)^n and returns max_{k<=N} S_k of the random
// walk built from increment_sampler; this is the unique stationary law of the
// killed recursion with survive-probability 1-p
double fixed_point_sample(double p, const std::function<double(RngStream&)>& increment_sampler,
                          RngStream& rng);

// w_n = (w_{n-1}+x_n)^+, w'_n = (w'_{n-1}+x'_n) * 1{w_{n-1}+x_n >= 0}; the
// indicator uses the WEAK inequality so zero-touching steps keep the clock
std::vector<TwoDimState> two_dim_run(const std::vector<std::pair<double, double>>& xs);

// (max of s_0..s_n, last argmax index, s'_at_that_index); running two_dim_run
// on the reversed sequence ends exactly at (m, m_prime)
TwoDimClosedForm two_dim_closed_form(const std::vector<std::pair<double, double>>& xs,
                                     std::size_t n);

// P(N_e = n) = P(N >= n) / (E N + 1); maps a geometric law to itself
std::vector<double> size_biased_pmf(const std::vector<double>& pmf);

// z_1 = u_1, z_{k+1} = u_{k+1} + (z_k - v_k)^+; u must have one more element
// than v; satisfies z_{k+1} - u_{k+1} = lindley_run(u-v)[k]
std::vector<double> z_recursion_run(const std::vector<double>& u, const std::vector<double>& v);

}  // namespace levymax
