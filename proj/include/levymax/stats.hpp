#pragma once
// Distribution-equality machinery: ECDF-based KS tests, chi-square goodness of
// fit with tail merging, a permutation energy-distance test for paired (2D)
// samples, and a distance-covariance independence test. All tests are
// deterministic given (inputs, seed); permutation loops split work across
// per-permutation RngStreams so thread count never changes a p-value.
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levymax/errors.hpp"

namespace levymax {

struct TestReport {
  std::string test_name;
  double statistic = 0.0;
  double p_value = 1.0;
  double threshold = 0.05;
  bool pass = true;  // always equals p_value > threshold
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::uint64_t seed = 0;
};

// the only way reports are built; enforces pass == (p_value > threshold)
TestReport make_report(const std::string& name, double statistic, double p_value,
                       double threshold, std::int64_t n1, std::int64_t n2, std::uint64_t seed);

struct EmpiricalSample {
  std::vector<double> values;                // 1D payload
  std::vector<std::array<double, 2>> pairs;  // 2D payload
  std::vector<double> sorted;                // nondecreasing cache (1D only)
  bool two_d() const { return !pairs.empty(); }
  std::int64_t size() const {
    return static_cast<std::int64_t>(two_d() ? pairs.size() : values.size());
  }
};

EmpiricalSample sample_1d(std::vector<double> v);                  // sorts the cache
EmpiricalSample sample_2d(std::vector<std::array<double, 2>> v);  // pairs kept as given

// survival function of the Kolmogorov distribution, Q(lambda) = 2 sum_{j>=1}
// (-1)^{j-1} exp(-2 j^2 lambda^2); Q -> 1 as lambda -> 0
double kolmogorov_q(double lambda);
// P(Z > z) for standard normal Z
double normal_upper_tail(double z);

// two-sided two-sample KS with tie handling and the asymptotic p-value
TestReport ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b,
                         double threshold = 0.05, std::uint64_t seed = 0,
                         const std::string& name = "ks_two_sample");

// one-sample KS against a cdf (must be a true cdf on the sample's support)
TestReport ks_one_sample(const EmpiricalSample& a, const std::function<double(double)>& cdf,
                         double threshold = 0.05, std::uint64_t seed = 0,
                         const std::string& name = "ks_one_sample");

// goodness of fit of counts to a pmf over cells 0..K-1; observed has K+1
// entries, the last being the count of draws >= K (implicit tail cell with
// probability 1 - sum(pmf)). Cells with expected count below tail_merge_min
// are merged into the tail cell; df = (#cells after merge) - 1.
TestReport chi_square_pmf(const std::vector<std::int64_t>& observed,
                          const std::vector<double>& expected_pmf,
                          std::int64_t tail_merge_min = 5, double threshold = 0.05,
                          std::uint64_t seed = 0, const std::string& name = "chi_square_pmf");

// homogeneity chi-square for two count vectors over the same cells; expected
// counts from pooled proportions, trailing cells merged until every expected
// count reaches min_expected
TestReport chi_square_two_sample(const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b, double min_expected = 5.0,
                                 double threshold = 0.05, std::uint64_t seed = 0,
                                 const std::string& name = "chi_square_two_sample");

// two-sample energy-distance permutation test for 2D samples; coordinates are
// standardized by pooled median absolute deviation before distances.
// p = (1 + #{perm stat >= observed}) / (permutations + 1), ties counted.
TestReport energy_permutation_2d(const EmpiricalSample& a, const EmpiricalSample& b,
                                 int permutations, std::uint64_t seed, double threshold = 0.05,
                                 const std::string& name = "energy_permutation_2d");
// serial reference of the same computation; reports are byte-identical
TestReport energy_permutation_2d_serial(const EmpiricalSample& a, const EmpiricalSample& b,
                                        int permutations, std::uint64_t seed,
                                        double threshold = 0.05,
                                        const std::string& name = "energy_permutation_2d");

// permutation independence test based on (squared) distance covariance;
// shuffles the y block, keeps x fixed
TestReport distance_covariance_independence(const std::vector<double>& x,
                                            const std::vector<double>& y, int permutations,
                                            std::uint64_t seed, double threshold = 0.05,
                                            const std::string& name = "dcov_independence");

// wraps |estimate - reference| <= band * se as a TestReport: statistic is the
// z-score, p the two-sided normal p-value, threshold the band's p-equivalent
TestReport z_band_report(const std::string& name, double estimate, double reference, double se,
                         double band, std::int64_t n = 0, std::uint64_t seed = 0);

}  // namespace levymax
