#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "levymax/parallel.hpp"
#include "levymax/rng.hpp"

using namespace levymax;

TEST_CASE("rng streams are deterministic and decorrelated") {
  RngStream a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 1000; ++i) {
    uint64_t ua = a.next_u64();
    CHECK(ua == b.next_u64());
    CHECK(ua != c.next_u64());
  }
}

TEST_CASE("uniform lies strictly inside (0,1) and matches moments") {
  RngStream g(1, 0);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double u = g.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    s += u;
    s2 += u * u;
  }
  double mean = s / n;
  double var = s2 / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));
  CHECK(std::abs(var - 1.0 / 12.0) < 1e-3);
}

TEST_CASE("exponential and normal samplers match first two moments") {
  RngStream g(9, 3);
  const int n = 200000;
  double se = 0, se2 = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    double e = g.exponential(2.0);
    CHECK(e > 0.0);
    se += e;
    se2 += e * e;
    double z = g.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(std::abs(se / n - 0.5) < 4.0 * 0.5 / std::sqrt((double)n));
  CHECK(std::abs(se2 / n - 0.5) < 0.02);  // E e^2 = 2/rate^2
  CHECK(std::abs(sn / n) < 4.0 / std::sqrt((double)n));
  CHECK(std::abs(sn2 / n - 1.0) < 0.02);
  CHECK_THROWS_AS((void)g.exponential(0.0), Error);
  CHECK_THROWS_AS((void)g.exponential(-1.0), Error);
}

TEST_CASE("geometric_failures matches its pmf") {
  RngStream g(5, 11);
  const double q = 0.4;
  const int n = 400000;
  std::vector<long> counts(8, 0);
  long tail = 0;
  for (int i = 0; i < n; ++i) {
    long k = g.geometric_failures(q);
    CHECK(k >= 0);
    if (k < (long)counts.size())
      counts[k]++;
    else
      tail++;
  }
  for (int k = 0; k < 8; ++k) {
    double p = std::pow(1 - q, k) * q;
    double se3 = 3.0 * std::sqrt(p * (1 - p) / n);
    CHECK(std::abs((double)counts[k] / n - p) < se3 + 1e-9);
  }
  CHECK((double)tail / n < 0.02);
  // q = 1 is the degenerate all-successes case
  RngStream h(5, 12);
  for (int i = 0; i < 100; ++i) CHECK(h.geometric_failures(1.0) == 0);
}

TEST_CASE("stream_base keeps label and index in separate halves") {
  uint64_t b1 = stream_base("alpha");
  uint64_t b2 = stream_base("beta");
  CHECK(b1 != b2);
  CHECK((b1 & 0xFFFFFFFFull) == 0);
  CHECK((b2 & 0xFFFFFFFFull) == 0);
  CHECK((b1 | 12345u) != (b2 | 12345u));
}

TEST_CASE("parallel sum_index is bitwise equal to its serial twin") {
  const std::size_t n = 100001;
  auto term = [](std::size_t i) {
    RngStream g(77, stream_base("sumtest") | i);
    return std::sin(1e-3 * (double)i) + g.uniform();
  };
  double ser = par::sum_index_serial(n, term);
  par::set_threads(1);
  double p1 = par::sum_index(n, term);
  par::set_threads(par::max_threads());
  double pm = par::sum_index(n, term);
  CHECK(ser == p1);
  CHECK(ser == pm);
}

TEST_CASE("parallel for_index writes every slot exactly once") {
  const std::size_t n = 50000;
  std::vector<int> hits(n, 0);
  par::for_index(n, [&](std::size_t i) { hits[i]++; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}
