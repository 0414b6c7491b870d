// Timing comparison of the OpenMP kernels against their serial twins, with a
// bitwise agreement check on every pair. Row format:
//   kernel  n  serial_ms  parallel_ms  speedup  agree
#include <chrono>
#include <cstdio>
#include <vector>

#include "levymax/inspection.hpp"
#include "levymax/parallel.hpp"
#include "levymax/path_engine.hpp"
#include "levymax/stats.hpp"

using namespace levymax;

namespace {

template <class F>
double ms(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* kernel, std::int64_t n, double serial_ms, double parallel_ms, bool agree) {
  std::printf("%-18s n=%-8lld serial=%9.2f ms  parallel=%9.2f ms  speedup=%5.2fx  %s\n", kernel,
              static_cast<long long>(n), serial_ms, parallel_ms, serial_ms / parallel_ms,
              agree ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", par::max_threads());
  const LevyModel sp = model_preset("sp_cl");
  const InspectionParams params{0.5, 1.0};

  {
    const std::int64_t n = 400000;
    std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    const std::uint64_t base = stream_base("bench_walks");
    auto body = [&](std::vector<double>& out) {
      return [&out, &sp, &params, base](std::int64_t i) {
        RngStream g(42, base | std::uint64_t(i));
        out[std::size_t(i)] = sample_inspected_walk(sp, params, g).max_value;
      };
    };
    const double ts = ms([&] { par::for_index_serial(n, body(a)); });
    const double tp = ms([&] { par::for_index(n, body(b)); });
    row("walk_maxima", n, ts, tp, a == b);
  }

  {
    const std::int64_t n = 200000;
    std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    const std::uint64_t base = stream_base("bench_extrema");
    auto body = [&](std::vector<double>& out) {
      return [&out, &sp, base](std::int64_t i) {
        RngStream g(42, base | std::uint64_t(i));
        out[std::size_t(i)] = sample_continuous_pair(sp, 0.5, g).max_value;
      };
    };
    const double ts = ms([&] { par::for_index_serial(n, body(a)); });
    const double tp = ms([&] { par::for_index(n, body(b)); });
    row("continuous_pairs", n, ts, tp, a == b);
  }

  {
    const std::int64_t n = 1500;
    std::vector<std::array<double, 2>> xs(static_cast<std::size_t>(n)),
        ys(static_cast<std::size_t>(n));
    RngStream g(7, stream_base("bench_energy"));
    for (auto& p : xs) p = {g.normal(), g.normal()};
    for (auto& p : ys) p = {g.normal() + 0.05, g.normal()};
    const auto ax = sample_2d(std::vector<std::array<double, 2>>(xs));
    const auto ay = sample_2d(std::vector<std::array<double, 2>>(ys));
    TestReport rs, rp;
    const double ts = ms([&] { rs = energy_permutation_2d_serial(ax, ay, 200, 11, 0.05); });
    const double tp = ms([&] { rp = energy_permutation_2d(ax, ay, 200, 11, 0.05); });
    row("energy_200perm", n, ts, tp,
        rs.statistic == rp.statistic && rs.p_value == rp.p_value && rs.pass == rp.pass);
  }

  return 0;
}
