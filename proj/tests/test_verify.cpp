#include "levymax/verify.hpp"

#include <algorithm>

#include "doctest.h"
#include "levymax/errors.hpp"
#include "levymax/parallel.hpp"

using namespace levymax;

namespace {

Scenario base_scenario(const char* name, const char* check, std::int64_t n) {
  Scenario s;
  s.name = name;
  s.check = check;
  s.model = model_preset("sp_cl");
  s.params = {0.5, 1.0};
  s.sample_size = n;
  s.seed = 2026;
  return s;
}

}  // namespace

TEST_CASE("scenario plumbing: extras, side, dispatch guards") {
  Scenario s = base_scenario("plumb", "max_decomposition", 100);
  CHECK(extra_or(s, "missing", 7.5) == 7.5);
  s.extras["k"] = 3.0;
  CHECK(extra_or(s, "k", 7.5) == 3.0);

  CHECK(scenario_side(s) == Side::SpectrallyPositive);
  s.model = model_preset("sn_cl");
  CHECK(scenario_side(s) == Side::SpectrallyNegative);
  s.model = model_preset("sn_bm");
  CHECK(scenario_side(s) == Side::SpectrallyNegative);
  s.extras["side"] = 0.0;
  CHECK(scenario_side(s) == Side::SpectrallyPositive);

  Scenario bad = base_scenario("bad", "no_such_check", 100);
  CHECK_THROWS_AS(run_scenario(bad), Error);
  bad.check = "max_decomposition";
  bad.expect = "maybe";
  CHECK_THROWS_AS(run_scenario(bad), Error);
  bad.expect = "pass";
  bad.sample_size = 0;
  CHECK_THROWS_AS(run_scenario(bad), Error);
}

TEST_CASE("run_suite sorts by name and rejects duplicates") {
  std::vector<Scenario> suite;
  suite.push_back(base_scenario("b_sum", "geometric_sum", 20000));
  suite.push_back(base_scenario("a_sum", "geometric_sum", 20000));
  auto results = run_suite(suite);
  REQUIRE(results.size() == 2);
  CHECK(results[0].name == "a_sum");
  CHECK(results[1].name == "b_sum");
  CHECK(results[0].ok);
  CHECK(results[1].ok);

  suite.push_back(base_scenario("a_sum", "geometric_sum", 20000));
  CHECK_THROWS_AS(run_suite(suite), Error);
}

TEST_CASE("max decomposition: identity holds, broken tail rate rejected") {
  Scenario s = base_scenario("md", "max_decomposition", 20000);
  auto r = run_scenario(s);
  CHECK(r.ok);
  CHECK(r.report.pass);
  CHECK(r.report.n1 == 20000);

  s.name = "md_broken";
  s.expect = "reject";
  s.extras["broken"] = 1.0;
  auto rb = run_scenario(s);
  CHECK(rb.ok);
  CHECK_FALSE(rb.report.pass);
}

TEST_CASE("max decomposition is reproducible and thread-count invariant") {
  Scenario s = base_scenario("md_det", "max_decomposition", 5000);
  const int saved = par::max_threads();
  par::set_threads(1);
  const auto a = verify_max_decomposition(s);
  const auto b = verify_max_decomposition(s);
  par::set_threads(2);
  const auto c = verify_max_decomposition(s);
  par::set_threads(saved);
  CHECK(a.statistic == b.statistic);
  CHECK(a.p_value == b.p_value);
  CHECK(a.statistic == c.statistic);
  CHECK(a.p_value == c.p_value);
}

TEST_CASE("pair decomposition: joint law matches, shuffled pairing rejected") {
  Scenario s = base_scenario("pd", "pair_decomposition", 2000);
  s.extras["permutations"] = 100.0;
  auto r = run_scenario(s);
  CHECK(r.ok);

  s.name = "pd_swap";
  s.expect = "reject";
  s.extras["swap_g"] = 1.0;
  auto rb = run_scenario(s);
  CHECK(rb.ok);

  // vanishing inspection rate: the walk contributes (0, 0) a.s. and both
  // sides collapse to the same continuous pair
  Scenario tiny = base_scenario("pd_tiny", "pair_decomposition", 1500);
  tiny.params = {0.5, 1e-6};
  tiny.extras["permutations"] = 100.0;
  CHECK(run_scenario(tiny).ok);

  Scenario bm = base_scenario("pd_bm", "pair_decomposition", 2000);
  bm.model = model_preset("sn_bm");
  CHECK_THROWS_AS(run_scenario(bm), Error);
}

TEST_CASE("cascade: refinement matches direct law, guards fire") {
  Scenario s = base_scenario("ca", "cascade", 20000);
  s.extras = {{"factor", 2.0}, {"truncation", 20.0}};
  CHECK(run_scenario(s).ok);

  s.name = "ca_inv";
  s.check = "cascade_invariance";
  s.extras = {{"factor", 2.0}, {"truncation", 20.0}, {"factor2", 4.0}, {"truncation2", 10.0}};
  CHECK(run_scenario(s).ok);

  s.name = "ca_broken";
  s.check = "cascade";
  s.expect = "reject";
  s.extras = {{"factor", 2.0}, {"truncation", 20.0}, {"broken", 1.0}};
  CHECK(run_scenario(s).ok);

  // one stage at factor 2 leaves more than a tenth of the mean on the table
  s.name = "ca_coarse";
  s.expect = "pass";
  s.extras = {{"factor", 2.0}, {"truncation", 1.0}};
  try {
    run_scenario(s);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::truncation_too_coarse);
  }
  s.extras = {{"factor", 1.0}, {"truncation", 20.0}};
  CHECK_THROWS_AS(run_scenario(s), Error);
}

TEST_CASE("geometric compounding of geometric sums") {
  Scenario s = base_scenario("gs", "geometric_sum", 200000);
  s.extras = {{"p", 0.5}, {"p_prime", 0.5}};
  CHECK(run_scenario(s).ok);

  // degenerate inner sum: every term is exactly one trial
  s.name = "gs_unit";
  s.extras = {{"p", 1.0}, {"p_prime", 0.4}};
  CHECK(run_scenario(s).ok);

  s.name = "gs_wrong";
  s.expect = "reject";
  s.extras = {{"p", 0.5}, {"p_prime", 0.5}, {"wrong_null", 1.0}, {"threshold", 1e-6}};
  auto rw = run_scenario(s);
  CHECK(rw.ok);
  CHECK(rw.report.p_value <= 1e-6);

  s.extras = {{"p", 1.5}};
  CHECK_THROWS_AS(run_scenario(s), Error);
}

TEST_CASE("inspection count pmf scenario") {
  Scenario s = base_scenario("cnt", "count_pmf", 200000);
  s.params = {1.0, 3.0};
  auto r = run_scenario(s);
  CHECK(r.ok);
  CHECK(r.report.p_value > 0.01);
}

TEST_CASE("spectrally negative marginal: atom plus exponential tail") {
  Scenario s = base_scenario("snm", "sn_marginal", 100000);
  s.model = model_preset("sn_bm");
  s.params = {1.0, 1.0};
  CHECK(run_scenario(s).ok);

  s.name = "snm_broken";
  s.expect = "reject";
  s.extras["broken"] = 1.0;
  CHECK(run_scenario(s).ok);

  // dense-inspection proxy: the atom shrinks towards zero but the
  // exponential tail rate is unchanged
  Scenario dense = base_scenario("snm_dense", "sn_marginal", 20000);
  dense.model = model_preset("sn_bm");
  dense.params = {1.0, 1000.0};
  CHECK(run_scenario(dense).ok);

  Scenario sp = base_scenario("snm_sp", "sn_marginal", 1000);
  CHECK_THROWS_AS(run_scenario(sp), Error);
}

TEST_CASE("moment check: six analytic moments within plug-in bands") {
  Scenario s = base_scenario("mom", "moments", 200000);
  s.params = {1.0, 1.0};
  const auto chk = moment_check(s);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(chk.se[k] > 0.0);
    CHECK(std::abs(chk.z[k]) < 4.0);
  }
  CHECK(chk.analytic.mean_max == doctest::Approx(0.13343715596867991).epsilon(1e-12));
  CHECK(run_scenario(s).ok);

  s.name = "mom_sn";
  s.model = model_preset("sn_bm");
  const auto sn = moment_check(s);
  CHECK(sn.analytic.covariance > 0.0);           // later argmax, higher peak
  CHECK(sn.empirical.covariance > 0.0);
  CHECK(run_scenario(s).ok);

  s.name = "mom_broken";
  s.model = model_preset("sp_cl");
  s.expect = "reject";
  s.extras["broken"] = 1.0;
  CHECK(run_scenario(s).ok);
}

TEST_CASE("fixed point of the killed recursion matches the walk maximum") {
  Scenario s = base_scenario("fp", "fixed_point", 20000);
  s.params = {1.0, 1.0};
  CHECK(run_scenario(s).ok);

  s.name = "fp_broken";
  s.expect = "reject";
  s.extras["broken"] = 1.0;
  CHECK(run_scenario(s).ok);
}

TEST_CASE("delayed-ruin equivalence: excursion clocks vs inspection epochs") {
  Scenario s = base_scenario("par", "parisian", 20000);
  s.params = {1.0, 1.0};
  auto r = run_scenario(s);
  CHECK(r.ok);

  s.name = "par_broken";
  s.expect = "reject";
  s.extras["broken"] = 1.0;
  CHECK(run_scenario(s).ok);

  // premium-dominant surplus: ruin is nearly impossible and both samplers
  // agree on a near-zero frequency (too few hits for the time comparison)
  Scenario safe = base_scenario("par_safe", "parisian", 8000);
  safe.model = make_cp_up(2000.0, 1.0, 1.0);
  safe.params = {1.0, 1.0};
  auto rs = run_scenario(safe);
  CHECK(rs.ok);
  CHECK(std::abs(rs.report.statistic) <= 3.0);

  // dense-inspection proxy: detection converges to the classical hitting
  // time on both sides
  Scenario dense = base_scenario("par_dense", "parisian", 5000);
  dense.params = {1.0, 100.0};
  dense.extras["escape_level"] = 12.0;
  CHECK(run_scenario(dense).ok);

  Scenario bm = base_scenario("par_bm", "parisian", 1000);
  bm.model = model_preset("sn_bm");
  CHECK_THROWS_AS(run_scenario(bm), Error);
}

TEST_CASE("calibration scenarios report rejection rates in band") {
  Scenario ks = base_scenario("cal_ks", "calibration_ks", 0);
  ks.sample_size = 1;
  ks.extras = {{"replications", 100.0}, {"n", 400.0}};
  auto rks = run_scenario(ks);
  CHECK(rks.ok);
  CHECK(rks.report.statistic >= 0.01);
  CHECK(rks.report.statistic <= 0.12);
  CHECK(rks.report.threshold == 0.5);

  Scenario chi = base_scenario("cal_chi", "calibration_chi", 1);
  chi.extras = {{"replications", 100.0}, {"n", 2000.0}};
  CHECK(run_scenario(chi).ok);

  Scenario en = base_scenario("cal_en", "calibration_energy", 1);
  en.extras = {{"replications", 100.0}, {"n", 80.0}, {"permutations", 100.0}};
  CHECK(run_scenario(en).ok);

  Scenario dc = base_scenario("cal_dc", "calibration_dcov", 1);
  dc.extras = {{"replications", 100.0}, {"n", 100.0}, {"permutations", 100.0}};
  CHECK(run_scenario(dc).ok);
}

TEST_CASE("bundled suites are well formed") {
  for (auto builder : {acceptance_suite, smoke_suite, calibration_suite}) {
    auto suite = builder(42);
    REQUIRE(!suite.empty());
    std::vector<std::string> names;
    for (const auto& s : suite) {
      names.push_back(s.name);
      CHECK((s.expect == "pass" || s.expect == "reject"));
      CHECK(s.sample_size >= 1);
      validate(s.model);
      validate(s.params);
    }
    std::sort(names.begin(), names.end());
    CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
  }
  // negative controls are declared for every statistical family in the big run
  auto acc = acceptance_suite(42);
  const auto rejects = std::count_if(acc.begin(), acc.end(), [](const Scenario& s) {
    return s.expect == "reject";
  });
  CHECK(rejects >= 6);
}
