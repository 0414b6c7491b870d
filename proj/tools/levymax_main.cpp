// Command line front end: run verification suites, dump simulated samples,
// evaluate the closed-form transforms and moments, and exercise the Lindley
// recursions. Exit codes: 0 all checks passed, 1 a scenario failed, 2 bad
// configuration or usage.
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levymax/errors.hpp"
#include "levymax/json_io.hpp"
#include "levymax/lindley.hpp"
#include "levymax/parallel.hpp"
#include "levymax/verify.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using namespace levymax;

struct CommonOpts {
  std::string out = ".";
  std::uint64_t seed = 42;
  bool seed_given = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out, "output directory (created if missing)");
  cmd->add_option("--seed", o.seed, "base seed")->each([&](const std::string&) {
    o.seed_given = true;
  });
  cmd->add_option("--threads", o.threads, "worker threads (0 = library default)");
}

void apply_threads(const CommonOpts& o) {
  if (o.threads < 0) fail(errc::invalid_config, "--threads must be >= 0");
  if (o.threads > 0) par::set_threads(o.threads);
}

LevyModel resolve_model(const std::string& preset, const std::string& model_file) {
  if (!model_file.empty()) return model_from_json_text(read_text_file(model_file));
  return model_preset(preset);
}

Side resolve_side(const LevyModel& m, const std::string& side_flag) {
  if (side_flag == "sp") return Side::SpectrallyPositive;
  if (side_flag == "sn") return Side::SpectrallyNegative;
  if (!side_flag.empty()) fail(errc::invalid_config, "--side must be sp or sn");
  switch (m.kind) {
    case ModelKind::CompoundPoissonDriftUp:
      return Side::SpectrallyPositive;
    case ModelKind::CompoundPoissonDriftDown:
      return Side::SpectrallyNegative;
    default:
      return Side::SpectrallyNegative;
  }
}

void write_outputs(const CommonOpts& o, const std::vector<std::pair<std::string, std::string>>&
                                             files) {
  std::filesystem::create_directories(o.out);
  for (const auto& [name, text] : files)
    write_text_file((std::filesystem::path(o.out) / name).string(), text);
}

int run_verify(const std::string& config_file, const std::string& suite_name,
               const CommonOpts& o) {
  apply_threads(o);
  std::vector<Scenario> suite;
  if (!config_file.empty())
    suite = suite_from_json_text(read_text_file(config_file));
  else if (suite_name == "acceptance")
    suite = acceptance_suite(o.seed);
  else if (suite_name == "smoke")
    suite = smoke_suite(o.seed);
  else if (suite_name == "calibration")
    suite = calibration_suite(o.seed);
  else
    fail(errc::invalid_config, "--suite must be acceptance, smoke or calibration");
  if (o.seed_given)
    for (auto& s : suite) s.seed = o.seed;

  const std::string hash = config_hash_hex(suite);
  const auto results = run_suite(suite);
  bool all_ok = true;
  for (const auto& r : results) {
    all_ok = all_ok && r.ok;
    std::printf("%-4s %-34s %-18s expect=%-6s p=%-12.6g stat=%.6g\n", r.ok ? "ok" : "FAIL",
                r.name.c_str(), r.check.c_str(), r.expect.c_str(), r.report.p_value,
                r.report.statistic);
  }
  std::printf("%zu scenario(s), %s\n", results.size(), all_ok ? "all ok" : "FAILURES");
  write_outputs(o, {{"report.json", suite_report_json(results)},
                    {"run_meta.json", run_meta_json(kVersion, o.seed, par::max_threads(), hash)}});
  return all_ok ? 0 : 1;
}

int run_simulate(const std::string& preset, const std::string& model_file,
                 const std::string& kind, double beta, double omega, std::int64_t n,
                 const CommonOpts& o) {
  apply_threads(o);
  const LevyModel m = resolve_model(preset, model_file);
  const InspectionParams params{beta, omega};
  validate(params);
  if (n < 1) fail(errc::invalid_config, "-n must be >= 1");

  std::string csv_name, csv_text;
  if (kind == "continuous") {
    std::vector<PathExtrema> rows(static_cast<std::size_t>(n));
    const std::uint64_t base = stream_base("cli_simulate_continuous");
    par::for_index(n, [&](std::int64_t i) {
      RngStream g(o.seed, base | std::uint64_t(i));
      rows[std::size_t(i)] = sample_continuous_pair(m, beta, g);
    });
    csv_name = "extrema.csv";
    csv_text = extrema_csv(rows);
  } else if (kind == "walk") {
    std::vector<InspectedWalk> rows(static_cast<std::size_t>(n));
    const std::uint64_t base = stream_base("cli_simulate_walk");
    par::for_index(n, [&](std::int64_t i) {
      RngStream g(o.seed, base | std::uint64_t(i));
      rows[std::size_t(i)] = sample_inspected_walk(m, params, g);
    });
    csv_name = "walks.csv";
    csv_text = walks_csv(rows);
  } else {
    fail(errc::invalid_config, "--kind must be continuous or walk");
  }
  write_outputs(o, {{csv_name, csv_text},
                    {"run_meta.json", run_meta_json(kVersion, o.seed, par::max_threads(),
                                                    "simulate:" + kind)}});
  std::printf("wrote %s/%s (%lld rows)\n", o.out.c_str(), csv_name.c_str(),
              static_cast<long long>(n));
  return 0;
}

int run_moments(const std::string& preset, const std::string& model_file,
                const std::string& side_flag, double beta, double omega) {
  const LevyModel m = resolve_model(preset, model_file);
  const Side side = resolve_side(m, side_flag);
  const InspectionParams params{beta, omega};
  validate(params);
  std::fputs(moment_report_json_text(moments_inspected(m, side, beta, omega)).c_str(), stdout);
  return 0;
}

int run_transforms(const std::string& preset, const std::string& model_file,
                   const std::string& side_flag, double beta, double omega, double alpha,
                   double gamma) {
  const LevyModel m = resolve_model(preset, model_file);
  const Side side = resolve_side(m, side_flag);
  const InspectionParams params{beta, omega};
  validate(params);
  const double cont = joint_lst_continuous(m, side, beta, alpha, gamma);
  const double tail = joint_lst_continuous(m, side, beta + omega, alpha, gamma);
  const double skel = joint_lst_inspected(m, side, beta, omega, alpha, gamma);
  std::printf("{\n  \"continuous\": %s,\n  \"continuous_tail\": %s,\n  \"inspected\": %s,\n"
              "  \"product\": %s,\n  \"mean_max_continuous\": %s\n}\n",
              double_repr(cont).c_str(), double_repr(tail).c_str(), double_repr(skel).c_str(),
              double_repr(tail * skel).c_str(),
              double_repr(mean_max_continuous(m, side, beta)).c_str());
  return 0;
}

int run_lindley(const std::vector<double>& increments) {
  if (increments.empty()) fail(errc::invalid_config, "--increments must be non-empty");
  const auto w = lindley_run(increments);
  std::vector<std::pair<double, double>> xs;
  for (std::size_t k = 0; k < increments.size(); ++k)
    xs.emplace_back(increments[k], 1.0);
  const auto cf = two_dim_closed_form(xs, xs.size());
  std::string walk = "[";
  for (std::size_t k = 0; k < w.size(); ++k)
    walk += (k ? "," : "") + double_repr(w[k]);
  walk += "]";
  std::printf("{\n  \"reflected\": %s,\n  \"max\": %s,\n  \"argmax_index\": %zu\n}\n",
              walk.c_str(), double_repr(cf.m).c_str(), cf.k);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exponential-horizon extrema of Levy processes under Poisson inspection"};
  app.require_subcommand(1);

  CommonOpts vo, so;
  std::string config_file, suite_name = "smoke";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--config", config_file, "suite config JSON (overrides --suite)")
      ->check(CLI::ExistingFile);
  verify->add_option("--suite", suite_name, "built-in suite: acceptance|smoke|calibration");
  add_common(verify, vo);

  auto* calibrate = app.add_subcommand("calibrate", "run the statistical calibration suite");
  CommonOpts co;
  add_common(calibrate, co);

  std::string sim_preset = "sp_cl", sim_model, sim_kind = "continuous";
  double sim_beta = 1.0, sim_omega = 1.0;
  std::int64_t sim_n = 1000;
  auto* simulate = app.add_subcommand("simulate", "dump simulated samples as CSV");
  simulate->add_option("--preset", sim_preset, "model preset name");
  simulate->add_option("--model", sim_model, "model JSON file")->check(CLI::ExistingFile);
  simulate->add_option("--kind", sim_kind, "continuous|walk");
  simulate->add_option("--beta", sim_beta, "horizon rate");
  simulate->add_option("--omega", sim_omega, "inspection rate (walk only)");
  simulate->add_option("-n", sim_n, "number of rows");
  add_common(simulate, so);

  std::string mom_preset = "sp_cl", mom_model, mom_side;
  double mom_beta = 1.0, mom_omega = 1.0;
  auto* moments = app.add_subcommand("moments", "closed-form inspected (max, argmax) moments");
  moments->add_option("--preset", mom_preset, "model preset name");
  moments->add_option("--model", mom_model, "model JSON file")->check(CLI::ExistingFile);
  moments->add_option("--side", mom_side, "sp|sn (BrownianDrift only)");
  moments->add_option("--beta", mom_beta, "horizon rate");
  moments->add_option("--omega", mom_omega, "inspection rate");

  std::string tr_preset = "sp_cl", tr_model, tr_side;
  double tr_beta = 1.0, tr_omega = 1.0, tr_alpha = 0.0, tr_gamma = 0.0;
  auto* transforms =
      app.add_subcommand("transforms", "evaluate the joint transforms and their factorization");
  transforms->add_option("--preset", tr_preset, "model preset name");
  transforms->add_option("--model", tr_model, "model JSON file")->check(CLI::ExistingFile);
  transforms->add_option("--side", tr_side, "sp|sn (BrownianDrift only)");
  transforms->add_option("--beta", tr_beta, "horizon rate");
  transforms->add_option("--omega", tr_omega, "inspection rate");
  transforms->add_option("--alpha", tr_alpha, "transform argument for the maximum");
  transforms->add_option("--gamma", tr_gamma, "transform argument for the argmax");

  std::vector<double> lin_increments;
  auto* lindley = app.add_subcommand("lindley", "run the reflected recursion on given increments");
  lindley->add_option("--increments", lin_increments, "comma-separated increments")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(config_file, suite_name, vo);
    if (calibrate->parsed()) {
      std::string cal_cfg;
      return run_verify(cal_cfg, "calibration", co);
    }
    if (simulate->parsed())
      return run_simulate(sim_preset, sim_model, sim_kind, sim_beta, sim_omega, sim_n, so);
    if (moments->parsed()) return run_moments(mom_preset, mom_model, mom_side, mom_beta, mom_omega);
    if (transforms->parsed())
      return run_transforms(tr_preset, tr_model, tr_side, tr_beta, tr_omega, tr_alpha, tr_gamma);
    if (lindley->parsed()) return run_lindley(lin_increments);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
