#include "levymax/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "levymax/errors.hpp"

namespace levymax {
namespace {

using nlohmann::json;

json report_json(const TestReport& r) {
  return json{{"test_name", r.test_name}, {"statistic", r.statistic}, {"p_value", r.p_value},
              {"threshold", r.threshold}, {"pass", r.pass},           {"n1", r.n1},
              {"n2", r.n2},               {"seed", r.seed}};
}

json moment_json(const MomentReport& m) {
  return json{{"mean_max", m.mean_max},   {"mean_argmax", m.mean_argmax},
              {"cross_moment", m.cross_moment}, {"covariance", m.covariance},
              {"var_max", m.var_max},     {"var_argmax", m.var_argmax}};
}

json model_json(const LevyModel& m) { return json::parse(model_to_json_text(m)); }

json scenario_json(const Scenario& s) {
  json extras = json::object();
  for (const auto& [k, v] : s.extras) extras[k] = v;
  return json{{"name", s.name},
              {"check", s.check},
              {"expect", s.expect},
              {"model", model_json(s.model)},
              {"beta", s.params.beta},
              {"omega", s.params.omega},
              {"sample_size", s.sample_size},
              {"seed", s.seed},
              {"extras", extras}};
}

double number_field(const json& j, const char* key, const std::string& where) {
  if (!j.at(key).is_number())
    fail(errc::invalid_config, where + ": field " + key + " must be a number");
  return j.at(key).get<double>();
}

Scenario scenario_from_json(const json& j, std::size_t index) {
  const std::string where = "scenario #" + std::to_string(index);
  if (!j.is_object()) fail(errc::invalid_config, where + ": expected an object");
  static const std::set<std::string> kKnown = {"name",   "check",       "expect",
                                               "preset", "model",       "beta",
                                               "omega",  "sample_size", "seed",
                                               "extras"};
  for (const auto& [k, v] : j.items())
    if (!kKnown.count(k)) fail(errc::invalid_config, where + ": unknown field " + k);
  for (const char* req : {"name", "check"})
    if (!j.contains(req) || !j.at(req).is_string())
      fail(errc::invalid_config, where + ": missing string field " + std::string(req));

  Scenario s;
  s.name = j.at("name").get<std::string>();
  s.check = j.at("check").get<std::string>();
  if (!known_check(s.check)) fail(errc::invalid_config, where + ": unknown check " + s.check);
  if (j.contains("expect")) s.expect = j.at("expect").get<std::string>();
  if (s.expect != "pass" && s.expect != "reject")
    fail(errc::invalid_config, where + ": expect must be pass or reject");

  const bool has_preset = j.contains("preset"), has_model = j.contains("model");
  if (has_preset == has_model)
    fail(errc::invalid_config, where + ": exactly one of preset/model is required");
  s.model = has_preset ? model_preset(j.at("preset").get<std::string>())
                       : model_from_json_text(j.at("model").dump());

  if (j.contains("beta")) s.params.beta = number_field(j, "beta", where);
  if (j.contains("omega")) s.params.omega = number_field(j, "omega", where);
  validate(s.params);
  if (j.contains("sample_size")) {
    if (!j.at("sample_size").is_number_integer())
      fail(errc::invalid_config, where + ": sample_size must be an integer");
    s.sample_size = j.at("sample_size").get<std::int64_t>();
    if (s.sample_size < 1) fail(errc::invalid_config, where + ": sample_size must be >= 1");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer() || j.at("seed").get<std::int64_t>() < 0)
      fail(errc::invalid_config, where + ": seed must be a nonnegative integer");
    s.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("extras")) {
    if (!j.at("extras").is_object())
      fail(errc::invalid_config, where + ": extras must be an object");
    for (const auto& [k, v] : j.at("extras").items()) {
      if (!v.is_number()) fail(errc::invalid_config, where + ": extras." + k + " must be a number");
      s.extras[k] = v.get<double>();
    }
  }
  return s;
}

}  // namespace

std::string double_repr(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string report_json_text(const TestReport& r) { return report_json(r).dump(2) + "\n"; }

std::string moment_report_json_text(const MomentReport& m) { return moment_json(m).dump(2) + "\n"; }

std::string suite_report_json(const std::vector<ScenarioResult>& results) {
  json arr = json::array();
  bool all_ok = true;
  for (const auto& r : results) {
    all_ok = all_ok && r.ok;
    arr.push_back(json{{"name", r.name},
                       {"check", r.check},
                       {"expect", r.expect},
                       {"ok", r.ok},
                       {"report", report_json(r.report)}});
  }
  return json{{"all_ok", all_ok}, {"results", arr}}.dump(2) + "\n";
}

std::string suite_to_canonical_json(std::vector<Scenario> suite) {
  std::sort(suite.begin(), suite.end(),
            [](const Scenario& a, const Scenario& b) { return a.name < b.name; });
  json arr = json::array();
  for (const auto& s : suite) arr.push_back(scenario_json(s));
  return json{{"suite", arr}}.dump() + "\n";
}

std::string config_hash_hex(const std::vector<Scenario>& suite) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(suite_to_canonical_json(suite))));
  return buf;
}

std::string run_meta_json(const std::string& version, std::uint64_t seed, int threads,
                          const std::string& config_hash) {
  return json{{"version", version}, {"seed", seed}, {"threads", threads},
              {"config_hash", config_hash}}
             .dump(2) +
         "\n";
}

std::vector<Scenario> suite_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::invalid_config, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(errc::invalid_config, "config root must be an object");
  for (const auto& [k, v] : doc.items())
    if (k != "suite") fail(errc::invalid_config, "unknown top-level field " + k);
  if (!doc.contains("suite") || !doc.at("suite").is_array() || doc.at("suite").empty())
    fail(errc::invalid_config, "config needs a non-empty suite array");
  std::vector<Scenario> out;
  for (std::size_t i = 0; i < doc.at("suite").size(); ++i)
    out.push_back(scenario_from_json(doc.at("suite")[i], i));
  return out;
}

std::string extrema_csv(const std::vector<PathExtrema>& rows) {
  std::string out = "max,argmax,terminal,horizon\n";
  for (const auto& r : rows)
    out += double_repr(r.max_value) + "," + double_repr(r.argmax_time) + "," +
           double_repr(r.terminal_value) + "," + double_repr(r.horizon) + "\n";
  return out;
}

std::string walks_csv(const std::vector<InspectedWalk>& rows) {
  std::string out = "count,max_value,argmax_index,argmax_epoch,terminal\n";
  for (const auto& r : rows)
    out += std::to_string(r.count) + "," + double_repr(r.max_value) + "," +
           std::to_string(r.argmax_index) + "," + double_repr(r.argmax_epoch) + "," +
           double_repr(r.values.back()) + "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::invalid_config, "cannot open for writing: " + path);
  f << text;
  if (!f.good()) fail(errc::invalid_config, "short write: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(errc::invalid_config, "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace levymax
