#pragma once
// JSON and CSV serialization for configs, reports and sample dumps. All
// serializers are deterministic: object keys are emitted in sorted order and
// doubles print via double_repr, so byte-identical inputs give byte-identical
// documents (the basis of the cross-thread reproducibility checks).
#include <string>
#include <vector>

#include "levymax/inspection.hpp"
#include "levymax/path_engine.hpp"
#include "levymax/stats.hpp"
#include "levymax/transforms.hpp"
#include "levymax/verify.hpp"

namespace levymax {

// shortest decimal string that round-trips the exact double (%.17g)
std::string double_repr(double x);

std::string report_json_text(const TestReport& r);
std::string moment_report_json_text(const MomentReport& m);

// full run document: results array plus an all_ok flag
std::string suite_report_json(const std::vector<ScenarioResult>& results);

// canonical form of a scenario list: sorted by name, sorted keys, all
// defaults spelled out; equal suites serialize to equal bytes
std::string suite_to_canonical_json(std::vector<Scenario> suite);

// fnv1a64 of the canonical suite document, as 16 hex digits
std::string config_hash_hex(const std::vector<Scenario>& suite);

// run metadata written next to every report
std::string run_meta_json(const std::string& version, std::uint64_t seed, int threads,
                          const std::string& config_hash);

// parse a config document {"suite": [scenario...]}; scenarios take either
// "preset" or an inline "model" object; unknown fields are rejected
std::vector<Scenario> suite_from_json_text(const std::string& text);

std::string extrema_csv(const std::vector<PathExtrema>& rows);
std::string walks_csv(const std::vector<InspectedWalk>& rows);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace levymax
