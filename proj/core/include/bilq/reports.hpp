// Copyright 2026 The bilq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file
/// @brief Machine-readable run reports.  A suite run produces a SuiteResult
/// whose JSON rendering is deterministic (identical inputs give
/// byte-identical text); wall time is therefore written to a separate
/// `.timing.json` sibling rather than into the report itself.

#ifndef BILQ_REPORTS_HPP_
#define BILQ_REPORTS_HPP_

#include <map>
#include <string>
#include <vector>

#include "bilq/quantization.hpp"
#include "bilq/symbols.hpp"
#include "bilq/timefreq.hpp"
#include "bilq/weights.hpp"

namespace bilq {

/// One verified case: a stable name, a hash of the inputs that fed it,
/// named scalar metrics, and the verdict.
struct CaseRecord {
  std::string name;
  std::string inputs_hash;
  std::map<std::string, double> metrics;
  bool pass = false;
};

/// Result of one verification suite.  `aggregate_pass` is true exactly when
/// every case passes.  `wall_seconds` is informational and excluded from the
/// deterministic JSON.
struct SuiteResult {
  std::string suite;
  std::vector<CaseRecord> cases;
  bool aggregate_pass = false;
  double wall_seconds = 0.0;
};

/// Recomputes aggregate_pass from the cases.
void finalize(SuiteResult& result);

/// Deterministic JSON text of the result (no timing data).
std::string suite_result_to_json(const SuiteResult& result);

/// Writes `<dir>/<suite>.json` (deterministic report) and
/// `<dir>/<suite>.timing.json` (wall time only).
void write_suite_result(const SuiteResult& result, const std::string& dir);

/// JSON renderings of the analysis reports, for the CLI commands.
std::string class_norm_report_to_json(const ClassNormReport& report);
std::string decay_fit_report_to_json(const DecayFitReport& report);
std::string moderation_report_to_json(const ModerationReport& report);
std::string equivalence_reports_to_json(
    const std::vector<EquivalenceReport>& reports);
std::string ratio_report_to_json(const RatioReport& report);

}  // namespace bilq

#endif  // BILQ_REPORTS_HPP_
