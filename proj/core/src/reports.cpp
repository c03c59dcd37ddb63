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

#include "bilq/reports.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "bilq/io.hpp"

namespace bilq {
namespace {

using nlohmann::json;

// JSON has no encoding for non-finite numbers; nlohmann would emit null.
// Keep them readable and deterministic as strings instead.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json number_array(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(number(v));
  return arr;
}

json pair_to_json(const QuantizationPair& pair) {
  return {{"r", number(pair.r)}, {"t", number(pair.t)}};
}

json decay_fit_to_json(const DecayFitReport& report) {
  return {{"rates", number_array(report.rates)},
          {"powers", number_array(report.powers)},
          {"log_prefactor", number(report.log_prefactor)},
          {"residual", number(report.residual)},
          {"pass", report.pass}};
}

}  // namespace

void finalize(SuiteResult& result) {
  result.aggregate_pass =
      !result.cases.empty() &&
      std::all_of(result.cases.begin(), result.cases.end(),
                  [](const CaseRecord& c) { return c.pass; });
}

std::string suite_result_to_json(const SuiteResult& result) {
  json doc;
  doc["suite"] = result.suite;
  doc["aggregate_pass"] = result.aggregate_pass;
  doc["cases"] = json::array();
  for (const CaseRecord& record : result.cases) {
    json metrics = json::object();
    for (const auto& [key, value] : record.metrics) {
      metrics[key] = number(value);
    }
    doc["cases"].push_back({{"name", record.name},
                            {"inputs_hash", record.inputs_hash},
                            {"metrics", metrics},
                            {"pass", record.pass}});
  }
  return doc.dump(2) + "\n";
}

void write_suite_result(const SuiteResult& result, const std::string& dir) {
  write_text_file(dir + "/" + result.suite + ".json",
                  suite_result_to_json(result));
  json timing;
  timing["suite"] = result.suite;
  timing["wall_seconds"] = number(result.wall_seconds);
  write_text_file(dir + "/" + result.suite + ".timing.json",
                  timing.dump(2) + "\n");
}

std::string class_norm_report_to_json(const ClassNormReport& report) {
  json doc;
  doc["h_fit"] = number(report.h_fit);
  doc["max_order"] = report.max_order;
  doc["log_prefactor"] = number(report.log_prefactor);
  doc["h_ladder"] = number_array(report.h_ladder);
  doc["blow_up_order"] = report.blow_up_order;
  doc["pass"] = report.pass;
  doc["table"] = json::array();
  for (const ClassOrderEntry& entry : report.table) {
    doc["table"].push_back(
        {{"orders", entry.orders}, {"log_sup_ratio", number(entry.log_sup_ratio)}});
  }
  return doc.dump(2) + "\n";
}

std::string decay_fit_report_to_json(const DecayFitReport& report) {
  return decay_fit_to_json(report).dump(2) + "\n";
}

std::string moderation_report_to_json(const ModerationReport& report) {
  json doc;
  doc["constant"] = number(report.constant);
  doc["submultiplicative_rate"] = number(report.submultiplicative_rate);
  doc["growth_ratio"] = number(report.growth_ratio);
  doc["samples_tested"] = report.samples_tested;
  doc["pass"] = report.pass;
  return doc.dump(2) + "\n";
}

std::string equivalence_reports_to_json(
    const std::vector<EquivalenceReport>& reports) {
  json arr = json::array();
  for (const EquivalenceReport& report : reports) {
    arr.push_back({{"pair_from", pair_to_json(report.pair_from)},
                   {"pair_to", pair_to_json(report.pair_to)},
                   {"rel_error", number(report.rel_error)},
                   {"test_battery_id", report.test_battery_id},
                   {"pass", report.pass}});
  }
  return json{{"comparisons", arr}}.dump(2) + "\n";
}

std::string ratio_report_to_json(const RatioReport& report) {
  json doc;
  doc["ratios"] = number_array(report.ratios);
  doc["max_ratio"] = number(report.max_ratio);
  doc["battery_id"] = report.battery_id;
  return doc.dump(2) + "\n";
}

}  // namespace bilq
