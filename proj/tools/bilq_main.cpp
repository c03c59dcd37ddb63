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
/// @brief The `bilq` command-line tool.  Every subcommand reads one JSON
/// config file naming its inputs, parameters, and outputs; flags only select
/// the config and override the seed, the output directory, and the worker
/// cap.  Runs are reproducible from the config plus the input files alone,
/// and report JSON is byte-identical across identical runs (wall time goes
/// to separate `.timing.json` files).  Exit codes: 0 pass, 1 numeric
/// failure or failed verdict, 2 usage/config error, 3 I/O error.  Output
/// files of a failed run are removed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bilq/battery.hpp"
#include "bilq/errors.hpp"
#include "bilq/field.hpp"
#include "bilq/grid.hpp"
#include "bilq/io.hpp"
#include "bilq/oracles.hpp"
#include "bilq/parallel.hpp"
#include "bilq/quantization.hpp"
#include "bilq/reports.hpp"
#include "bilq/symbols.hpp"
#include "bilq/timefreq.hpp"
#include "bilq/verify.hpp"
#include "bilq/weights.hpp"

namespace {

using bilq::IoError;
using bilq::SampledField;
using bilq::UsageError;
using nlohmann::json;

/// Resolved run context: where inputs and outputs live and which global
/// overrides the command line supplied.
struct RunContext {
  std::filesystem::path config_dir;
  std::filesystem::path out_dir;
  bool seed_overridden = false;
  std::uint64_t seed = 0;
  int workers = 0;
};

/// Tracks files written during a command so that a failing run leaves no
/// partial outputs behind.  `commit()` keeps them; destruction without a
/// commit removes every tracked path (and the temporary siblings the atomic
/// writers may have left).
class OutputGuard {
 public:
  OutputGuard() = default;
  OutputGuard(const OutputGuard&) = delete;
  OutputGuard& operator=(const OutputGuard&) = delete;

  ~OutputGuard() {
    if (committed_) return;
    for (const std::string& path : paths_) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
      std::filesystem::remove(path + ".tmp", ec);
    }
  }

  void track(const std::string& path) { paths_.push_back(path); }

  void write_field(const SampledField& field, const std::string& stem) {
    track(stem + ".json");
    track(stem + ".f64");
    bilq::write_field(field, stem);
  }

  void write_field(const bilq::PhaseSpaceField& field,
                   const std::string& stem) {
    track(stem + ".json");
    track(stem + ".f64");
    bilq::write_field(field, stem);
  }

  void write_text(const std::string& path, const std::string& content) {
    track(path);
    bilq::write_text_file(path, content);
  }

  void write_csv(const SampledField& field, int axis, const std::string& path) {
    track(path);
    bilq::write_csv_slice(field, axis, path);
  }

  void commit() { committed_ = true; }

 private:
  std::vector<std::string> paths_;
  bool committed_ = false;
};

json load_config(const std::string& path) {
  const std::string text = bilq::read_text_file(path);
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw UsageError("malformed JSON config: " + path);
  }
  if (!doc.is_object()) {
    throw UsageError("config must be a JSON object: " + path);
  }
  return doc;
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw UsageError(std::string("config is missing required key '") + key +
                     "'");
  }
  return doc.at(key);
}

std::string require_string(const json& doc, const char* key) {
  const json& value = require(doc, key);
  if (!value.is_string()) {
    throw UsageError(std::string("config key '") + key +
                     "' must be a string");
  }
  return value.get<std::string>();
}

double require_number(const json& doc, const char* key) {
  const json& value = require(doc, key);
  if (!value.is_number()) {
    throw UsageError(std::string("config key '") + key +
                     "' must be a number");
  }
  return value.get<double>();
}

/// Resolves an input path: relative paths are read against the config
/// file's directory so a config and its inputs travel together.
std::string input_path(const RunContext& ctx, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p.string();
  return (ctx.config_dir / p).string();
}

/// Resolves an output path against the run's output directory.
std::string output_path(const RunContext& ctx, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p.string();
  return (ctx.out_dir / p).string();
}

bilq::QuantizationPair parse_pair(const json& doc, const char* key) {
  const json& value = require(doc, key);
  if (!value.is_object()) {
    throw UsageError(std::string("config key '") + key +
                     "' must be an object with 'r' and 't'");
  }
  bilq::QuantizationPair pair;
  pair.r = require_number(value, "r");
  pair.t = require_number(value, "t");
  pair.validate();
  return pair;
}

/// An exponent entry is a number or the string "inf".
double parse_exponent(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const json& value = doc.at(key);
  if (value.is_string() && value.get<std::string>() == "inf") {
    return bilq::MixedExponents::kInf;
  }
  if (value.is_number()) return value.get<double>();
  throw UsageError(std::string("config key '") + key +
                   "' must be a number or \"inf\"");
}

bilq::WeightModel parse_weight(const json& doc, const char* key) {
  if (!doc.contains(key)) return bilq::WeightModel::one();
  const json& value = doc.at(key);
  if (!value.is_object()) {
    throw UsageError(std::string("config key '") + key +
                     "' must be a weight-model object with 'groups'");
  }
  return bilq::weight_model_from_json(value.dump());
}

bilq::GridSpec parse_grid(const json& doc, const char* key) {
  const json& value = require(doc, key);
  if (!value.is_array() || value.empty()) {
    throw UsageError(std::string("config key '") + key +
                     "' must be a nonempty array of axes");
  }
  std::vector<bilq::AxisSpec> axes;
  for (const json& entry : value) {
    if (!entry.is_object()) {
      throw UsageError("grid axes must be objects with half_width and points");
    }
    axes.emplace_back(require_number(entry, "half_width"),
                      static_cast<int>(require_number(entry, "points")));
  }
  return bilq::GridSpec(std::move(axes));
}

bilq::GevreyClassSpec parse_class(const json& doc, const char* key) {
  bilq::GevreyClassSpec spec;
  if (!doc.contains(key)) return spec;
  const json& value = doc.at(key);
  if (!value.is_object()) {
    throw UsageError(std::string("config key '") + key +
                     "' must be an object");
  }
  spec.sigma1 = value.value("sigma1", 1.0);
  spec.s2 = value.value("s2", 1.0);
  spec.s3 = value.value("s3", 1.0);
  const std::string flavor = value.value("flavor", std::string("roumieu"));
  if (flavor == "roumieu") {
    spec.flavor = bilq::GevreyClassSpec::Flavor::kRoumieu;
  } else if (flavor == "beurling") {
    spec.flavor = bilq::GevreyClassSpec::Flavor::kBeurling;
  } else {
    throw UsageError("class flavor must be 'roumieu' or 'beurling', got '" +
                     flavor + "'");
  }
  if (value.contains("weight")) {
    spec.weight = parse_weight(value, "weight");
  }
  spec.validate();
  return spec;
}

/// Centered unit-width Gaussian window on `grid` — the default analysis
/// window when a config names none.
SampledField default_window(const bilq::GridSpec& grid) {
  bilq::GaussianSymbolSpec spec;
  spec.axes.assign(static_cast<std::size_t>(grid.rank()),
                   bilq::GaussianSpec1D{});
  return spec.sample(grid);
}

std::string hex_id(std::uint64_t value) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

// ---------------------------------------------------------------------------
// Subcommands.  Each returns the process exit code.
// ---------------------------------------------------------------------------

int cmd_stft(const json& config, const RunContext& ctx) {
  const SampledField f = bilq::read_field(
      input_path(ctx, require_string(config, "field")));
  const SampledField window = bilq::read_field(
      input_path(ctx, require_string(config, "window")));
  const std::string out_stem =
      output_path(ctx, require_string(config, "output"));

  const bilq::PhaseSpaceField V = bilq::stft(f, window);

  OutputGuard guard;
  guard.write_field(V, out_stem);
  json csv_files = json::array();
  if (config.contains("csv_axes")) {
    for (const json& entry : config.at("csv_axes")) {
      const int axis = entry.get<int>();
      const std::string path =
          out_stem + "_axis" + std::to_string(axis) + ".csv";
      guard.write_csv(V.base(), axis, path);
      csv_files.push_back(std::filesystem::path(path).filename().string());
    }
  }

  json report;
  report["command"] = "stft";
  report["window_id"] = hex_id(V.window_id());
  report["space_rank"] = V.space_rank();
  report["max_modulus"] = V.base().max_abs();
  report["csv_files"] = csv_files;
  guard.write_text(out_stem + ".report.json", report.dump(2) + "\n");
  guard.commit();

  std::printf("stft: wrote %s (phase-space rank %d), window %s\n",
              out_stem.c_str(), V.base().grid().rank(),
              hex_id(V.window_id()).c_str());
  return 0;
}

int cmd_convert(const json& config, const RunContext& ctx) {
  const SampledField a = bilq::read_field(
      input_path(ctx, require_string(config, "symbol")));
  const bilq::QuantizationPair from = parse_pair(config, "from");
  const bilq::QuantizationPair to = parse_pair(config, "to");
  const std::string out_stem =
      output_path(ctx, require_string(config, "output"));

  const SampledField b = bilq::convert_symbol(a, from, to);

  OutputGuard guard;
  guard.write_field(b, out_stem);
  json report;
  report["command"] = "convert";
  report["from"] = {{"r", from.r}, {"t", from.t}};
  report["to"] = {{"r", to.r}, {"t", to.t}};
  report["input_l2"] = a.l2_norm();
  report["output_l2"] = b.l2_norm();
  guard.write_text(out_stem + ".report.json", report.dump(2) + "\n");
  guard.commit();

  std::printf("convert: (%g,%g) -> (%g,%g), wrote %s\n", from.r, from.t, to.r,
              to.t, out_stem.c_str());
  return 0;
}

int cmd_apply(const json& config, const RunContext& ctx) {
  const SampledField a = bilq::read_field(
      input_path(ctx, require_string(config, "symbol")));
  const std::string out_stem =
      output_path(ctx, require_string(config, "output"));
  const std::string mode = config.value("mode", std::string("bilinear"));

  SampledField out;
  json report;
  report["command"] = "apply";
  report["mode"] = mode;
  if (mode == "bilinear") {
    const bilq::QuantizationPair pair = parse_pair(config, "pair");
    const SampledField f =
        bilq::read_field(input_path(ctx, require_string(config, "f")));
    const SampledField g =
        bilq::read_field(input_path(ctx, require_string(config, "g")));
    out = bilq::apply_bilinear(a, pair, f, g);
    report["pair"] = {{"r", pair.r}, {"t", pair.t}};
    report["f_l2"] = f.l2_norm();
    report["g_l2"] = g.l2_norm();
  } else if (mode == "linear") {
    const double t = require_number(config, "t");
    const SampledField f =
        bilq::read_field(input_path(ctx, require_string(config, "f")));
    out = bilq::apply_linear(a, t, f);
    report["t"] = t;
    report["f_l2"] = f.l2_norm();
  } else {
    throw UsageError("apply mode must be 'bilinear' or 'linear', got '" +
                     mode + "'");
  }
  report["output_l2"] = out.l2_norm();

  OutputGuard guard;
  guard.write_field(out, out_stem);
  guard.write_text(out_stem + ".report.json", report.dump(2) + "\n");
  guard.commit();

  std::printf("apply (%s): wrote %s, |out|_2 = %.12g\n", mode.c_str(),
              out_stem.c_str(), out.l2_norm());
  return 0;
}

int cmd_modnorm(const json& config, const RunContext& ctx) {
  const SampledField f = bilq::read_field(
      input_path(ctx, require_string(config, "field")));
  const SampledField window = bilq::read_field(
      input_path(ctx, require_string(config, "window")));
  const bilq::WeightModel weight = parse_weight(config, "weight");
  bilq::MixedExponents pq;
  pq.p = parse_exponent(config, "p", 2.0);
  pq.q = parse_exponent(config, "q", 2.0);
  const std::string out_file =
      output_path(ctx, require_string(config, "output"));

  const double norm = bilq::modulation_norm(f, window, weight, pq);

  json report;
  report["command"] = "modnorm";
  report["p"] = pq.p;
  report["q"] = pq.q;
  report["norm"] = norm;

  OutputGuard guard;
  guard.write_text(out_file, report.dump(2) + "\n");
  guard.commit();

  std::printf("modnorm: %.12g (report %s)\n", norm, out_file.c_str());
  return 0;
}

int cmd_classify(const json& config, const RunContext& ctx) {
  const SampledField a = bilq::read_field(
      input_path(ctx, require_string(config, "symbol")));
  const bilq::GevreyClassSpec cls = parse_class(config, "class");
  const SampledField window =
      config.contains("window")
          ? bilq::read_field(input_path(ctx, require_string(config, "window")))
          : default_window(a.grid());
  const int K = config.value("K", 6);
  std::vector<double> ladder = {0.03, 0.06};
  if (config.contains("R_ladder")) {
    ladder = config.at("R_ladder").get<std::vector<double>>();
  }
  const double q = parse_exponent(config, "q", 1.0);
  const double R = config.value("R", 0.1);
  const double h_max = config.value("h_max", 2.6);
  const double modnorm_max = config.value("modnorm_max", 80.0);
  const std::string out_file =
      output_path(ctx, require_string(config, "output"));

  const bilq::ClassNormReport ladder_report =
      bilq::gamma_norm_estimate(a, cls, K);
  const bilq::DecayFitReport fit =
      bilq::stft_class_check(a, window, cls, ladder);
  const double norm = bilq::modspace_class_check(a, window, cls, q, R);

  const bool verdict_gamma = ladder_report.pass && ladder_report.h_fit <= h_max;
  const bool verdict_stft = fit.pass;
  const bool verdict_modspace = std::isfinite(norm) && norm <= modnorm_max;
  const bool in_class = verdict_gamma && verdict_stft && verdict_modspace;
  const bool agree = (verdict_gamma == verdict_stft) &&
                     (verdict_stft == verdict_modspace);

  json report;
  report["command"] = "classify";
  report["in_class"] = in_class;
  report["verdicts_agree"] = agree;
  report["verdicts"] = {{"derivative_ladder", verdict_gamma},
                        {"stft_decay", verdict_stft},
                        {"modspace_finiteness", verdict_modspace}};
  report["h_fit"] = ladder_report.h_fit;
  report["stft_rates"] = fit.rates;
  report["modulation_norm"] = norm;
  report["thresholds"] = {{"h_max", h_max},
                          {"rate_min", ladder.front()},
                          {"modnorm_max", modnorm_max}};
  report["derivative_ladder"] =
      json::parse(bilq::class_norm_report_to_json(ladder_report));
  report["stft_fit"] = json::parse(bilq::decay_fit_report_to_json(fit));

  OutputGuard guard;
  guard.write_text(out_file, report.dump(2) + "\n");
  guard.commit();

  std::printf("classify: %s (h_fit=%.6g, modnorm=%.6g), verdict %s\n",
              in_class ? "in-class" : "out-of-class", ladder_report.h_fit,
              norm, out_file.c_str());
  return in_class ? 0 : 1;
}

int cmd_smooth_weight(const json& config, const RunContext& ctx) {
  if (!config.contains("weight")) {
    throw UsageError("config is missing required key 'weight'");
  }
  const bilq::WeightModel weight = parse_weight(config, "weight");
  const bilq::GridSpec grid = parse_grid(config, "grid");
  const json& s_json = require(config, "s_vector");
  if (!s_json.is_array()) {
    throw UsageError("config key 's_vector' must be an array");
  }
  const auto s_vector = s_json.get<std::vector<double>>();
  const std::string out_stem =
      output_path(ctx, require_string(config, "output"));

  const SampledField smoothed = bilq::smooth_weight(weight, s_vector, grid);
  const SampledField raw = bilq::evaluate(weight, grid);
  const double margin = bilq::smooth_weight_margin();

  // Two-sided equivalence ratio on the interior window (the boundary band
  // is contaminated by cyclic wrap-around and excluded by contract).
  double ratio_min = std::numeric_limits<double>::infinity();
  double ratio_max = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(grid.rank()), 0);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    bool interior = true;
    for (int axis = 0; axis < grid.rank(); ++axis) {
      const bilq::AxisSpec& ax = grid.axis(axis);
      const double c = ax.coordinate(idx[static_cast<std::size_t>(axis)]);
      if (ax.half_width - std::abs(c) < margin) interior = false;
    }
    if (interior) {
      const double ratio =
          std::abs(smoothed[flat]) / std::max(std::abs(raw[flat]), 1e-300);
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
    }
    for (int axis = grid.rank() - 1; axis >= 0; --axis) {
      const auto u = static_cast<std::size_t>(axis);
      if (++idx[u] < grid.axis(axis).points) break;
      idx[u] = 0;
    }
  }

  json report;
  report["command"] = "smooth-weight";
  report["boundary_margin"] = margin;
  report["interior_ratio_min"] = ratio_min;
  report["interior_ratio_max"] = ratio_max;

  OutputGuard guard;
  guard.write_field(smoothed, out_stem);
  guard.write_text(out_stem + ".report.json", report.dump(2) + "\n");
  guard.commit();

  std::printf("smooth-weight: wrote %s, interior ratio in [%.6g, %.6g]\n",
              out_stem.c_str(), ratio_min, ratio_max);
  return 0;
}

int cmd_verify(const json& config, const RunContext& ctx) {
  const std::string suite = require_string(config, "suite");
  bilq::VerifyOptions options;
  options.workers = ctx.workers != 0
                        ? ctx.workers
                        : static_cast<int>(config.value("workers", 0));
  options.seed = ctx.seed_overridden
                     ? ctx.seed
                     : config.value("seed", bilq::VerifyOptions{}.seed);

  const bilq::SuiteResult result = bilq::run_suite(suite, options);

  OutputGuard guard;
  guard.track(output_path(ctx, suite + ".json"));
  guard.track(output_path(ctx, suite + ".timing.json"));
  bilq::write_suite_result(result, ctx.out_dir.string());
  guard.commit();

  std::printf("suite %s: %s (%.1f s, %zu cases)\n", result.suite.c_str(),
              result.aggregate_pass ? "PASS" : "FAIL", result.wall_seconds,
              result.cases.size());
  for (const bilq::CaseRecord& record : result.cases) {
    std::printf("  %-44s %s\n", record.name.c_str(),
                record.pass ? "ok" : "FAIL");
  }
  return result.aggregate_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bilq: bilinear pseudo-differential calculus on periodized grids"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir_flag;
  std::uint64_t seed_flag = 0;
  int workers_flag = 0;

  auto* seed_opt =
      app.add_option("--seed", seed_flag, "Override the config's RNG seed");
  auto* out_opt = app.add_option(
      "--out", out_dir_flag, "Directory for output files (default: beside the config)");
  app.add_option("--workers", workers_flag,
                 "Worker-thread cap (0 = hardware concurrency)");

  struct SubSpec {
    const char* name;
    const char* help;
  };
  const std::vector<SubSpec> subs = {
      {"stft", "Windowed transform of a field; writes the phase-space field, "
               "optional CSV slices, and a report"},
      {"convert", "Quantization transform of a three-axis symbol"},
      {"apply", "Apply a symbol to arguments (bilinear or linear mode)"},
      {"modnorm", "Weighted modulation norm of a field"},
      {"classify", "Three symbol-class diagnostics with one verdict"},
      {"smooth-weight", "Mollified equivalent weight on a grid"},
      {"verify", "Run one verification suite and write its report"},
  };
  for (const SubSpec& spec : subs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("config", config_path, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const json config = load_config(config_path);

    RunContext ctx;
    ctx.config_dir =
        std::filesystem::absolute(config_path).parent_path();
    if (!out_dir_flag.empty()) {
      ctx.out_dir = out_dir_flag;
    } else if (config.contains("output_dir")) {
      std::filesystem::path dir(config.at("output_dir").get<std::string>());
      ctx.out_dir = dir.is_absolute() ? dir : ctx.config_dir / dir;
    } else {
      ctx.out_dir = ctx.config_dir;
    }
    std::filesystem::create_directories(ctx.out_dir);
    ctx.seed_overridden = seed_opt->count() > 0;
    ctx.seed = seed_flag;
    ctx.workers = workers_flag;
    (void)out_opt;

    bilq::set_max_workers(ctx.workers);

    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "stft") return cmd_stft(config, ctx);
    if (sub == "convert") return cmd_convert(config, ctx);
    if (sub == "apply") return cmd_apply(config, ctx);
    if (sub == "modnorm") return cmd_modnorm(config, ctx);
    if (sub == "classify") return cmd_classify(config, ctx);
    if (sub == "smooth-weight") return cmd_smooth_weight(config, ctx);
    if (sub == "verify") return cmd_verify(config, ctx);
    throw UsageError("unknown subcommand: " + sub);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 3;
  } catch (const bilq::NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
