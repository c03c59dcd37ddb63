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

#include "bilq/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "bilq/errors.hpp"
#include "bilq/fourier.hpp"

namespace bilq {
namespace {

// log(w) values beyond this cannot be exponentiated into a finite double.
constexpr double kLogOverflow = 700.0;

// Unit-width mollifier phi(x) = prod_a exp(-x_a^2); decay length 1 per axis.
constexpr double kMollifierDecayLength = 1.0;

void validate_group(const WeightGroup& g) {
  if (g.axes.empty()) {
    throw UsageError("WeightModel: group must reference at least one axis");
  }
  for (int a : g.axes) {
    if (a < 0) throw UsageError("WeightModel: negative axis index");
  }
  if (!(g.inv_exp_power > 0.0)) {
    throw UsageError("WeightModel: exponent power must be positive");
  }
}

}  // namespace

WeightModel::WeightModel(std::vector<WeightGroup> groups)
    : groups_(std::move(groups)) {
  for (const WeightGroup& g : groups_) validate_group(g);
}

WeightModel WeightModel::polynomial(std::vector<int> axes, double degree) {
  WeightGroup g;
  g.axes = std::move(axes);
  g.poly_degree = degree;
  return WeightModel({g});
}

WeightModel WeightModel::exponential(std::vector<int> axes, double rate,
                                     double power) {
  WeightGroup g;
  g.axes = std::move(axes);
  g.exp_rate = rate;
  g.inv_exp_power = power;
  return WeightModel({g});
}

double WeightModel::log_value(const std::vector<double>& point) const {
  double log_w = 0.0;
  for (const WeightGroup& g : groups_) {
    double r2 = 0.0;
    for (int a : g.axes) {
      if (static_cast<std::size_t>(a) >= point.size()) {
        throw UsageError("WeightModel: point has fewer axes than the model");
      }
      const double c = point[static_cast<std::size_t>(a)];
      r2 += c * c;
    }
    if (g.poly_degree != 0.0) log_w += 0.5 * g.poly_degree * std::log1p(r2);
    if (g.exp_rate != 0.0) {
      log_w += g.exp_rate * std::pow(r2, 0.5 * g.inv_exp_power);
    }
  }
  return log_w;
}

double WeightModel::value(const std::vector<double>& point) const {
  const double lw = log_value(point);
  if (lw > kLogOverflow) {
    throw NumericError("WeightModel: value overflows double range");
  }
  return std::exp(lw);
}

int WeightModel::arity() const {
  int arity = 0;
  for (const WeightGroup& g : groups_) {
    for (int a : g.axes) arity = std::max(arity, a + 1);
  }
  return arity;
}

bool WeightModel::polynomial_type() const {
  return std::all_of(groups_.begin(), groups_.end(),
                     [](const WeightGroup& g) { return g.exp_rate == 0.0; });
}

double WeightModel::implied_rate() const {
  double rate = 0.0;
  for (const WeightGroup& g : groups_) {
    if (g.exp_rate > 0.0 && g.inv_exp_power <= 1.0) rate += g.exp_rate;
  }
  return rate;
}

WeightModel WeightModel::reciprocal() const {
  std::vector<WeightGroup> flipped = groups_;
  for (WeightGroup& g : flipped) {
    g.exp_rate = -g.exp_rate;
    g.poly_degree = -g.poly_degree;
  }
  return WeightModel(std::move(flipped));
}

WeightModel product(const WeightModel& a, const WeightModel& b) {
  std::vector<WeightGroup> groups = a.groups();
  groups.insert(groups.end(), b.groups().begin(), b.groups().end());
  return WeightModel(std::move(groups));
}

SampledField evaluate(const WeightModel& w, const GridSpec& grid) {
  if (w.arity() > grid.rank()) {
    throw UsageError("evaluate: weight references axis " +
                     std::to_string(w.arity() - 1) + " but grid has rank " +
                     std::to_string(grid.rank()));
  }
  return SampledField::sample(
      grid,
      [&w](const std::vector<double>& x) { return Complex(w.value(x), 0.0); },
      AxisRole::kSpace);
}

ModerationReport check_moderate(const WeightModel& w, const WeightModel& v,
                                long sample_count, const GridSpec& box,
                                std::uint64_t seed) {
  if (sample_count < 1) {
    throw UsageError("check_moderate: sample_count must be >= 1");
  }
  const int rank = box.rank();
  if (w.arity() > rank || v.arity() > rank) {
    throw UsageError("check_moderate: weight arity exceeds box rank");
  }

  // Sample points at full scale; re-evaluating the same points scaled by
  // 1/2 probes whether the constant keeps growing with the domain.
  std::vector<std::vector<double>> xs, ys;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (long i = 0; i < sample_count; ++i) {
    std::vector<double> x(static_cast<std::size_t>(rank));
    std::vector<double> y(static_cast<std::size_t>(rank));
    for (int a = 0; a < rank; ++a) {
      const double half = box.axis(a).half_width;
      x[static_cast<std::size_t>(a)] = half * unit(rng);
      y[static_cast<std::size_t>(a)] = half * unit(rng);
    }
    xs.push_back(x);
    ys.push_back(std::move(y));
  }
  // Collinear X = Y scans along each axis: extremal ratios of radial weights
  // occur on these rays (both the saturating bracket-weight maximum and the
  // divergence of super-exponential weights show up here).
  constexpr int kScanPoints = 96;
  for (int a = 0; a < rank; ++a) {
    const double half = box.axis(a).half_width;
    for (int i = 0; i < kScanPoints; ++i) {
      const double t =
          half * std::pow(10.0, -3.0 + 3.0 * i / (kScanPoints - 1.0));
      for (double sign : {1.0, -1.0}) {
        std::vector<double> x(static_cast<std::size_t>(rank), 0.0);
        x[static_cast<std::size_t>(a)] = sign * t;
        xs.push_back(x);
        ys.push_back(std::move(x));
      }
    }
  }

  auto max_log_ratio = [&](double scale) {
    double best = 0.0;  // X = Y = 0 gives ratio exactly 1.
    std::vector<double> sum(static_cast<std::size_t>(rank));
    std::vector<double> sx(static_cast<std::size_t>(rank));
    std::vector<double> sy(static_cast<std::size_t>(rank));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (int a = 0; a < rank; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        sx[ua] = scale * xs[i][ua];
        sy[ua] = scale * ys[i][ua];
        sum[ua] = sx[ua] + sy[ua];
      }
      best = std::max(best,
                      w.log_value(sum) - w.log_value(sx) - v.log_value(sy));
    }
    return best;
  };

  const double log_c_full = max_log_ratio(1.0);
  const double log_c_half = max_log_ratio(0.5);

  ModerationReport report;
  report.samples_tested = static_cast<long>(xs.size());
  report.submultiplicative_rate = v.implied_rate();
  report.constant = log_c_full > kLogOverflow
                        ? std::numeric_limits<double>::infinity()
                        : std::exp(log_c_full);
  const double log_growth = log_c_full - log_c_half;
  report.growth_ratio = log_growth > kLogOverflow
                            ? std::numeric_limits<double>::infinity()
                            : std::exp(log_growth);
  report.pass = std::isfinite(report.constant) && report.growth_ratio <= 4.0;
  return report;
}

double smooth_weight_margin() { return 4.0 * kMollifierDecayLength; }

SampledField smooth_weight(const WeightModel& w,
                           const std::vector<double>& s_vector,
                           const GridSpec& grid) {
  const int rank = grid.rank();
  if (static_cast<int>(s_vector.size()) != rank) {
    throw UsageError("smooth_weight: s_vector size must equal grid rank");
  }
  for (double s : s_vector) {
    if (!(s > 0.0 && s < 1.0)) {
      throw UsageError("smooth_weight: every s must lie in (0,1)");
    }
  }
  if (w.arity() > rank) {
    throw UsageError("smooth_weight: weight arity exceeds grid rank");
  }
  for (int a = 0; a < rank; ++a) {
    if (grid.axis(a).half_width < smooth_weight_margin()) {
      throw NumericError(
          "smooth_weight: axis " + std::to_string(a) + " half-width " +
          std::to_string(grid.axis(a).half_width) +
          " is below the wrap-around safety margin " +
          std::to_string(smooth_weight_margin()));
    }
  }

  SampledField omega = evaluate(w, grid);
  SampledField phi = SampledField::sample(
      grid,
      [](const std::vector<double>& x) {
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        return Complex(std::exp(-r2), 0.0);
      },
      AxisRole::kSpace);
  // Unit discrete mass, so a constant weight smooths to itself exactly.
  Complex mass = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) mass += phi[i];
  mass *= grid.cell_volume();
  phi.scale(1.0 / mass);

  const AxisSelection all = AxisSelection::all(rank);
  SampledField om_hat = forward_ft(omega, all);
  SampledField phi_hat = forward_ft(phi, all);
  om_hat.multiply(phi_hat);
  om_hat.scale(std::pow(2.0 * std::numbers::pi, 0.5 * rank));
  SampledField smooth = inverse_ft(om_hat, all);
  // The convolution of real nonnegative data is real; drop roundoff phases.
  double min_real = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < smooth.size(); ++i) {
    smooth[i] = Complex(smooth[i].real(), 0.0);
    min_real = std::min(min_real, smooth[i].real());
  }
  if (!(min_real > 0.0)) {
    throw NumericError("smooth_weight: smoothed weight is not positive");
  }
  return smooth;
}

}  // namespace bilq
