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

#include "bilq/battery.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <utility>

#include "bilq/errors.hpp"

namespace bilq {
namespace {

// Deterministic uniform double in [0, 1) from the top 53 bits of the engine;
// identical across standard library implementations, unlike
// std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_signed(std::mt19937_64& rng) { return 2.0 * uniform01(rng) - 1.0; }

GaussianSpec1D draw_axis(std::mt19937_64& rng, const AxisSpec& axis,
                         const GaussianBatteryParams& params) {
  GaussianSpec1D spec;
  spec.width =
      params.width_lo + (params.width_hi - params.width_lo) * uniform01(rng);
  spec.center = axis.half_width * params.center_fraction * uniform_signed(rng);
  spec.modulation = axis.dual().half_width * params.modulation_fraction *
                    uniform_signed(rng);
  return spec;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::vector<GaussianSymbolSpec> gaussian_spec_battery(
    const GridSpec& grid, int count, std::uint64_t seed,
    const GaussianBatteryParams& params) {
  if (count < 1) {
    throw UsageError("gaussian_spec_battery: count must be positive");
  }
  if (!(params.width_lo > 0.0) || !(params.width_hi >= params.width_lo)) {
    throw UsageError("gaussian_spec_battery: need 0 < width_lo <= width_hi");
  }
  std::mt19937_64 rng(seed);
  std::vector<GaussianSymbolSpec> battery;
  battery.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    GaussianSymbolSpec spec;
    spec.axes.reserve(static_cast<std::size_t>(grid.rank()));
    for (int axis = 0; axis < grid.rank(); ++axis) {
      spec.axes.push_back(draw_axis(rng, grid.axis(axis), params));
    }
    battery.push_back(std::move(spec));
  }
  return battery;
}

std::vector<SampledField> gaussian_field_battery(
    const GridSpec& grid, int count, std::uint64_t seed,
    const GaussianBatteryParams& params) {
  if (grid.rank() != 1) {
    throw UsageError("gaussian_field_battery: grid must have 1 axis");
  }
  std::vector<SampledField> fields;
  fields.reserve(static_cast<std::size_t>(count));
  for (const GaussianSymbolSpec& spec :
       gaussian_spec_battery(grid, count, seed, params)) {
    fields.push_back(spec.sample(grid));
  }
  return fields;
}

std::vector<std::pair<SampledField, SampledField>> gaussian_pair_battery(
    const GridSpec& grid, int count, std::uint64_t seed,
    const GaussianBatteryParams& params) {
  if (grid.rank() != 1) {
    throw UsageError("gaussian_pair_battery: grid must have 1 axis");
  }
  const std::vector<GaussianSymbolSpec> specs =
      gaussian_spec_battery(grid, 2 * count, seed, params);
  std::vector<std::pair<SampledField, SampledField>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    pairs.emplace_back(
        specs[static_cast<std::size_t>(2 * i)].sample(grid),
        specs[static_cast<std::size_t>(2 * i + 1)].sample(grid));
  }
  return pairs;
}

std::string battery_id(const std::string& generator, const GridSpec& grid,
                       int count, std::uint64_t seed,
                       const GaussianBatteryParams& params) {
  std::string id = generator + ":axes=";
  for (int axis = 0; axis < grid.rank(); ++axis) {
    if (axis > 0) id += "|";
    id += format_double(grid.axis(axis).half_width) + "x" +
          std::to_string(grid.axis(axis).points);
  }
  id += ";count=" + std::to_string(count);
  id += ";seed=" + std::to_string(seed);
  id += ";w=[" + format_double(params.width_lo) + "," +
        format_double(params.width_hi) + "]";
  id += ";c=" + format_double(params.center_fraction);
  id += ";m=" + format_double(params.modulation_fraction);
  return id;
}

std::vector<ClassBatteryItem> class_symbol_battery(const GridSpec& grid,
                                                   std::uint64_t seed) {
  if (grid.rank() != 3) {
    throw UsageError("class_symbol_battery: grid must have 3 axes");
  }
  std::mt19937_64 rng(seed);
  std::vector<ClassBatteryItem> items;
  items.reserve(12);

  // Six in-class members: separable Gaussians whose widths scale with the
  // axis extents (so derivative ladders stay tame on every axis), with small
  // center/modulation jitter.
  for (int i = 0; i < 6; ++i) {
    GaussianSymbolSpec spec;
    for (int axis = 0; axis < 3; ++axis) {
      const double hw = grid.axis(axis).half_width;
      GaussianSpec1D g;
      g.width = (0.15 + 0.05 * uniform01(rng)) * hw;
      g.center = 0.05 * hw * uniform_signed(rng);
      g.modulation = 0.4 * uniform_signed(rng);
      spec.axes.push_back(g);
    }
    ClassBatteryItem item;
    item.symbol = spec.sample(grid);
    item.expected_in_class = true;
    item.label = "gaussian-in-" + std::to_string(i);
    items.push_back(std::move(item));
  }

  // Six out-of-class members: a unit-modulus quadratic phase chirp spanning
  // one full axis (first derivative there ~ rate * half_width, far above any
  // in-class ladder; its transform rides the instantaneous frequency across
  // the whole dual range instead of decaying), times comfortably-contained
  // Gaussian envelopes on the other two axes.
  const double rates[2] = {2.0, 2.5};
  for (int axis = 0; axis < 3; ++axis) {
    for (double rate : rates) {
      ClassBatteryItem item;
      item.symbol = SampledField::sample(
          grid, [axis, rate, &grid](const std::vector<double>& u) {
            double log_env = 0.0;
            for (int j = 0; j < 3; ++j) {
              if (j == axis) continue;
              const double w = 0.25 * grid.axis(j).half_width;
              log_env -= 0.5 * (u[static_cast<std::size_t>(j)] / w) *
                         (u[static_cast<std::size_t>(j)] / w);
            }
            const double v = u[static_cast<std::size_t>(axis)];
            return std::polar(std::exp(log_env), 0.5 * rate * v * v);
          });
      item.expected_in_class = false;
      item.label = "chirp-axis" + std::to_string(axis) + "-rate" +
                   format_double(rate);
      items.push_back(std::move(item));
    }
  }
  return items;
}

}  // namespace bilq
