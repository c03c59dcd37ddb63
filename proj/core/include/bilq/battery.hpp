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
/// @brief Deterministic synthetic input batteries: seeded Gaussian argument
/// pairs and symbols that stay inside the periodization comfort zone of a
/// grid, plus the fixed 12-symbol class battery (six members of a reference
/// symbol class, six engineered to fall outside it).  Every battery is
/// reproducible from its manifest string and seed.

#ifndef BILQ_BATTERY_HPP_
#define BILQ_BATTERY_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bilq/field.hpp"
#include "bilq/grid.hpp"
#include "bilq/oracles.hpp"

namespace bilq {

/// Ranges for random Gaussian generation: widths are drawn uniformly from
/// [width_lo, width_hi] (absolute units), centers uniformly from
/// ±(half_width * center_fraction) per axis, modulations uniformly from
/// ±(dual half-width * modulation_fraction) per axis.
struct GaussianBatteryParams {
  double width_lo = 0.5;
  double width_hi = 2.0;
  double center_fraction = 1.0 / 3.0;
  double modulation_fraction = 0.5;
};

/// `count` random separable Gaussian specs over the axes of `grid`.
/// Deterministic given `seed` and the parameters.
std::vector<GaussianSymbolSpec> gaussian_spec_battery(
    const GridSpec& grid, int count, std::uint64_t seed,
    const GaussianBatteryParams& params = {});

/// `count` random Gaussian fields sampled on a rank-1 grid.
std::vector<SampledField> gaussian_field_battery(
    const GridSpec& grid, int count, std::uint64_t seed,
    const GaussianBatteryParams& params = {});

/// `count` random (f, g) argument pairs on a rank-1 grid (2*count draws).
std::vector<std::pair<SampledField, SampledField>> gaussian_pair_battery(
    const GridSpec& grid, int count, std::uint64_t seed,
    const GaussianBatteryParams& params = {});

/// A short deterministic label for a battery: generator name, grid shape,
/// count, seed, and parameter digest, suitable for report fields and
/// manifests.
std::string battery_id(const std::string& generator, const GridSpec& grid,
                       int count, std::uint64_t seed,
                       const GaussianBatteryParams& params = {});

/// One symbol of the class battery with its expected class verdict.
struct ClassBatteryItem {
  SampledField symbol;
  bool expected_in_class = false;
  std::string label;
};

/// The fixed 12-symbol battery on a rank-3 grid for the reference class with
/// all regularity exponents 1/2 and weight 1: six in-class members (mildly
/// jittered Gaussians) and six out-of-class members (quadratic chirps along
/// each axis, whose derivative ladders and transform spreads exceed any
/// in-class symbol by orders of magnitude at desk scale).  Deterministic
/// given `seed`.
std::vector<ClassBatteryItem> class_symbol_battery(const GridSpec& grid,
                                                   std::uint64_t seed);

}  // namespace bilq

#endif  // BILQ_BATTERY_HPP_
