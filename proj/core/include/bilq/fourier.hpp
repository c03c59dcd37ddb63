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

/**
 * @file fourier.hpp
 * @brief Discrete realization of the symmetric-normalization Fourier
 *        transform on centered grids, plus spectral derivatives, shears and
 *        exact periodized translations.
 *
 * Convention: F̂(ξ) = (2π)^{−d/2} ∫ f(x) e^{−i⟨x,ξ⟩} dx.  On a centered axis
 * (x_j = −L + jΔx, ξ_k = kπ/L) this is exactly
 *
 *   F̂(ξ_k) = (2π)^{−1/2} Δx (−1)^{N/2} (−1)^k · DFT[(−1)^j f_j](k),
 *
 * i.e. a phase-decorated FFT; the inverse mirrors it with Δξ and the
 * opposite DFT sign, and inverse∘forward is an exact identity because
 * Δx·Δξ·N = 2π.  Multi-axis transforms apply the rule per selected axis.
 */

#ifndef BILQ_FOURIER_HPP_
#define BILQ_FOURIER_HPP_

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bilq/field.hpp"

namespace bilq {

/// Samples of the continuous-convention transform on the dual lattice of the
/// selected axes; unselected axes pass through.  Transformed axes are
/// replaced by their dual axes and their role tags are toggled.
SampledField forward_ft(const SampledField& f, const AxisSelection& sel);

/// Exact two-sided inverse of forward_ft on the same axes.
SampledField inverse_ft(const SampledField& F, const AxisSelection& sel);

/// ∂^order along `axis` via multiplication by (iξ)^order in the dual domain.
/// Orders above `max_order` (default 8) are rejected.
SampledField spectral_derivative(const SampledField& f, int axis, int order,
                                 int max_order = 8);

/// Samples of (x_t, …) ↦ F(x_t − Σ c_j x_j, …), computed exactly in the dual
/// domain of target_axis by a linear phase multiplier.  If the shear can pull
/// content across the periodization boundary (|Σ c_j L_j| > L_t) a warning
/// string is reported through *warning (not fatal).
SampledField shear(const SampledField& F, int target_axis,
                   const std::vector<std::pair<int, double>>& sources,
                   std::string* warning = nullptr);

/// Samples of x ↦ f(x − shift) along one axis (periodized trigonometric
/// translation; exact for the 2L-periodic model, shift need not be on the
/// lattice).
SampledField translate(const SampledField& f, int axis, double shift);

/// Pointwise multiplication by m(coordinate) along one axis.
SampledField apply_axis_multiplier(const SampledField& f, int axis,
                                   const std::function<Complex(double)>& m);

/// Pointwise multiplication by e^{i ν x} along one axis.
SampledField modulate(const SampledField& f, int axis, double nu);

}  // namespace bilq

#endif  // BILQ_FOURIER_HPP_
