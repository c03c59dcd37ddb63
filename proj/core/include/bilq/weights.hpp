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
/// @brief Parametric weight models: products of polynomial brackets and
/// exponentials of fractional powers over groups of axes, with moderation
/// checks and a convolution smoothing that produces an equivalent weight with
/// controlled derivatives.

#ifndef BILQ_WEIGHTS_HPP_
#define BILQ_WEIGHTS_HPP_

#include <cstdint>
#include <vector>

#include "bilq/field.hpp"
#include "bilq/grid.hpp"

namespace bilq {

/// One multiplicative factor of a weight model, acting on a group of axes:
///
///   w_g(X) = (1 + |X_g|^2)^(poly_degree/2) * exp(exp_rate * |X_g|^inv_exp_power)
///
/// where |X_g| is the Euclidean norm of the coordinates selected by `axes`.
/// `inv_exp_power` is the literal exponent applied to |X_g|; values <= 1 keep
/// the exponential factor submultiplicative.
struct WeightGroup {
  std::vector<int> axes;
  double exp_rate = 0.0;
  double inv_exp_power = 1.0;
  double poly_degree = 0.0;
};

/// A closed-form weight: the product of its groups' factors.  An empty model
/// is the constant weight 1.  Models are evaluated in log-space so that
/// quotients and large exponents stay representable as long as the final
/// value fits in a double.
class WeightModel {
 public:
  WeightModel() = default;
  explicit WeightModel(std::vector<WeightGroup> groups);

  /// The constant weight 1.
  static WeightModel one() { return WeightModel(); }
  /// (1 + |X_g|^2)^(degree/2) on the given axes.
  static WeightModel polynomial(std::vector<int> axes, double degree);
  /// exp(rate * |X_g|^power) on the given axes.
  static WeightModel exponential(std::vector<int> axes, double rate,
                                 double power);

  const std::vector<WeightGroup>& groups() const { return groups_; }

  /// log w(point); `point` must cover every axis any group references.
  double log_value(const std::vector<double>& point) const;
  /// w(point); throws NumericError if the value overflows a double.
  double value(const std::vector<double>& point) const;

  /// Smallest axis count a coordinate vector must have to evaluate the model.
  int arity() const;
  /// True when every exponential rate vanishes (pure polynomial growth).
  bool polynomial_type() const;
  /// Empirical exponential growth rate: an r with w(X) <= C e^{r|X|} for
  /// |X| >= 1.  Polynomial factors contribute nothing (any positive r covers
  /// them); each exponential factor with rate c > 0 and exponent <= 1
  /// contributes c.
  double implied_rate() const;
  /// The pointwise reciprocal 1/w (rates and degrees negated).
  WeightModel reciprocal() const;

 private:
  std::vector<WeightGroup> groups_;
};

/// Pointwise product of two models (group lists concatenate; evaluation is
/// exact in log-space).
WeightModel product(const WeightModel& a, const WeightModel& b);

/// Samples w over `grid` as a real positive field.
/// Throws NumericError when any sampled value overflows a double.
SampledField evaluate(const WeightModel& w, const GridSpec& grid);

/// Result of a sampled moderation check of w against a companion v.
struct ModerationReport {
  /// Largest sampled ratio w(X+Y) / (w(X) v(Y)); +inf when it overflows.
  double constant = 0.0;
  /// Empirical submultiplicative growth rate of v (see
  /// WeightModel::implied_rate).
  double submultiplicative_rate = 0.0;
  /// True when the constant is finite and stable under box shrinkage.
  bool pass = false;
  long samples_tested = 0;
  /// Heuristic divergence signal: constant on the full box divided by the
  /// constant on the half-size box.  Values far above 1 indicate the
  /// moderation constant grows without bound as the domain expands.
  double growth_ratio = 1.0;
};

/// Estimates the best constant C in w(X+Y) <= C w(X) v(Y) by a deterministic
/// pseudo-random sample of pairs in `box`, augmented with collinear X = Y
/// scans along each axis (where extremal ratios of radial weights live).
/// The same sample, rescaled, is re-evaluated on the half-size box; `pass`
/// requires a finite constant whose growth ratio between the half and full
/// box stays below 4.  The detection of non-moderation is a heuristic, not
/// a proof.
ModerationReport check_moderate(const WeightModel& w, const WeightModel& v,
                                long sample_count, const GridSpec& box,
                                std::uint64_t seed = 0x5eedu);

/// Mollifies w by convolution with phi = |phi0|^2, phi0 a centered unit-width
/// Gaussian, normalized to unit discrete mass, via FFT on `grid`.  The result
/// is a smooth strictly positive field equivalent to w (two-sided ratio
/// bounded on the interior window; `smooth_weight_margin` gives the boundary
/// band to exclude).  Each entry of `s_vector` (one per axis) must lie in
/// (0,1); the Gaussian mollifier is admissible for every such target.
/// Throws NumericError when an axis half-width is below 4 mollifier decay
/// lengths (cyclic wrap-around would contaminate the result) or when the
/// weight overflows on the grid.
SampledField smooth_weight(const WeightModel& w,
                           const std::vector<double>& s_vector,
                           const GridSpec& grid);

/// Width of the boundary band (in coordinate units) within which cyclic
/// convolution may contaminate smooth_weight output; comparisons of the
/// smoothed against the raw weight should be restricted to coordinates
/// at distance >= this margin from the box edge.
double smooth_weight_margin();

}  // namespace bilq

#endif  // BILQ_WEIGHTS_HPP_
