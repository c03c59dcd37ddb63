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
/// @brief The (r,t)-parametrized family of bilinear operators built from
/// three-axis symbols a(x, xi, eta):
///
///   Op_{r,t}(a)(f,g)(x) = (2 pi)^{-2d} \iiiint e^{i<x-y, xi> + i<x-z, eta>}
///       a(x + r(y-x) + t(z-x), xi, eta) f(y) g(z) dy dz dxi deta
///
/// together with the exact Fourier-multiplier transform connecting symbols of
/// equal operators across (r,t) values, application pathways (FFT-based fast
/// path and quadrature references), and the verification drivers for
/// quantization invariance, windowed-transform covariance, norm-ratio
/// boundedness, and decay continuity.

#ifndef BILQ_QUANTIZATION_HPP_
#define BILQ_QUANTIZATION_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bilq/field.hpp"
#include "bilq/plan.hpp"
#include "bilq/symbols.hpp"
#include "bilq/timefreq.hpp"
#include "bilq/weights.hpp"

namespace bilq {

/// A point of the admissible quantization triangle: r, t in [0, 1] with
/// r + t <= 1.  (0,0) is the Fourier-integral ("both transforms on the
/// right") form; (1/2,1/2) is the symmetric form.
struct QuantizationPair {
  double r = 0.0;
  double t = 0.0;

  /// Throws UsageError unless r, t in [0,1] and r + t <= 1 (within 1e-12).
  void validate() const;
};

/// Sign of the quadratic phase in the symbol transform below.  The two
/// candidate conventions differ by this sign only; the committed value is
/// the one under which converting a(x,xi,eta) = x*xi from (1/2, 0) to (0, 0)
/// yields x*xi - i/2, as established by the dense operator-matrix regression
/// in the test suite (the opposite sign produces x*xi + i/2 and is rejected
/// there).
inline constexpr double kConversionPhaseSign = +1.0;

/// The exact symbol transform: b = convert_symbol(a, from, to) satisfies
/// Op_from(a) = Op_to(b).  Realized as a full three-axis forward transform,
/// multiplication by
///
///   exp(+i * kConversionPhaseSign * ((r1-r2) y + (t1-t2) z) zeta)
///
/// on the dual coordinates (zeta, y, z), and the inverse transform.  Exact
/// for trigonometric interpolants; converting (p -> p) is the identity.
SampledField convert_symbol(const SampledField& a, QuantizationPair from,
                            QuantizationPair to);

/// Linear one-argument operator at parameter t in [0,1]:
///
///   Op_t(a)f(x) = (2 pi)^{-d} \iint a(x - t(x-y), xi) f(y) e^{i<x-y, xi>}
///
/// evaluated by direct double quadrature over the lattice, with the symbol
/// read at off-lattice first arguments through its trigonometric
/// interpolant.  Reference pathway: cost O(N^4); intended for moderate N.
SampledField apply_linear(const SampledField& a, double t,
                          const SampledField& f);

/// FFT-accelerated t = 0 pathway: Op_0(a)f(x) =
/// (2 pi)^{-d/2} \int e^{i<x,xi>} a(x, xi) f^(xi) dxi, realized as a
/// multiplication by f^ along the xi axis, an inverse transform in xi, and a
/// diagonal read-off.  Agrees with apply_linear(a, 0, f) to machine
/// precision on shared lattices.
SampledField apply_linear_fft(const SampledField& a, const SampledField& f);

/// Bilinear operator application, canonical pathway: converts the symbol to
/// (0,0) and contracts the two-transform form via FFT —
/// a_g = partial_symbol(a0, g), then apply_linear_fft(a_g, f).  Cost is two
/// rank-3 transforms plus rank-2 work.  Throws UsageError on grid mismatch
/// (f and g must share the lattice of a's x axis, with a's xi and eta axes
/// its duals) or inadmissible pair.
SampledField apply_bilinear(const SampledField& a, QuantizationPair pair,
                            const SampledField& f, const SampledField& g);

/// One row of a quantization-invariance comparison.
struct EquivalenceReport {
  QuantizationPair pair_from;
  QuantizationPair pair_to;
  /// Worst relative l2 discrepancy over the battery between applying a at
  /// `pair_from` and applying the converted symbol at `pair_to`.
  double rel_error = 0.0;
  std::string test_battery_id;
  bool pass = false;
};

/// Runs the invariance comparison for every ordered combination (from, to)
/// of `pairs` over a battery of argument pairs: apply_bilinear(a, from, f, g)
/// versus apply_bilinear(convert_symbol(a, from, to), to, f, g).  `pass` in
/// each report means rel_error <= tolerance.  `battery_id` labels the
/// battery in the reports.  Throws UsageError when battery or pairs is
/// empty.
std::vector<EquivalenceReport> verify_invariance(
    const SampledField& a, const std::vector<QuantizationPair>& pairs,
    const std::vector<std::pair<SampledField, SampledField>>& battery,
    double tolerance = 1e-7, const std::string& battery_id = "");

/// Windowed-transform covariance of the symbol transform: with
/// b = convert_symbol(a, pair, (0,0)) and the window converted the same way,
/// the transform magnitudes satisfy
///
///   |V_{psi}(b)(X, Z)| = |V_{phi}(a)(X + S(Z), Z)|,
///   S(zeta, y, z) = (r y + t z, r zeta, t zeta),
///
/// exactly in the continuum.  Evaluates both sides on the full position grid
/// at each plan node (the right side through exact phase-shift translation)
/// and returns the max absolute deviation of the magnitudes.  Throws
/// UsageError when the plan is empty or grids mismatch.
double stft_covariance_check(const SampledField& a, const SampledField& window,
                             QuantizationPair pair, const SamplingPlan& plan);

/// Distribution of operator-to-argument norm ratios over a battery.
struct RatioReport {
  std::vector<double> ratios;
  double max_ratio = 0.0;
  std::string battery_id;
};

/// Norm-ratio boundedness probe: draws `battery_size` seeded Gaussian
/// argument pairs on the operator grid and returns the distribution of
///
///   |Op_pair(a)(f,g)|_{M^{p,q}_w} /
///       (|f|_{M^{p,q}_{w0 w}} * |g|_{M^{inf,inf}_{1/w_R}})
///
/// where w_R(x, eta) = exp(-R(|x|^{1/s1} + |eta|^{1/sigma3})) is built from
/// the ambient exponents induced by `spec` (s1 = max(s2, s3), sigma3 =
/// sigma1: the tightest admissible ambient), so 1/w_R grows and the g-norm
/// is the strongest factor.  The battery draws are narrow-ranged (widths in
/// [0.85, 1.2] of the unit window, small centers and modulations): the
/// weighted suprema are grid-representable only while R stays below the
/// slowest phase-space decay rate across draws, roughly 0.2 for these
/// ranges, so callers should keep R at or below 0.1.  Only boundedness and
/// stability are meaningful; no specific constant is asserted.  Throws
/// NumericError when a denominator norm underflows 1e-280.
RatioReport boundedness_probe(const SampledField& a, QuantizationPair pair,
                              const GevreyClassSpec& spec,
                              const WeightModel& w0, const WeightModel& w,
                              MixedExponents pq, double R, int battery_size,
                              std::uint64_t seed);

/// Decay-continuity check: requires every battery member to pass
/// fit_gs_decay with powers (1/s, 1/sigma) against a unit Gaussian window
/// (UsageError naming the first offender otherwise), then applies the
/// operator to each pair and fits the same decay model to the output.  The
/// caller inspects per-output pass flags.
std::vector<DecayFitReport> gs_continuity_check(
    const SampledField& a, QuantizationPair pair, double s, double sigma,
    const std::vector<std::pair<SampledField, SampledField>>& battery);

}  // namespace bilq

#endif  // BILQ_QUANTIZATION_HPP_
