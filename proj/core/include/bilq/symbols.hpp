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
/// @brief Symbol-class diagnostics for three-axis symbols a(x, xi, eta):
/// factorially weighted derivative ladders, windowed-transform decay
/// characterizations, weighted mixed-norm finiteness, and the contraction of
/// a bilinear symbol against a fixed second argument.  The three diagnostics
/// realize one and the same class membership through different computations
/// and are expected to agree as verdicts.

#ifndef BILQ_SYMBOLS_HPP_
#define BILQ_SYMBOLS_HPP_

#include <limits>
#include <string>
#include <vector>

#include "bilq/field.hpp"
#include "bilq/grid.hpp"
#include "bilq/plan.hpp"
#include "bilq/timefreq.hpp"
#include "bilq/weights.hpp"

namespace bilq {

/// Parameters of a symbol class over (x, xi, eta): a symbol a belongs to the
/// class when its derivatives satisfy
///
///   |d_x^a d_xi^b d_eta^g a| <= C h^(a+b+g) (a!)^sigma1 (b!)^s2 (g!)^s3 w
///
/// for the weight w = `weight` evaluated at (x, xi, eta) — for some h > 0 in
/// the Roumieu flavor, for every h > 0 in the Beurling flavor.  Equivalently,
/// the windowed transform of a decays along the dual variables (zeta, y, z)
/// like exp(-R(|zeta|^(1/sigma1) + |y|^(1/s2) + |z|^(1/s3))).
///
/// `membership_h` optionally records the h at which membership is asserted
/// by a generator (infinity = unspecified); diagnostics report fitted values
/// and never enforce it.
struct GevreyClassSpec {
  enum class Flavor { kRoumieu, kBeurling };

  double sigma1 = 1.0;
  double s2 = 1.0;
  double s3 = 1.0;
  Flavor flavor = Flavor::kRoumieu;
  WeightModel weight;
  double membership_h = std::numeric_limits<double>::infinity();

  /// The regularity exponent attached to an axis of the rank-3 symbol
  /// layout: sigma1 for axis 0, s2 for axis 1, s3 for axis 2.
  double regularity_exponent(int axis) const;
  /// Reciprocals 1/sigma1, 1/s2, 1/s3 per axis: the decay powers of the
  /// transform-side characterization.
  std::vector<double> dual_decay_powers() const;
  void validate() const;
};

/// One row of the derivative ladder: derivative orders per axis and the log
/// of the grid sup of |d^orders a| / ((a!)^sigma1 (b!)^s2 (g!)^s3 w).
struct ClassOrderEntry {
  std::vector<int> orders;
  double log_sup_ratio = 0.0;
};

/// Result of the derivative-ladder class diagnostic.
struct ClassNormReport {
  /// max over positive orders of (sup ratio)^(1/order): the smallest h that
  /// makes every tested ratio at most 1.  Zero when all positive-order
  /// ratios vanish (e.g. constant symbols).
  double h_fit = 0.0;
  /// Largest total derivative order tested.
  int max_order = 0;
  /// Per-(a,b,g) rows, all totals 0..max_order.
  std::vector<ClassOrderEntry> table;
  /// Order-0 ratio (log): the prefactor C of the bound.
  double log_prefactor = 0.0;
  /// h_fit restricted to orders <= k, for k = 1..max_order (the Beurling
  /// ladder heuristic inspects its trend).
  std::vector<double> h_ladder;
  /// First total order at which a derivative left the representable range,
  /// or -1 when none did.
  int blow_up_order = -1;
  bool pass = false;
};

/// Derivative-ladder diagnostic: computes every mixed spectral derivative of
/// total order <= K, divides its modulus pointwise by the factorial weights
/// and the class weight, and records the grid sup per order tuple.
/// h_fit is the max over positive orders of (sup ratio)^(1/order), so the
/// bound above holds with h = h_fit, C = exp(log_prefactor) on every tested
/// order.  Roumieu pass = every ratio finite (no blow-up); Beurling pass
/// additionally requires the h-ladder to be nonincreasing within 5% slack —
/// a documented heuristic, since no single grid can quantify over all h.
/// Throws UsageError when K is negative, above 8, or the field is not
/// rank 3; NumericError when the symbol is not finite everywhere.
ClassNormReport gamma_norm_estimate(const SampledField& a,
                                    const GevreyClassSpec& spec, int K);

/// Transform-side diagnostic: evaluates the windowed transform of `a` at the
/// plan's frequency nodes (full position grid per node), reduces each node
/// to U(Z) = sup_X |V(X,Z)| / w(X), and fits decay rates in
/// exp(-R * |Z_axis|^power) per axis with the shared decay-fit core.
/// Roumieu pass = every fitted rate >= the smallest R_ladder entry; Beurling
/// pass = for each ladder entry R_k the fit restricted to magnitudes above a
/// shrinking floor achieves R_k (heuristic, as for the derivative ladder).
/// `R_ladder` must be nonempty, positive, strictly increasing.
DecayFitReport stft_class_check(const SampledField& a,
                                const SampledField& window,
                                const GevreyClassSpec& spec,
                                const std::vector<double>& R_ladder);

/// Overload taking an explicit sampling plan (the default builds
/// make_class_plan(a.grid())).
DecayFitReport stft_class_check(const SampledField& a,
                                const SampledField& window,
                                const GevreyClassSpec& spec,
                                const std::vector<double>& R_ladder,
                                const SamplingPlan& plan);

/// Weighted mixed-norm diagnostic: the L^(inf,q) norm over the plan of
/// V(X,Z) / w_R(X,Z), where w_R(X,Z) = w(X) exp(-R Phi(Z)) combines the
/// class weight with the dual-variable decay at rate R.  Inner norm = sup
/// over the position grid, outer norm = q-sum over ray nodes with their
/// quadrature weights (q = MixedExponents::kInf takes the sup over all
/// nodes, scattered included).  Returns +infinity when the accumulation
/// leaves the representable range; class membership at desk scale reads as
/// the value staying below a caller-chosen threshold.
double modspace_class_check(const SampledField& a, const SampledField& window,
                            const GevreyClassSpec& spec, double q, double R);

/// Overload taking an explicit sampling plan.
double modspace_class_check(const SampledField& a, const SampledField& window,
                            const GevreyClassSpec& spec, double q, double R,
                            const SamplingPlan& plan);

/// Contraction of a three-axis symbol against a fixed second argument:
///
///   a_g(x, xi) = (2 pi)^(-1/2) \int e^{i x eta} a(x, xi, eta) g^(eta) d eta
///
/// realized by multiplying a by the transform of g along the eta axis,
/// applying the inverse transform in eta, and reading it at the diagonal
/// point x.  Requires a's eta axis to equal the dual of g's axis and a's x
/// axis to equal g's axis; throws UsageError otherwise.
SampledField partial_symbol(const SampledField& a, const SampledField& g);

}  // namespace bilq

#endif  // BILQ_SYMBOLS_HPP_
