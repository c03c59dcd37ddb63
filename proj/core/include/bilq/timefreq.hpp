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
/// @brief Short-time Fourier transform over the full lattice and its exact
/// discrete inversion, weighted mixed phase-space norms, modulation norms,
/// and exponential-decay fitting of transform magnitudes.

#ifndef BILQ_TIMEFREQ_HPP_
#define BILQ_TIMEFREQ_HPP_

#include <cstdint>
#include <vector>

#include "bilq/field.hpp"
#include "bilq/grid.hpp"
#include "bilq/weights.hpp"

namespace bilq {

/// Content hash of a field (grid geometry and raw sample bytes); used to
/// recognize whether two windows are the same object.
std::uint64_t field_content_hash(const SampledField& f);

/// A transform over phase space: the base field lives on a 2m-axis grid
/// whose first m axes are the original space lattice and last m axes its
/// exact dual.  The analysis window is carried along so that inversion and
/// window-dependent diagnostics can verify compatibility.
class PhaseSpaceField {
 public:
  PhaseSpaceField(SampledField base, SampledField window);

  const SampledField& base() const { return base_; }
  SampledField& base() { return base_; }
  const SampledField& window() const { return window_; }
  std::uint64_t window_id() const { return window_id_; }
  /// m: the rank of the originating grid.
  int space_rank() const { return window_.grid().rank(); }

 private:
  SampledField base_;
  SampledField window_;
  std::uint64_t window_id_;
};

/// Windowed transform V(x, xi) of f against `window`:
///
///   V(x, xi) = (2 pi)^{-m/2} * dx^m * sum_y f(y) conj(window(y - x)) e^{-i<y,xi>}
///
/// with the window translated cyclically and x running over the full space
/// lattice, xi over its dual.  Throws UsageError on grid mismatch, a zero
/// window, or an output too large to materialize (use stft_at_frequency for
/// high-rank fields).
PhaseSpaceField stft(const SampledField& f, const SampledField& window);

/// One dual-variable column of the transform: V(x, Z) for every lattice x at
/// a single (not necessarily lattice) frequency point Z, computed by a
/// correlation FFT.  For Z on the dual lattice this matches stft() exactly.
SampledField stft_at_frequency(const SampledField& f,
                               const SampledField& window,
                               const std::vector<double>& Z);

/// Reconstructs f from its transform by the adjoint formula
///
///   f(u) = (2 pi)^{-m/2} / <window, V.window()> *
///          dx^m dxi^m * sum_{x,xi} V(x,xi) window(u - x) e^{i<u,xi>},
///
/// which inverts stft() exactly on the lattice.  Reconstructing with a
/// window different from the analysis window is permitted (the pairing
/// above rescales the result); a non-null `warning` is then filled.
/// Throws NumericError when the window pairing is numerically zero.
SampledField stft_adjoint_invert(const PhaseSpaceField& V,
                                 const SampledField& window,
                                 std::string* warning = nullptr);

/// Inner/outer Lebesgue exponents of a mixed norm; kInf encodes infinity.
struct MixedExponents {
  static constexpr double kInf = -1.0;
  double p = 2.0;
  double q = 2.0;

  static bool is_inf(double e) { return e == kInf; }
  void validate() const;
};

/// Weighted mixed norm of a phase-space field: inner exponent p over the
/// space axes (Riemann sum with the space cell volume; max for infinity),
/// outer exponent q over the frequency axes.  The weight is evaluated
/// pointwise on the phase-space grid.  Computed in rescaled units so that
/// large dynamic ranges do not overflow.
double mixed_norm(const PhaseSpaceField& F, const WeightModel& w,
                  const MixedExponents& pq);

/// Overload taking an already-sampled (strictly positive real) weight field
/// on the same phase-space grid, for weights that exist only as samples.
double mixed_norm(const PhaseSpaceField& F, const SampledField& w,
                  const MixedExponents& pq);

/// Norm of f in the modulation family: mixed_norm(stft(f, window), w, pq).
double modulation_norm(const SampledField& f, const SampledField& window,
                       const WeightModel& w, const MixedExponents& pq);

/// Result of fitting |V(P)| <= C exp(-sum_j r_j |P_j|^{powers_j}).
struct DecayFitReport {
  std::vector<double> rates;   ///< fitted r_j >= 0, one per phase-space axis
  std::vector<double> powers;  ///< the exponents the fit was asked to use
  double log_prefactor = 0.0;  ///< log C = log max |V|
  /// max over fitted points of (log|V| - model); <= tolerance when the fit
  /// is consistent.
  double residual = 0.0;
  bool pass = false;
};

/// Fits per-axis exponential decay rates to |V|.  Samples with |V| below
/// `floor` (absolute) are excluded as numerically zero; fit points require
/// every coordinate to be 0 or of magnitude >= 1 so that increasing a power
/// can only steepen the model.  Rates come from coordinate-ray margins,
/// then a common rescale enforces a nonpositive residual on all fit points;
/// pass requires every rate >= r_min.  Throws NumericError when every
/// sample sits below the floor.
DecayFitReport fit_gs_decay(const PhaseSpaceField& V,
                            const std::vector<double>& powers, double floor,
                            double r_min = 1e-3);

/// Core of fit_gs_decay operating on a bare field (any rank); exposed for
/// diagnostics that assemble magnitude data without a full transform.
DecayFitReport fit_decay_field(const SampledField& modulus,
                               const std::vector<double>& powers, double floor,
                               double r_min = 1e-3);

/// One pre-reduced observation for a decay fit: a log-magnitude paired with
/// the per-slot values |P_j|^{powers_j} of the decay model at the sample
/// location.  Entries of `phi` that correspond to gated-out (effectively
/// zero) coordinates must be exactly 0.
struct DecaySample {
  double log_value = 0.0;
  std::vector<double> phi;
};

/// Shared fitting core: rates per slot from single-slot ("ray") sample
/// margins against the prefactor, then a joint rescale enforcing a
/// nonpositive residual over all samples; pass requires every rate >= r_min.
/// `log_prefactor` must dominate the bulk of the data (typically the log of
/// the global max magnitude).  `powers` is recorded in the report and must
/// have one entry per phi slot.  Throws NumericError when `samples` is
/// empty.
DecayFitReport fit_decay_samples(const std::vector<DecaySample>& samples,
                                 const std::vector<double>& powers,
                                 double log_prefactor, double r_min = 1e-3);

}  // namespace bilq

#endif  // BILQ_TIMEFREQ_HPP_
