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
/// @brief Independent reference pathways used to validate the fast FFT
/// routes: closed-form Gaussian evaluations (windowed transforms and the
/// quantization transform of Gaussian symbols), direct small-N quadrature of
/// the bilinear operator definition, and dense operator matrices with a
/// least-squares constant-offset regression.  Everything here trades speed
/// for independence: no code path below calls the FFT pipeline.

#ifndef BILQ_ORACLES_HPP_
#define BILQ_ORACLES_HPP_

#include <array>
#include <functional>
#include <vector>

#include "bilq/field.hpp"
#include "bilq/grid.hpp"
#include "bilq/quantization.hpp"

namespace bilq {

/// One separable factor of a Gaussian model:
/// exp(-(u - center)^2 / (2 width^2) + i modulation (u - center)).
struct GaussianSpec1D {
  double width = 1.0;
  double center = 0.0;
  double modulation = 0.0;
};

/// A separable Gaussian on any number of axes with a global complex
/// amplitude.
struct GaussianSymbolSpec {
  std::vector<GaussianSpec1D> axes;
  Complex amplitude = 1.0;

  Complex evaluate(const std::vector<double>& u) const;
  SampledField sample(const GridSpec& grid) const;
};

/// Closed form of the quantization transform applied to a rank-3 separable
/// Gaussian: with W = diag(width^2), mu/nu the centers/modulations, and the
/// transform's quadratic dual phase q(Z) = kappa ((r1-r2) y + (t1-t2) z)
/// zeta written as Z^T Q Z, the converted symbol is the complex Gaussian
///
///   b(u) = amp det(W)^{1/2} det(A)^{-1/2}
///          exp( (1/2) B^T A^{-1} B - (1/2) nu^T W nu ),
///   A = W - 2 i Q,  B = W nu + i (u - mu).
///
/// For diagonal W the determinant of A is real positive, so the square root
/// branch is unambiguous.  Evaluation is exact in the continuum; sampled
/// comparisons see only periodization error.
class ConvertedGaussianOracle {
 public:
  ConvertedGaussianOracle(const GaussianSymbolSpec& a, QuantizationPair from,
                          QuantizationPair to);

  Complex evaluate(const std::vector<double>& u) const;
  SampledField sample(const GridSpec& grid) const;

 private:
  std::array<double, 3> mu_;
  std::array<Complex, 3> half_bw_;        // (1/2) W nu, the constant part of B
  std::array<std::array<Complex, 3>, 3> a_inv_;
  Complex prefactor_;
};

/// n-th derivative of exp(-u^2/2), via the Hermite recurrence
/// He_{n+1}(u) = u He_n(u) - n He_{n-1}(u):
/// d^n/du^n exp(-u^2/2) = (-1)^n He_n(u) exp(-u^2/2).  Requires n >= 0.
double gaussian_derivative(int n, double u);

/// Closed-form windowed transform of a one-axis Gaussian against a centered
/// real Gaussian window exp(-y^2 / (2 window_width^2)):
///
///   V(x, xi) = (2 pi)^{-1/2} \int f(y) phi(y - x) e^{-i y xi} dy
///            = (2 pi)^{-1/2} sqrt(pi / A) exp(B^2 / (4A) + C),
///   A = 1/(2 sigma^2) + 1/(2 tau^2),
///   B = mu/sigma^2 + x/tau^2 + i (nu - xi),
///   C = -mu^2/(2 sigma^2) - x^2/(2 tau^2) - i nu mu.
///
/// Multi-axis separable values are products of per-axis calls.
Complex gaussian_stft_value(const GaussianSpec1D& f, double window_width,
                            double x, double xi);

/// Direct four-fold quadrature of the bilinear operator definition for
/// rank-1 arguments, with the symbol supplied as an analytic callable
/// a(u, xi, eta) evaluated at the exact (possibly off-lattice) first
/// argument u = x + r(y-x) + t(z-x):
///
///   Op(f,g)(x_i) = (2 pi)^{-2} dy dz dxi deta
///       sum_{j,l,k,m} e^{i(x_i-y_j) xi_k} e^{i(x_i-z_l) eta_m}
///                     a(u_{ijl}, xi_k, eta_m) f_j g_l.
///
/// Cost O(N^5); refuses N > 32.  f and g must share one rank-1 grid.
SampledField apply_bilinear_quadrature(
    const std::function<Complex(double, double, double)>& a,
    QuantizationPair pair, const SampledField& f, const SampledField& g);

/// Dense matrix (row-major, N x N) of the linear map f -> Op_pair(a)(f, g)
/// for fixed g, columns obtained by quadrature responses to unit lattice
/// deltas, so a plain matrix-vector product reproduces the sampled output.
/// Uses the full four-fold sum (no separability shortcut); same N limit as
/// the quadrature above.
std::vector<Complex> dense_bilinear_matrix(
    const std::function<Complex(double, double, double)>& a,
    QuantizationPair pair, const SampledField& g, const GridSpec& grid);

/// Least-squares fit of the constant c in  m_from ~= m_to + c * diag(g)
/// over a battery of probe vectors:
///
///   c = sum_b <g f_b, (m_from - m_to) f_b> / sum_b |g f_b|^2.
///
/// Probes must be rank-1 fields on g's grid.  The fit isolates the
/// constant-offset component of the matrix difference as seen by smooth,
/// well-localized states, which suppresses lattice-edge artifacts
/// quadratically.
Complex fit_constant_offset(const std::vector<Complex>& m_from,
                            const std::vector<Complex>& m_to,
                            const SampledField& g,
                            const std::vector<SampledField>& probes);

}  // namespace bilq

#endif  // BILQ_ORACLES_HPP_
