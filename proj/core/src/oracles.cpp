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

#include "bilq/oracles.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "bilq/errors.hpp"
#include "bilq/parallel.hpp"

namespace bilq {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxQuadraturePoints = 32;

Complex det3(const std::array<std::array<Complex, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::array<std::array<Complex, 3>, 3> inverse3(
    const std::array<std::array<Complex, 3>, 3>& m, Complex det) {
  std::array<std::array<Complex, 3>, 3> inv;
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

void require_shared_rank1_grid(const SampledField& f, const SampledField& g,
                               const char* what) {
  if (f.grid().rank() != 1 || g.grid().rank() != 1) {
    throw UsageError(std::string(what) + ": arguments must have 1 axis");
  }
  f.require_same_grid(g, what);
  if (f.grid().axis(0).points > kMaxQuadraturePoints) {
    throw UsageError(std::string(what) +
                     ": quadrature reference limited to N <= 32");
  }
}

}  // namespace

Complex GaussianSymbolSpec::evaluate(const std::vector<double>& u) const {
  if (u.size() != axes.size()) {
    throw UsageError("GaussianSymbolSpec: point dimension mismatch");
  }
  double re = 0.0;
  double im = 0.0;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const double v = u[a] - axes[a].center;
    re -= v * v / (2.0 * axes[a].width * axes[a].width);
    im += axes[a].modulation * v;
  }
  return amplitude * std::exp(Complex(re, im));
}

SampledField GaussianSymbolSpec::sample(const GridSpec& grid) const {
  if (grid.rank() != static_cast<int>(axes.size())) {
    throw UsageError("GaussianSymbolSpec: grid rank mismatch");
  }
  return SampledField::sample(
      grid, [this](const std::vector<double>& u) { return evaluate(u); });
}

ConvertedGaussianOracle::ConvertedGaussianOracle(const GaussianSymbolSpec& a,
                                                 QuantizationPair from,
                                                 QuantizationPair to) {
  from.validate();
  to.validate();
  if (a.axes.size() != 3) {
    throw UsageError("ConvertedGaussianOracle: symbol must have 3 axes");
  }
  const double dr = kConversionPhaseSign * (from.r - to.r);
  const double dt = kConversionPhaseSign * (from.t - to.t);

  // A = W - 2iQ with W = diag(width^2) and the dual phase dr*y*zeta +
  // dt*z*zeta written through Q = (1/2) [[0,dr,dt],[dr,0,0],[dt,0,0]].
  std::array<double, 3> w2;
  std::array<double, 3> nu;
  for (int i = 0; i < 3; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    w2[ui] = a.axes[ui].width * a.axes[ui].width;
    nu[ui] = a.axes[ui].modulation;
    mu_[ui] = a.axes[ui].center;
  }
  std::array<std::array<Complex, 3>, 3> m{};
  m[0][0] = w2[0];
  m[1][1] = w2[1];
  m[2][2] = w2[2];
  m[0][1] = m[1][0] = Complex(0.0, -dr);
  m[0][2] = m[2][0] = Complex(0.0, -dt);
  m[1][2] = m[2][1] = 0.0;

  const Complex det = det3(m);
  a_inv_ = inverse3(m, det);

  // det(A) = w1^2 w2^2 w3^2 + dr^2 w3^2 + dt^2 w2^2 is real positive for
  // diagonal W, so both square roots below stay on principal branches.
  const Complex det_w = w2[0] * w2[1] * w2[2];
  double nu_w_nu = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    half_bw_[ui] = 0.5 * w2[ui] * nu[ui];
    nu_w_nu += w2[ui] * nu[ui] * nu[ui];
  }
  prefactor_ = a.amplitude * std::sqrt(det_w) / std::sqrt(det) *
               std::exp(Complex(-0.5 * nu_w_nu, 0.0));
}

Complex ConvertedGaussianOracle::evaluate(const std::vector<double>& u) const {
  if (u.size() != 3) {
    throw UsageError("ConvertedGaussianOracle: point dimension mismatch");
  }
  // exp((1/2) B^T A^{-1} B) with B = W nu + i (u - mu) = 2*half_bw_ + i dx.
  std::array<Complex, 3> b;
  for (int i = 0; i < 3; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    b[ui] = 2.0 * half_bw_[ui] + Complex(0.0, u[ui] - mu_[ui]);
  }
  Complex quad = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      quad += b[static_cast<std::size_t>(i)] *
              a_inv_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
              b[static_cast<std::size_t>(j)];
    }
  }
  return prefactor_ * std::exp(0.5 * quad);
}

SampledField ConvertedGaussianOracle::sample(const GridSpec& grid) const {
  if (grid.rank() != 3) {
    throw UsageError("ConvertedGaussianOracle: grid must have 3 axes");
  }
  return SampledField::sample(
      grid, [this](const std::vector<double>& u) { return evaluate(u); });
}

double gaussian_derivative(int n, double u) {
  if (n < 0) {
    throw UsageError("gaussian_derivative: order must be nonnegative");
  }
  // Probabilists' Hermite recurrence.
  double h_prev = 1.0;
  double h = u;
  if (n == 0) h = 1.0;
  for (int k = 1; k < n; ++k) {
    const double h_next = u * h - static_cast<double>(k) * h_prev;
    h_prev = h;
    h = h_next;
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * h * std::exp(-0.5 * u * u);
}

Complex gaussian_stft_value(const GaussianSpec1D& f, double window_width,
                            double x, double xi) {
  const double sigma2 = f.width * f.width;
  const double tau2 = window_width * window_width;
  const double a = 0.5 / sigma2 + 0.5 / tau2;
  const Complex b(f.center / sigma2 + x / tau2, f.modulation - xi);
  const Complex c(-f.center * f.center / (2.0 * sigma2) - x * x / (2.0 * tau2),
                  -f.modulation * f.center);
  return std::sqrt(0.5 / a) * std::exp(b * b / (4.0 * a) + c);
}

SampledField apply_bilinear_quadrature(
    const std::function<Complex(double, double, double)>& a,
    QuantizationPair pair, const SampledField& f, const SampledField& g) {
  pair.validate();
  require_shared_rank1_grid(f, g, "apply_bilinear_quadrature");

  const AxisSpec axis = f.grid().axis(0);
  const AxisSpec dual = axis.dual();
  const int n = axis.points;
  const double dx = axis.spacing();
  const double dxi = axis.dual_spacing();
  const double scale = dx * dx * dxi * dxi / (4.0 * kPi * kPi);

  // Phase tables over the index difference: e^{i (x_i - y_j) xi_k} depends
  // on i - j only.
  std::vector<Complex> phase(
      static_cast<std::size_t>(2 * n - 1) * static_cast<std::size_t>(n));
  for (int d = -(n - 1); d <= n - 1; ++d) {
    for (int k = 0; k < n; ++k) {
      const double ph = d * dx * dual.coordinate(k);
      phase[static_cast<std::size_t>(d + n - 1) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(k)] = Complex(std::cos(ph), std::sin(ph));
    }
  }

  SampledField out(f.grid());
  out.roles() = f.roles();
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i_flat) {
    const int i = static_cast<int>(i_flat);
    const double x = axis.coordinate(i);
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double y = axis.coordinate(j);
      const Complex* py =
          &phase[static_cast<std::size_t>(i - j + n - 1) *
                 static_cast<std::size_t>(n)];
      for (int l = 0; l < n; ++l) {
        const double z = axis.coordinate(l);
        const Complex fg = f[static_cast<std::size_t>(j)] *
                           g[static_cast<std::size_t>(l)];
        if (fg == Complex(0.0, 0.0)) continue;
        const double u = x + pair.r * (y - x) + pair.t * (z - x);
        const Complex* pz =
            &phase[static_cast<std::size_t>(i - l + n - 1) *
                   static_cast<std::size_t>(n)];
        Complex inner = 0.0;
        for (int k = 0; k < n; ++k) {
          Complex row = 0.0;
          const double xi = dual.coordinate(k);
          for (int m = 0; m < n; ++m) {
            row += a(u, xi, dual.coordinate(m)) * pz[m];
          }
          inner += row * py[k];
        }
        acc += inner * fg;
      }
    }
    out[i_flat] = acc * scale;
  });
  return out;
}

std::vector<Complex> dense_bilinear_matrix(
    const std::function<Complex(double, double, double)>& a,
    QuantizationPair pair, const SampledField& g, const GridSpec& grid) {
  if (!(grid == g.grid())) {
    throw UsageError("dense_bilinear_matrix: g must live on the target grid");
  }
  const int n = grid.axis(0).points;
  std::vector<Complex> matrix(static_cast<std::size_t>(n) *
                              static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    SampledField delta(grid);
    delta[static_cast<std::size_t>(j)] = Complex(1.0, 0.0);
    const SampledField column = apply_bilinear_quadrature(a, pair, delta, g);
    for (int i = 0; i < n; ++i) {
      matrix[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j)] = column[static_cast<std::size_t>(i)];
    }
  }
  return matrix;
}

Complex fit_constant_offset(const std::vector<Complex>& m_from,
                            const std::vector<Complex>& m_to,
                            const SampledField& g,
                            const std::vector<SampledField>& probes) {
  if (g.grid().rank() != 1) {
    throw UsageError("fit_constant_offset: g must have 1 axis");
  }
  const std::size_t n = g.size();
  if (m_from.size() != n * n || m_to.size() != n * n) {
    throw UsageError("fit_constant_offset: matrix size mismatch");
  }
  if (probes.empty()) {
    throw UsageError("fit_constant_offset: probes must be nonempty");
  }

  Complex num = 0.0;
  double den = 0.0;
  for (const SampledField& probe : probes) {
    probe.require_same_grid(g, "fit_constant_offset");
    for (std::size_t i = 0; i < n; ++i) {
      Complex dfi = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        dfi += (m_from[i * n + j] - m_to[i * n + j]) * probe[j];
      }
      const Complex ref = g[i] * probe[i];
      num += std::conj(ref) * dfi;
      den += std::norm(ref);
    }
  }
  if (!(den > 0.0)) {
    throw NumericError("fit_constant_offset: probes vanish against g");
  }
  return num / den;
}

}  // namespace bilq
