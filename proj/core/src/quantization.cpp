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

#include "bilq/quantization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bilq/battery.hpp"
#include "bilq/errors.hpp"
#include "bilq/fourier.hpp"
#include "bilq/parallel.hpp"

namespace bilq {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kPairTolerance = 1e-12;
constexpr double kNormFloor = 1e-280;

bool is_zero_pair(QuantizationPair p) { return p.r == 0.0 && p.t == 0.0; }

void require_operator_grids(const SampledField& a, const SampledField& f,
                            const SampledField& g, const char* what) {
  if (a.grid().rank() != 3) {
    throw UsageError(std::string(what) + ": symbol must have 3 axes");
  }
  if (f.grid().rank() != 1 || g.grid().rank() != 1) {
    throw UsageError(std::string(what) + ": arguments must have 1 axis");
  }
  f.require_same_grid(g, what);
  if (!(a.grid().axis(0) == f.grid().axis(0))) {
    throw UsageError(std::string(what) +
                     ": symbol x axis must match the argument axis");
  }
  if (!(a.grid().axis(1) == f.grid().axis(0).dual()) ||
      !(a.grid().axis(2) == f.grid().axis(0).dual())) {
    throw UsageError(std::string(what) +
                     ": symbol frequency axes must be duals of the argument "
                     "axis");
  }
}

// Unit-width centered Gaussian window on a rank-1 grid.
SampledField unit_window(const GridSpec& grid) {
  return SampledField::sample(grid, [](const std::vector<double>& u) {
    return Complex(std::exp(-0.5 * u[0] * u[0]), 0.0);
  });
}

}  // namespace

void QuantizationPair::validate() const {
  if (!(r >= -kPairTolerance) || !(t >= -kPairTolerance) ||
      !(r <= 1.0 + kPairTolerance) || !(t <= 1.0 + kPairTolerance) ||
      !(r + t <= 1.0 + kPairTolerance)) {
    throw UsageError(
        "QuantizationPair: need r, t in [0,1] with r + t <= 1; got r = " +
        std::to_string(r) + ", t = " + std::to_string(t));
  }
}

SampledField convert_symbol(const SampledField& a, QuantizationPair from,
                            QuantizationPair to) {
  from.validate();
  to.validate();
  if (a.grid().rank() != 3) {
    throw UsageError("convert_symbol: symbol must have 3 axes");
  }
  const double dr = kConversionPhaseSign * (from.r - to.r);
  const double dt = kConversionPhaseSign * (from.t - to.t);
  if (dr == 0.0 && dt == 0.0) return a;

  SampledField spectrum = forward_ft(a, AxisSelection::all(3));
  const GridSpec& dual_grid = spectrum.grid();
  const int n0 = dual_grid.axis(0).points;
  const int n1 = dual_grid.axis(1).points;
  const int n2 = dual_grid.axis(2).points;
  std::vector<Complex>& values = spectrum.values();
  std::size_t flat = 0;
  for (int p = 0; p < n0; ++p) {
    const double zeta = dual_grid.axis(0).coordinate(p);
    for (int q = 0; q < n1; ++q) {
      const double y = dual_grid.axis(1).coordinate(q);
      const double base = dr * y * zeta;
      for (int s = 0; s < n2; ++s, ++flat) {
        const double z = dual_grid.axis(2).coordinate(s);
        values[flat] *= std::polar(1.0, base + dt * z * zeta);
      }
    }
  }
  return inverse_ft(spectrum, AxisSelection::all(3));
}

SampledField apply_linear(const SampledField& a, double t,
                          const SampledField& f) {
  QuantizationPair{t, 0.0}.validate();
  if (a.grid().rank() != 2 || f.grid().rank() != 1) {
    throw UsageError("apply_linear: need a 2-axis symbol and a 1-axis field");
  }
  const AxisSpec axis = f.grid().axis(0);
  if (!(a.grid().axis(0) == axis) || !(a.grid().axis(1) == axis.dual())) {
    throw UsageError("apply_linear: symbol axes must be (x, dual x)");
  }

  const int n = axis.points;
  const double dx = axis.spacing();
  const AxisSpec dual = axis.dual();
  const double dxi = axis.dual_spacing();
  const AxisSpec zeta_axis = axis.dual();  // dual of the x axis
  const double dzeta = zeta_axis.spacing();

  // Trigonometric interpolant of the symbol along x: forward transform in
  // axis 0, then semidiscrete evaluation at off-lattice points.
  const SampledField spectrum = forward_ft(a, AxisSelection{0});
  // Transposed copy: row k holds the zeta-profile of column xi_k.
  std::vector<Complex> spec_t(static_cast<std::size_t>(n) *
                              static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    for (int k = 0; k < n; ++k) {
      spec_t[static_cast<std::size_t>(k) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(p)] =
          spectrum[static_cast<std::size_t>(p) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(k)];
    }
  }

  // Phase table e^{i d dx xi_k} over index differences d = i - j.
  std::vector<Complex> phase(static_cast<std::size_t>(2 * n - 1) *
                             static_cast<std::size_t>(n));
  for (int d = -(n - 1); d <= n - 1; ++d) {
    for (int k = 0; k < n; ++k) {
      const double ph = d * dx * dual.coordinate(k);
      phase[static_cast<std::size_t>(d + n - 1) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(k)] = Complex(std::cos(ph), std::sin(ph));
    }
  }

  const double interp_scale = kInvSqrt2Pi * dzeta;
  const double quad_scale = dx * dxi / (2.0 * kPi);

  SampledField out(f.grid());
  out.roles() = f.roles();
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i_flat) {
    const int i = static_cast<int>(i_flat);
    const double x = axis.coordinate(i);
    std::vector<Complex> eu(static_cast<std::size_t>(n));
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const Complex fj = f[static_cast<std::size_t>(j)];
      if (fj == Complex(0.0, 0.0)) continue;
      const double u = x - t * (x - axis.coordinate(j));
      for (int p = 0; p < n; ++p) {
        eu[static_cast<std::size_t>(p)] =
            std::polar(1.0, u * zeta_axis.coordinate(p));
      }
      const Complex* prow =
          &phase[static_cast<std::size_t>(i - j + n - 1) *
                 static_cast<std::size_t>(n)];
      Complex sum_k = 0.0;
      for (int k = 0; k < n; ++k) {
        const Complex* srow =
            &spec_t[static_cast<std::size_t>(k) * static_cast<std::size_t>(n)];
        Complex interp = 0.0;
        for (int p = 0; p < n; ++p) {
          interp += srow[p] * eu[static_cast<std::size_t>(p)];
        }
        sum_k += interp * prow[k];
      }
      acc += fj * sum_k;
    }
    out[i_flat] = acc * interp_scale * quad_scale;
  });
  return out;
}

SampledField apply_linear_fft(const SampledField& a, const SampledField& f) {
  if (a.grid().rank() != 2 || f.grid().rank() != 1) {
    throw UsageError(
        "apply_linear_fft: need a 2-axis symbol and a 1-axis field");
  }
  const AxisSpec axis = f.grid().axis(0);
  if (!(a.grid().axis(0) == axis) || !(a.grid().axis(1) == axis.dual())) {
    throw UsageError("apply_linear_fft: symbol axes must be (x, dual x)");
  }

  const SampledField f_hat = forward_ft(f, AxisSelection{0});
  SampledField b = a;
  const std::size_t n = static_cast<std::size_t>(axis.points);
  for (std::size_t flat = 0; flat < b.size(); ++flat) {
    b[flat] *= f_hat[flat % n];
  }
  const SampledField c = inverse_ft(b, AxisSelection{1});

  SampledField out(f.grid());
  out.roles() = f.roles();
  for (int i = 0; i < axis.points; ++i) {
    out[static_cast<std::size_t>(i)] = c.at({i, i});
  }
  return out;
}

SampledField apply_bilinear(const SampledField& a, QuantizationPair pair,
                            const SampledField& f, const SampledField& g) {
  pair.validate();
  require_operator_grids(a, f, g, "apply_bilinear");
  const SampledField& a0 =
      is_zero_pair(pair) ? a : convert_symbol(a, pair, QuantizationPair{});
  return apply_linear_fft(partial_symbol(a0, g), f);
}

std::vector<EquivalenceReport> verify_invariance(
    const SampledField& a, const std::vector<QuantizationPair>& pairs,
    const std::vector<std::pair<SampledField, SampledField>>& battery,
    double tolerance, const std::string& battery_id) {
  if (pairs.empty()) {
    throw UsageError("verify_invariance: pairs must be nonempty");
  }
  if (battery.empty()) {
    throw UsageError("verify_invariance: battery must be nonempty");
  }

  std::vector<EquivalenceReport> reports;
  for (const QuantizationPair& from : pairs) {
    // Outputs at `from` are shared across all targets.
    std::vector<SampledField> reference;
    reference.reserve(battery.size());
    for (const auto& [f, g] : battery) {
      reference.push_back(apply_bilinear(a, from, f, g));
    }
    for (const QuantizationPair& to : pairs) {
      const SampledField b = convert_symbol(a, from, to);
      EquivalenceReport report;
      report.pair_from = from;
      report.pair_to = to;
      report.test_battery_id = battery_id;
      double worst = 0.0;
      for (std::size_t i = 0; i < battery.size(); ++i) {
        const SampledField via_to =
            apply_bilinear(b, to, battery[i].first, battery[i].second);
        worst = std::max(worst, relative_l2_error(reference[i], via_to));
      }
      report.rel_error = worst;
      report.pass = worst <= tolerance;
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

double stft_covariance_check(const SampledField& a, const SampledField& window,
                             QuantizationPair pair, const SamplingPlan& plan) {
  pair.validate();
  if (a.grid().rank() != 3) {
    throw UsageError("stft_covariance_check: symbol must have 3 axes");
  }
  a.require_same_grid(window, "stft_covariance_check");
  if (!(plan.base() == a.grid())) {
    throw UsageError("stft_covariance_check: plan grid mismatch");
  }
  if (plan.size() == 0) {
    throw UsageError("stft_covariance_check: plan is empty");
  }

  const QuantizationPair zero{};
  const SampledField b = convert_symbol(a, pair, zero);
  const SampledField psi = convert_symbol(window, pair, zero);

  // The transform column at frequency Z is inverse_ft of
  // spectrum(u . e^{-i<u,Z>}) . conj(spectrum(window)).  Hoist the four
  // forward transforms out of the node loop; when Z sits on the dual
  // lattice the modulation is an exact cyclic shift of the hoisted
  // spectrum (the wrap phase e^{i pi N} is +1 for even N), and the three
  // translations of the right side fold into the same spectral multiply.
  const AxisSelection all3 = AxisSelection::all(3);
  const SampledField spec_b = forward_ft(b, all3);
  const SampledField spec_a = forward_ft(a, all3);
  SampledField win_psi = forward_ft(psi, all3);
  for (std::size_t i = 0; i < win_psi.size(); ++i) {
    win_psi[i] = std::conj(win_psi[i]);
  }
  SampledField win_a = forward_ft(window, all3);
  for (std::size_t i = 0; i < win_a.size(); ++i) {
    win_a[i] = std::conj(win_a[i]);
  }

  const int n0 = a.grid().axis(0).points;
  const int n1 = a.grid().axis(1).points;
  const int n2 = a.grid().axis(2).points;
  std::array<AxisSpec, 3> dual_axis = {a.grid().axis(0).dual(),
                                       a.grid().axis(1).dual(),
                                       a.grid().axis(2).dual()};

  std::vector<double> deviations(plan.size(), 0.0);
  parallel_for(plan.size(), [&](std::size_t n) {
    const std::vector<double>& zeta = plan.nodes()[n].zeta;
    // X-shift S(Z) = (r y + t z, r zeta, t zeta): the right side is read at
    // X + S, i.e. translated by -S per axis.
    const std::array<double, 3> shift = {pair.r * zeta[1] + pair.t * zeta[2],
                                         pair.r * zeta[0], pair.t * zeta[0]};

    std::array<long, 3> steps{};
    bool on_lattice = true;
    for (int ax = 0; ax < 3; ++ax) {
      const double spacing = dual_axis[static_cast<std::size_t>(ax)].spacing();
      steps[static_cast<std::size_t>(ax)] = std::lround(zeta[static_cast<std::size_t>(ax)] / spacing);
      const double snapped =
          static_cast<double>(steps[static_cast<std::size_t>(ax)]) * spacing;
      if (std::abs(zeta[static_cast<std::size_t>(ax)] - snapped) > 1e-9 * spacing) {
        on_lattice = false;
      }
    }

    SampledField lhs(spec_b.grid(), std::vector<Complex>(spec_b.size()),
                     spec_b.roles());
    SampledField rhs(spec_a.grid(), std::vector<Complex>(spec_a.size()),
                     spec_a.roles());
    if (on_lattice) {
      std::vector<int> wrap0(static_cast<std::size_t>(n0));
      std::vector<int> wrap1(static_cast<std::size_t>(n1));
      std::vector<int> wrap2(static_cast<std::size_t>(n2));
      std::vector<Complex> phase0(static_cast<std::size_t>(n0));
      std::vector<Complex> phase1(static_cast<std::size_t>(n1));
      std::vector<Complex> phase2(static_cast<std::size_t>(n2));
      const auto fill = [&](int ax, int count, std::vector<int>& wrap,
                            std::vector<Complex>& phase) {
        const long m = steps[static_cast<std::size_t>(ax)];
        const AxisSpec& dual = dual_axis[static_cast<std::size_t>(ax)];
        const double s = shift[static_cast<std::size_t>(ax)];
        for (int k = 0; k < count; ++k) {
          wrap[static_cast<std::size_t>(k)] =
              static_cast<int>(((k + m) % count + count) % count);
          // translate(., ax, -s) multiplies the spectrum by e^{+i s zeta}.
          phase[static_cast<std::size_t>(k)] =
              std::polar(1.0, s * dual.coordinate(k));
        }
      };
      fill(0, n0, wrap0, phase0);
      fill(1, n1, wrap1, phase1);
      fill(2, n2, wrap2, phase2);

      std::size_t flat = 0;
      for (int i0 = 0; i0 < n0; ++i0) {
        const std::size_t base0 =
            static_cast<std::size_t>(wrap0[static_cast<std::size_t>(i0)]) *
            static_cast<std::size_t>(n1);
        const Complex p0 = phase0[static_cast<std::size_t>(i0)];
        for (int i1 = 0; i1 < n1; ++i1) {
          const std::size_t base1 =
              (base0 + static_cast<std::size_t>(
                           wrap1[static_cast<std::size_t>(i1)])) *
              static_cast<std::size_t>(n2);
          const Complex p01 = p0 * phase1[static_cast<std::size_t>(i1)];
          for (int i2 = 0; i2 < n2; ++i2, ++flat) {
            const std::size_t src =
                base1 +
                static_cast<std::size_t>(wrap2[static_cast<std::size_t>(i2)]);
            lhs[flat] = spec_b[src] * win_psi[flat];
            rhs[flat] = spec_a[src] * win_a[flat] *
                        (p01 * phase2[static_cast<std::size_t>(i2)]);
          }
        }
      }
      const SampledField lhs_col = inverse_ft(lhs, all3);
      const SampledField rhs_col = inverse_ft(rhs, all3);
      double worst = 0.0;
      for (std::size_t i = 0; i < lhs_col.size(); ++i) {
        worst = std::max(
            worst, std::abs(std::abs(lhs_col[i]) - std::abs(rhs_col[i])));
      }
      deviations[n] = worst;
      return;
    }

    const SampledField lhs_col = stft_at_frequency(b, psi, zeta);
    SampledField rhs_col = stft_at_frequency(a, window, zeta);
    if (shift[0] != 0.0) rhs_col = translate(rhs_col, 0, -shift[0]);
    if (shift[1] != 0.0) rhs_col = translate(rhs_col, 1, -shift[1]);
    if (shift[2] != 0.0) rhs_col = translate(rhs_col, 2, -shift[2]);
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs_col.size(); ++i) {
      worst = std::max(worst,
                       std::abs(std::abs(lhs_col[i]) - std::abs(rhs_col[i])));
    }
    deviations[n] = worst;
  });
  return *std::max_element(deviations.begin(), deviations.end());
}

RatioReport boundedness_probe(const SampledField& a, QuantizationPair pair,
                              const GevreyClassSpec& spec,
                              const WeightModel& w0, const WeightModel& w,
                              MixedExponents pq, double R, int battery_size,
                              std::uint64_t seed) {
  pair.validate();
  spec.validate();
  pq.validate();
  if (a.grid().rank() != 3) {
    throw UsageError("boundedness_probe: symbol must have 3 axes");
  }
  if (battery_size < 1) {
    throw UsageError("boundedness_probe: battery_size must be positive");
  }
  if (!(R > 0.0)) {
    throw UsageError("boundedness_probe: R must be positive");
  }
  if (w0.arity() > 2 || w.arity() > 2) {
    throw UsageError("boundedness_probe: phase-space weights use 2 axes");
  }

  const GridSpec arg_grid({a.grid().axis(0)});
  // The probe battery is deliberately narrow-ranged: the weighted suprema in
  // the denominators are only grid-representable while the ambient growth
  // rate R stays below every draw's slowest phase-space decay rate, so the
  // widths and phase-space centers are kept close to the unit window's.
  GaussianBatteryParams probe_params;
  probe_params.width_lo = 0.85;
  probe_params.width_hi = 1.2;
  probe_params.center_fraction = 0.1;
  probe_params.modulation_fraction = 0.12;
  const auto battery =
      gaussian_pair_battery(arg_grid, battery_size, seed, probe_params);
  const SampledField window = unit_window(arg_grid);

  // Ambient exponents induced by the class: the x-decay matches the largest
  // argument-side exponent, the frequency-decay the symbol regularity.
  const double s1 = std::max(spec.s2, spec.s3);
  const double sigma3 = spec.sigma1;
  const WeightModel g_weight =
      product(WeightModel::exponential({0}, R, 1.0 / s1),
              WeightModel::exponential({1}, R, 1.0 / sigma3));
  const WeightModel f_weight = product(w0, w);
  const MixedExponents sup_norm{MixedExponents::kInf, MixedExponents::kInf};

  RatioReport report;
  report.battery_id =
      battery_id("gaussian-pairs", arg_grid, battery_size, seed, probe_params);
  report.ratios.resize(battery.size());
  parallel_for(battery.size(), [&](std::size_t i) {
    const auto& [f, g] = battery[i];
    const SampledField out = apply_bilinear(a, pair, f, g);
    const double num = modulation_norm(out, window, w, pq);
    const double den_f = modulation_norm(f, window, f_weight, pq);
    const double den_g = modulation_norm(g, window, g_weight, sup_norm);
    if (den_f < kNormFloor || den_g < kNormFloor) {
      throw NumericError("boundedness_probe: denominator norm underflow");
    }
    report.ratios[i] = num / (den_f * den_g);
  });
  report.max_ratio =
      *std::max_element(report.ratios.begin(), report.ratios.end());
  return report;
}

std::vector<DecayFitReport> gs_continuity_check(
    const SampledField& a, QuantizationPair pair, double s, double sigma,
    const std::vector<std::pair<SampledField, SampledField>>& battery) {
  pair.validate();
  if (!(s > 0.0) || !(sigma > 0.0)) {
    throw UsageError("gs_continuity_check: exponents must be positive");
  }
  if (battery.empty()) {
    throw UsageError("gs_continuity_check: battery must be nonempty");
  }
  if (a.grid().rank() != 3) {
    throw UsageError("gs_continuity_check: symbol must have 3 axes");
  }

  const GridSpec arg_grid({a.grid().axis(0)});
  const SampledField window = unit_window(arg_grid);
  const std::vector<double> powers = {1.0 / s, 1.0 / sigma};

  const auto gate = [&](const SampledField& h, std::size_t index,
                        const char* which) {
    const PhaseSpaceField v = stft(h, window);
    const double floor = v.base().max_abs() * 1e-12;
    const DecayFitReport fit = fit_gs_decay(v, powers, floor);
    if (!fit.pass) {
      throw UsageError("gs_continuity_check: battery member " +
                       std::to_string(index) + " (" + which +
                       ") fails the decay gate");
    }
  };

  std::vector<DecayFitReport> reports;
  reports.reserve(battery.size());
  for (std::size_t i = 0; i < battery.size(); ++i) {
    gate(battery[i].first, i, "f");
    gate(battery[i].second, i, "g");
  }
  for (const auto& [f, g] : battery) {
    const SampledField out = apply_bilinear(a, pair, f, g);
    const PhaseSpaceField v = stft(out, window);
    const double floor = v.base().max_abs() * 1e-12;
    reports.push_back(fit_gs_decay(v, powers, floor));
  }
  return reports;
}

}  // namespace bilq
