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

#include "bilq/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "bilq/parallel.hpp"

namespace bilq {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684759;

/// One cached pair of in-place c2c plans for a given length.  FFTW planning
/// is not thread-safe, so creation is serialized; execution through
/// fftw_execute_dft on distinct fftw_malloc'd buffers is thread-safe.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~PlanPair() {
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (backward != nullptr) fftw_destroy_plan(backward);
  }
};

const PlanPair& plans_for_length(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto pp = std::make_unique<PlanPair>();
    fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    pp->forward = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    pp->backward = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(buf);
    it = cache.emplace(n, std::move(pp)).first;
  }
  return *it->second;
}

/// Thread-local fftw-aligned scratch line, grown on demand.
fftw_complex* scratch_line(int n) {
  thread_local fftw_complex* buf = nullptr;
  thread_local int capacity = 0;
  if (capacity < n) {
    if (buf != nullptr) fftw_free(buf);
    buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    capacity = n;
  }
  return buf;
}

/// Applies the centered-grid transform along one axis, in place on `values`.
/// direction = −1 realizes the forward (analysis) transform with scale
/// (2π)^{−1/2}·Δ_in, +1 the inverse (synthesis) one; both include the
/// (−1)^j / (−1)^k twists and the global (−1)^{N/2} sign.
void transform_axis_inplace(std::vector<Complex>& values, const GridSpec& grid,
                            int axis, int direction) {
  const int n = grid.axis(axis).points;
  const std::size_t stride = grid.stride(axis);
  const std::size_t total = values.size();
  const std::size_t line_count = total / static_cast<std::size_t>(n);
  const double scale =
      kInvSqrt2Pi * grid.axis(axis).spacing() * ((n / 2) % 2 == 0 ? 1.0 : -1.0);
  const PlanPair& plans = plans_for_length(n);
  fftw_plan plan = direction < 0 ? plans.forward : plans.backward;

  // Lines along `axis` are enumerated by splitting the flat index into the
  // part with stride > axis-stride (outer) and the part below (inner).
  const std::size_t inner = stride;
  const std::size_t block = stride * static_cast<std::size_t>(n);

  auto do_line = [&](std::size_t line) {
    const std::size_t outer_idx = line / inner;
    const std::size_t inner_idx = line % inner;
    const std::size_t base = outer_idx * block + inner_idx;
    fftw_complex* buf = scratch_line(n);
    for (int j = 0; j < n; ++j) {
      const Complex v = values[base + static_cast<std::size_t>(j) * stride];
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      buf[j][0] = sign * v.real();
      buf[j][1] = sign * v.imag();
    }
    fftw_execute_dft(plan, buf, buf);
    for (int k = 0; k < n; ++k) {
      const double sign = ((k % 2 == 0) ? 1.0 : -1.0) * scale;
      values[base + static_cast<std::size_t>(k) * stride] =
          Complex(sign * buf[k][0], sign * buf[k][1]);
    }
  };

  if (line_count >= 64 && total >= 32768 && max_workers() > 1) {
    parallel_for(line_count, do_line);
  } else {
    for (std::size_t line = 0; line < line_count; ++line) do_line(line);
  }
}

SampledField transform(const SampledField& f, const AxisSelection& sel,
                       int direction) {
  sel.validate(f.grid());
  std::vector<AxisSpec> axes = f.grid().axes();
  std::vector<AxisRole> roles = f.roles();
  std::vector<Complex> values = f.values();
  // The twist/scale recipe needs the per-axis geometry; the forward pass uses
  // the input axis spacing, the inverse pass the (dual) input axis spacing,
  // so in both cases the spacing of the axis as it enters the transform.
  for (int a : sel.indices) {
    transform_axis_inplace(values, GridSpec(axes), a, direction);
    auto ua = static_cast<std::size_t>(a);
    axes[ua] = axes[ua].dual();
    roles[ua] = roles[ua] == AxisRole::kSpace ? AxisRole::kFrequency
                                              : AxisRole::kSpace;
  }
  return SampledField(GridSpec(std::move(axes)), std::move(values),
                      std::move(roles));
}

}  // namespace

SampledField forward_ft(const SampledField& f, const AxisSelection& sel) {
  return transform(f, sel, -1);
}

SampledField inverse_ft(const SampledField& F, const AxisSelection& sel) {
  return transform(F, sel, +1);
}

SampledField apply_axis_multiplier(const SampledField& f, int axis,
                                   const std::function<Complex(double)>& m) {
  if (axis < 0 || axis >= f.grid().rank()) {
    throw UsageError("apply_axis_multiplier: axis out of range");
  }
  const AxisSpec& ax = f.grid().axis(axis);
  std::vector<Complex> factors(static_cast<std::size_t>(ax.points));
  for (int j = 0; j < ax.points; ++j) {
    factors[static_cast<std::size_t>(j)] = m(ax.coordinate(j));
  }
  SampledField out = f;
  const std::size_t stride = out.grid().stride(axis);
  const std::size_t n = static_cast<std::size_t>(ax.points);
  const std::size_t total = out.size();
  const std::size_t block = stride * n;
  for (std::size_t base = 0; base < total; base += block) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex* row = out.values().data() + base + j * stride;
      const Complex c = factors[j];
      for (std::size_t i = 0; i < stride; ++i) row[i] *= c;
    }
  }
  return out;
}

SampledField modulate(const SampledField& f, int axis, double nu) {
  return apply_axis_multiplier(f, axis, [nu](double x) {
    return std::polar(1.0, nu * x);
  });
}

SampledField spectral_derivative(const SampledField& f, int axis, int order,
                                 int max_order) {
  if (order < 0 || order > max_order) {
    throw UsageError("spectral_derivative: order " + std::to_string(order) +
                     " outside [0, " + std::to_string(max_order) + "]");
  }
  if (order == 0) return f;
  SampledField F = forward_ft(f, AxisSelection{axis});
  F = apply_axis_multiplier(F, axis, [order](double xi) {
    return std::pow(Complex(0.0, xi), order);
  });
  return inverse_ft(F, AxisSelection{axis});
}

SampledField shear(const SampledField& F, int target_axis,
                   const std::vector<std::pair<int, double>>& sources,
                   std::string* warning) {
  const GridSpec& grid = F.grid();
  if (target_axis < 0 || target_axis >= grid.rank()) {
    throw UsageError("shear: target axis out of range");
  }
  double reach = 0.0;
  for (const auto& [axis, coeff] : sources) {
    if (axis < 0 || axis >= grid.rank()) {
      throw UsageError("shear: source axis out of range");
    }
    if (axis == target_axis) {
      throw UsageError("shear: target axis cannot be a source");
    }
    reach += std::abs(coeff) * grid.axis(axis).half_width;
  }
  if (warning != nullptr) {
    warning->clear();
    if (reach > grid.axis(target_axis).half_width) {
      *warning = "shear: source reach " + std::to_string(reach) +
                 " exceeds target half-width " +
                 std::to_string(grid.axis(target_axis).half_width) +
                 "; content may wrap around the periodization boundary";
    }
  }

  SampledField G = forward_ft(F, AxisSelection{target_axis});
  // Multiply by e^{−i ξ_t · Σ c_j x_j}: the phase couples the target axis's
  // dual coordinate with the source axes' coordinates, so walk the full array.
  const GridSpec& tg = G.grid();
  const int rank = tg.rank();
  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  const std::size_t total = G.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    double shift = 0.0;
    for (const auto& [axis, coeff] : sources) {
      shift +=
          coeff * tg.axis(axis).coordinate(idx[static_cast<std::size_t>(axis)]);
    }
    const double xi =
        tg.axis(target_axis).coordinate(idx[static_cast<std::size_t>(target_axis)]);
    G[flat] *= std::polar(1.0, -xi * shift);
    for (int a = rank - 1; a >= 0; --a) {
      auto ua = static_cast<std::size_t>(a);
      if (++idx[ua] < tg.axis(a).points) break;
      idx[ua] = 0;
    }
  }
  return inverse_ft(G, AxisSelection{target_axis});
}

SampledField translate(const SampledField& f, int axis, double shift) {
  SampledField F = forward_ft(f, AxisSelection{axis});
  F = apply_axis_multiplier(F, axis, [shift](double xi) {
    return std::polar(1.0, -shift * xi);
  });
  return inverse_ft(F, AxisSelection{axis});
}

}  // namespace bilq
