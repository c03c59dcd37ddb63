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
 * @file field.hpp
 * @brief Complex samples of a function over a GridSpec (rank 1–6).
 *
 * Values are stored row-major (last axis contiguous).  Functions on R^d,
 * symbols on R^{3d} and phase-space transforms are all SampledFields; the
 * per-axis role tags are documentation carried through serialization.
 */

#ifndef BILQ_FIELD_HPP_
#define BILQ_FIELD_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bilq/errors.hpp"
#include "bilq/grid.hpp"

namespace bilq {

using Complex = std::complex<double>;

class SampledField {
 public:
  SampledField() = default;

  /// Zero-initialized field with all axes tagged `role`.
  explicit SampledField(GridSpec grid, AxisRole role = AxisRole::kSpace)
      : grid_(std::move(grid)),
        values_(grid_.size(), Complex(0.0, 0.0)),
        roles_(static_cast<std::size_t>(grid_.rank()), role) {}

  SampledField(GridSpec grid, std::vector<Complex> values,
               std::vector<AxisRole> roles)
      : grid_(std::move(grid)),
        values_(std::move(values)),
        roles_(std::move(roles)) {
    if (values_.size() != grid_.size()) {
      throw UsageError("SampledField: value count " +
                       std::to_string(values_.size()) +
                       " does not match grid size " +
                       std::to_string(grid_.size()));
    }
    if (roles_.size() != static_cast<std::size_t>(grid_.rank())) {
      throw UsageError("SampledField: role count does not match grid rank");
    }
  }

  /// Samples fn over the grid.  fn receives the coordinate vector.
  static SampledField sample(const GridSpec& grid,
                             const std::function<Complex(const std::vector<double>&)>& fn,
                             AxisRole role = AxisRole::kSpace) {
    SampledField f(grid, role);
    const int rank = grid.rank();
    std::vector<int> idx(static_cast<std::size_t>(rank), 0);
    std::vector<double> x(static_cast<std::size_t>(rank), 0.0);
    const std::size_t n = grid.size();
    for (std::size_t flat = 0; flat < n; ++flat) {
      for (int a = 0; a < rank; ++a) {
        x[static_cast<std::size_t>(a)] =
            grid.axis(a).coordinate(idx[static_cast<std::size_t>(a)]);
      }
      f.values_[flat] = fn(x);
      for (int a = rank - 1; a >= 0; --a) {
        auto ua = static_cast<std::size_t>(a);
        if (++idx[ua] < grid.axis(a).points) break;
        idx[ua] = 0;
      }
    }
    return f;
  }

  const GridSpec& grid() const { return grid_; }
  const std::vector<Complex>& values() const { return values_; }
  std::vector<Complex>& values() { return values_; }
  const std::vector<AxisRole>& roles() const { return roles_; }
  std::vector<AxisRole>& roles() { return roles_; }
  std::size_t size() const { return values_.size(); }

  Complex& operator[](std::size_t flat) { return values_[flat]; }
  const Complex& operator[](std::size_t flat) const { return values_[flat]; }

  /// Flat offset of a multi-index (no bounds check beyond debug).
  std::size_t flat_index(const std::vector<int>& idx) const {
    std::size_t off = 0;
    for (int a = 0; a < grid_.rank(); ++a) {
      off += static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]) *
             grid_.stride(a);
    }
    return off;
  }

  Complex at(const std::vector<int>& idx) const {
    return values_[flat_index(idx)];
  }

  void require_same_grid(const SampledField& other, const char* what) const {
    if (!(grid_ == other.grid_)) {
      throw UsageError(std::string(what) + ": grid mismatch");
    }
  }

  bool all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](Complex v) {
      return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
  }

  /// Discrete L² norm: sqrt(cellvol · Σ|f|²).
  double l2_norm() const {
    double s = 0.0;
    for (const Complex& v : values_) s += std::norm(v);
    return std::sqrt(s * grid_.cell_volume());
  }

  /// Max modulus over the grid.
  double max_abs() const {
    double m = 0.0;
    for (const Complex& v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Discrete L² inner product ⟨f, g⟩ = cellvol · Σ f · conj(g).
  Complex inner(const SampledField& g) const {
    require_same_grid(g, "inner");
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < values_.size(); ++i) {
      s += values_[i] * std::conj(g.values_[i]);
    }
    return s * grid_.cell_volume();
  }

  SampledField& scale(Complex c) {
    for (Complex& v : values_) v *= c;
    return *this;
  }

  SampledField& add_scaled(const SampledField& g, Complex c) {
    require_same_grid(g, "add_scaled");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      values_[i] += c * g.values_[i];
    }
    return *this;
  }

  /// Pointwise product with another field on the same grid.
  SampledField& multiply(const SampledField& g) {
    require_same_grid(g, "multiply");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= g.values_[i];
    return *this;
  }

 private:
  GridSpec grid_;
  std::vector<Complex> values_;
  std::vector<AxisRole> roles_;
};

/// Relative ℓ² discrepancy ‖a − b‖ / max(‖a‖, ‖b‖, floor).
double relative_l2_error(const SampledField& a, const SampledField& b);

/// Max-modulus discrepancy ‖a − b‖_∞.
double max_abs_error(const SampledField& a, const SampledField& b);

inline double relative_l2_error(const SampledField& a, const SampledField& b) {
  a.require_same_grid(b, "relative_l2_error");
  double num = 0.0, den_a = 0.0, den_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den_a += std::norm(a[i]);
    den_b += std::norm(b[i]);
  }
  const double den = std::sqrt(std::max(den_a, den_b));
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num) / den;
}

inline double max_abs_error(const SampledField& a, const SampledField& b) {
  a.require_same_grid(b, "max_abs_error");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace bilq

#endif  // BILQ_FIELD_HPP_
