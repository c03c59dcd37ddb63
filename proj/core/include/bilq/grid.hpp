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
 * @file grid.hpp
 * @brief Centered periodized sampling lattices and their dual lattices.
 *
 * An axis covers [−L, L) with N (even) uniform samples x_j = −L + jΔx,
 * Δx = 2L/N.  Its dual frequency lattice is ξ_k = kπ/L for
 * k ∈ {−N/2, …, N/2−1}, so Δξ = π/L and Δx·Δξ·N = 2π exactly.  The dual
 * axis is itself a centered axis with half-width Nπ/(2L) and the same N;
 * taking the dual twice returns the original axis.  All fields in this
 * library live on such grids, and the symmetric-normalization continuous
 * Fourier transform becomes an exact phase-decorated FFT on them.
 */

#ifndef BILQ_GRID_HPP_
#define BILQ_GRID_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "bilq/errors.hpp"

namespace bilq {

/// Role tag for an axis; documentation only, carried through I/O.
enum class AxisRole : std::uint8_t { kSpace = 0, kFrequency = 1 };

/// One uniformly sampled centered axis: domain [−L, L), N even samples.
struct AxisSpec {
  double half_width = 0.0;  ///< L > 0; samples cover [−L, L).
  int points = 0;           ///< N, positive and even.

  AxisSpec() = default;
  AxisSpec(double L, int N) : half_width(L), points(N) { validate(); }

  void validate() const {
    if (!(half_width > 0.0)) {
      throw UsageError("AxisSpec: half_width must be positive, got " +
                       std::to_string(half_width));
    }
    if (points <= 0 || points % 2 != 0) {
      throw UsageError("AxisSpec: points must be positive and even, got " +
                       std::to_string(points));
    }
  }

  /// Sample spacing Δx = 2L/N.
  double spacing() const { return 2.0 * half_width / points; }

  /// Dual lattice spacing Δξ = π/L.
  double dual_spacing() const { return std::numbers::pi / half_width; }

  /// j-th sample coordinate, x_j = −L + jΔx for j ∈ [0, N).
  double coordinate(int j) const { return -half_width + j * spacing(); }

  /// j-th dual lattice coordinate, ξ_j = (j − N/2)·π/L for j ∈ [0, N).
  double dual_coordinate(int j) const {
    return (j - points / 2) * dual_spacing();
  }

  /// The dual axis: half-width Nπ/(2L), same N.  Involutive.
  AxisSpec dual() const {
    return AxisSpec(points * std::numbers::pi / (2.0 * half_width), points);
  }

  friend bool operator==(const AxisSpec& a, const AxisSpec& b) {
    return a.points == b.points &&
           std::abs(a.half_width - b.half_width) <=
               1e-12 * std::abs(a.half_width);
  }
};

/// A tensor-product lattice of 1–6 centered axes.
class GridSpec {
 public:
  GridSpec() = default;
  explicit GridSpec(std::vector<AxisSpec> axes) : axes_(std::move(axes)) {
    if (axes_.empty() || axes_.size() > 6) {
      throw UsageError("GridSpec: rank must be between 1 and 6, got " +
                       std::to_string(axes_.size()));
    }
    for (const AxisSpec& ax : axes_) ax.validate();
  }

  /// Convenience: rank-`rank` grid with identical axes (L, N).
  static GridSpec uniform(int rank, double half_width, int points) {
    return GridSpec(std::vector<AxisSpec>(
        static_cast<std::size_t>(rank), AxisSpec(half_width, points)));
  }

  int rank() const { return static_cast<int>(axes_.size()); }
  const AxisSpec& axis(int i) const { return axes_.at(static_cast<std::size_t>(i)); }
  const std::vector<AxisSpec>& axes() const { return axes_; }

  /// Total number of samples, ∏ N_i.
  std::size_t size() const {
    std::size_t n = 1;
    for (const AxisSpec& ax : axes_) n *= static_cast<std::size_t>(ax.points);
    return n;
  }

  /// Row-major stride of axis i (last axis is contiguous).
  std::size_t stride(int i) const {
    std::size_t s = 1;
    for (int a = rank() - 1; a > i; --a) {
      s *= static_cast<std::size_t>(axes_[static_cast<std::size_t>(a)].points);
    }
    return s;
  }

  /// Product of sample spacings: the lattice cell volume.
  double cell_volume() const {
    double v = 1.0;
    for (const AxisSpec& ax : axes_) v *= ax.spacing();
    return v;
  }

  /// Grid with axis `i` replaced by its dual (role flipping is the
  /// field's business; the grid is pure geometry).
  GridSpec with_dual_axis(int i) const {
    std::vector<AxisSpec> ax = axes_;
    ax.at(static_cast<std::size_t>(i)) = ax[static_cast<std::size_t>(i)].dual();
    return GridSpec(std::move(ax));
  }

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    if (a.axes_.size() != b.axes_.size()) return false;
    for (std::size_t i = 0; i < a.axes_.size(); ++i) {
      if (!(a.axes_[i] == b.axes_[i])) return false;
    }
    return true;
  }

 private:
  std::vector<AxisSpec> axes_;
};

/// A nonempty strictly increasing subset of axis positions.
struct AxisSelection {
  std::vector<int> indices;

  AxisSelection() = default;
  AxisSelection(std::initializer_list<int> init) : indices(init) {}
  explicit AxisSelection(std::vector<int> idx) : indices(std::move(idx)) {}

  /// All axes of a rank-`rank` grid.
  static AxisSelection all(int rank) {
    AxisSelection sel;
    sel.indices.resize(static_cast<std::size_t>(rank));
    for (int i = 0; i < rank; ++i) sel.indices[static_cast<std::size_t>(i)] = i;
    return sel;
  }

  void validate(const GridSpec& grid) const {
    if (indices.empty()) {
      throw UsageError("AxisSelection: selection must be nonempty");
    }
    int prev = -1;
    for (int i : indices) {
      if (i <= prev) {
        throw UsageError("AxisSelection: indices must be strictly increasing");
      }
      if (i < 0 || i >= grid.rank()) {
        throw UsageError("AxisSelection: axis " + std::to_string(i) +
                         " out of range for rank " +
                         std::to_string(grid.rank()));
      }
      prev = i;
    }
  }
};

}  // namespace bilq

#endif  // BILQ_GRID_HPP_
