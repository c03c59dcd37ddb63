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
/// @brief Frequency-side sampling plans.  A full tensor grid over the joint
/// (position, frequency) domain of a windowed transform is infeasible for
/// three-axis symbols, so decay diagnostics evaluate the transform at a
/// structured list of frequency nodes: radial ladders along coordinate and
/// diagonal rays (for rate fits) plus a deterministic low-discrepancy batch of
/// scattered nodes (for sup coverage).  Each node is paired with the full
/// position grid by the evaluation routines.

#ifndef BILQ_PLAN_HPP_
#define BILQ_PLAN_HPP_

#include <cstdint>
#include <vector>

#include "bilq/grid.hpp"

namespace bilq {

/// One frequency node of a sampling plan.
///
/// `zeta` holds the frequency coordinates (one per grid axis).  `radius` is
/// the Euclidean norm of `zeta`.  `quad_weight` is a nonnegative quadrature
/// surrogate used by sum-type norms over the plan: ray nodes carry a
/// shell-volume weight (solid angle share times radius^(rank-1) times radial
/// step), scattered nodes carry zero weight and contribute to sup-type
/// quantities only.  `on_ray` marks ladder nodes; for nodes on a single
/// coordinate axis, `axis` identifies it, otherwise `axis` is -1.
struct PlanNode {
  std::vector<double> zeta;
  double radius = 0.0;
  double quad_weight = 0.0;
  bool on_ray = false;
  int axis = -1;
};

/// An immutable list of frequency nodes attached to the grid whose dual box
/// they sample.  All node coordinates lie strictly inside the dual box of
/// `base`.
class SamplingPlan {
 public:
  SamplingPlan(GridSpec base, std::vector<PlanNode> nodes);

  const GridSpec& base() const { return base_; }
  const std::vector<PlanNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

 private:
  GridSpec base_;
  std::vector<PlanNode> nodes_;
};

/// Builds the standard decay-diagnostic plan for fields sampled on `grid`:
///
///   - the zero node (weight 1, not on a ray);
///   - radial ladders along the 2*rank coordinate directions and the 2^rank
///     normalized diagonal directions, with geometric radii (factor ~1.9,
///     about 3 nodes per decade) from 1 up to 95% of the dual box in that
///     direction, each node carrying its shell-volume quadrature weight;
///   - `scattered_count` Halton-sequence nodes filling 90% of the dual box,
///     with zero quadrature weight.
///
/// The plan is deterministic; `seed` offsets the Halton start index so that
/// independent batches can be drawn.  Throws UsageError when `grid` has rank
/// 0 or rank above 6, or when `scattered_count` is negative.
SamplingPlan make_class_plan(const GridSpec& grid, int scattered_count = 200,
                             std::uint64_t seed = 0);

/// Builds a small scattered-only plan whose nodes stay within `fraction` of
/// the dual box (useful for identities that translate fields by amounts
/// proportional to the node coordinates).  Deterministic given `seed`.
SamplingPlan make_scatter_plan(const GridSpec& grid, int node_count,
                               double fraction = 0.5, std::uint64_t seed = 0);

/// Same as make_scatter_plan, but every node coordinate is snapped to the
/// exact dual lattice of its axis.  On-lattice frequencies are where the
/// periodized model represents continuum frequency-shift identities without
/// spectral leakage, so exact-identity checks should prefer this plan.
SamplingPlan make_lattice_scatter_plan(const GridSpec& grid, int node_count,
                                       double fraction = 0.5,
                                       std::uint64_t seed = 0);

}  // namespace bilq

#endif  // BILQ_PLAN_HPP_
