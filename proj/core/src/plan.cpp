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

#include "bilq/plan.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "bilq/errors.hpp"

namespace bilq {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRadialStep = 1.9;       // ~3 ladder nodes per decade
constexpr double kRayBoxFraction = 0.95;  // ladder stays inside the dual box
constexpr double kScatterBoxFraction = 0.9;

// Van der Corput radical inverse in the given base.
double radical_inverse(std::uint64_t index, unsigned base) {
  double inv_base = 1.0 / static_cast<double>(base);
  double scale = inv_base;
  double value = 0.0;
  while (index > 0) {
    value += static_cast<double>(index % base) * scale;
    index /= base;
    scale *= inv_base;
  }
  return value;
}

constexpr unsigned kHaltonBases[6] = {2, 3, 5, 7, 11, 13};

// Unit solid-angle share per direction family: the ladder directions split
// the sphere evenly for weighting purposes.
std::vector<std::vector<double>> ladder_directions(int rank) {
  std::vector<std::vector<double>> dirs;
  for (int a = 0; a < rank; ++a) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> d(static_cast<std::size_t>(rank), 0.0);
      d[static_cast<std::size_t>(a)] = sign;
      dirs.push_back(std::move(d));
    }
  }
  const double inv_norm = 1.0 / std::sqrt(static_cast<double>(rank));
  const int corners = 1 << rank;
  for (int mask = 0; mask < corners; ++mask) {
    std::vector<double> d(static_cast<std::size_t>(rank));
    for (int a = 0; a < rank; ++a) {
      d[static_cast<std::size_t>(a)] = ((mask >> a) & 1) ? inv_norm : -inv_norm;
    }
    dirs.push_back(std::move(d));
  }
  return dirs;
}

}  // namespace

SamplingPlan::SamplingPlan(GridSpec base, std::vector<PlanNode> nodes)
    : base_(std::move(base)), nodes_(std::move(nodes)) {
  const int rank = base_.rank();
  for (const PlanNode& node : nodes_) {
    if (static_cast<int>(node.zeta.size()) != rank) {
      throw UsageError("SamplingPlan: node dimension must match grid rank");
    }
  }
}

SamplingPlan make_class_plan(const GridSpec& grid, int scattered_count,
                             std::uint64_t seed) {
  const int rank = grid.rank();
  if (rank < 1 || rank > 6) {
    throw UsageError("make_class_plan: rank must be between 1 and 6");
  }
  if (scattered_count < 0) {
    throw UsageError("make_class_plan: scattered_count must be nonnegative");
  }

  std::vector<PlanNode> nodes;

  // Center node: anchors the prefactor and the q-sums.
  {
    PlanNode zero;
    zero.zeta.assign(static_cast<std::size_t>(rank), 0.0);
    zero.radius = 0.0;
    zero.quad_weight = 1.0;
    zero.on_ray = false;
    nodes.push_back(std::move(zero));
  }

  // Radial ladders.  Each direction runs geometric radii from 1 to the
  // fraction of the dual box it can reach; node weights approximate the
  // shell volume share: (total solid angle / directions) * r^(rank-1) * dr.
  const auto dirs = ladder_directions(rank);
  const double sphere_area = (rank == 1)   ? 2.0
                             : (rank == 2) ? 2.0 * kPi
                                           : 4.0 * kPi;  // rank 3+ uses 3-d
  const double angle_share = sphere_area / static_cast<double>(dirs.size());
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    const std::vector<double>& dir = dirs[di];
    double reach = std::numeric_limits<double>::infinity();
    int single_axis = -1;
    int nonzero = 0;
    for (int a = 0; a < rank; ++a) {
      const double c = std::abs(dir[static_cast<std::size_t>(a)]);
      if (c > 0.0) {
        ++nonzero;
        single_axis = a;
        const double half = grid.axis(a).dual().half_width;
        reach = std::min(reach, kRayBoxFraction * half / c);
      }
    }
    if (nonzero != 1) single_axis = -1;

    std::vector<double> radii;
    for (double r = 1.0; r <= reach; r *= kRadialStep) radii.push_back(r);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double r = radii[i];
      const double lo = (i == 0) ? r / std::sqrt(kRadialStep)
                                 : 0.5 * (radii[i - 1] + r);
      const double hi = (i + 1 < radii.size()) ? 0.5 * (r + radii[i + 1])
                                               : r * std::sqrt(kRadialStep);
      PlanNode node;
      node.zeta.resize(static_cast<std::size_t>(rank));
      for (int a = 0; a < rank; ++a) {
        node.zeta[static_cast<std::size_t>(a)] =
            r * dir[static_cast<std::size_t>(a)];
      }
      node.radius = r;
      node.quad_weight = angle_share *
                         std::pow(r, static_cast<double>(rank - 1)) *
                         (hi - lo);
      node.on_ray = true;
      node.axis = single_axis;
      nodes.push_back(std::move(node));
    }
  }

  // Scattered Halton nodes: sup coverage of the bulk of the dual box.
  for (int s = 0; s < scattered_count; ++s) {
    const std::uint64_t index = seed + 1 + static_cast<std::uint64_t>(s);
    PlanNode node;
    node.zeta.resize(static_cast<std::size_t>(rank));
    double r2 = 0.0;
    for (int a = 0; a < rank; ++a) {
      const double u =
          radical_inverse(index, kHaltonBases[static_cast<std::size_t>(a)]);
      const double half = grid.axis(a).dual().half_width;
      const double c = (2.0 * u - 1.0) * kScatterBoxFraction * half;
      node.zeta[static_cast<std::size_t>(a)] = c;
      r2 += c * c;
    }
    node.radius = std::sqrt(r2);
    node.quad_weight = 0.0;
    node.on_ray = false;
    nodes.push_back(std::move(node));
  }

  return SamplingPlan(grid, std::move(nodes));
}

namespace {

SamplingPlan scatter_plan(const GridSpec& grid, int node_count,
                          double fraction, std::uint64_t seed,
                          bool snap_to_lattice, const char* what) {
  const int rank = grid.rank();
  if (rank < 1 || rank > 6) {
    throw UsageError(std::string(what) + ": rank must be between 1 and 6");
  }
  if (node_count < 1) {
    throw UsageError(std::string(what) + ": node_count must be positive");
  }
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw UsageError(std::string(what) + ": fraction must be in (0, 1]");
  }
  std::vector<PlanNode> nodes;
  for (int s = 0; s < node_count; ++s) {
    const std::uint64_t index = seed + 1 + static_cast<std::uint64_t>(s);
    PlanNode node;
    node.zeta.resize(static_cast<std::size_t>(rank));
    double r2 = 0.0;
    for (int a = 0; a < rank; ++a) {
      const double u =
          radical_inverse(index, kHaltonBases[static_cast<std::size_t>(a)]);
      const double half = grid.axis(a).dual().half_width;
      double c = (2.0 * u - 1.0) * fraction * half;
      if (snap_to_lattice) {
        const double step = grid.axis(a).dual_spacing();
        c = std::round(c / step) * step;
      }
      node.zeta[static_cast<std::size_t>(a)] = c;
      r2 += c * c;
    }
    node.radius = std::sqrt(r2);
    node.quad_weight = 0.0;
    node.on_ray = false;
    nodes.push_back(std::move(node));
  }
  return SamplingPlan(grid, std::move(nodes));
}

}  // namespace

SamplingPlan make_scatter_plan(const GridSpec& grid, int node_count,
                               double fraction, std::uint64_t seed) {
  return scatter_plan(grid, node_count, fraction, seed, false,
                      "make_scatter_plan");
}

SamplingPlan make_lattice_scatter_plan(const GridSpec& grid, int node_count,
                                       double fraction, std::uint64_t seed) {
  return scatter_plan(grid, node_count, fraction, seed, true,
                      "make_lattice_scatter_plan");
}

}  // namespace bilq
