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

#include <doctest.h>

#include <cmath>

#include "bilq/errors.hpp"
#include "bilq/grid.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("axis coordinates cover [-L, L) uniformly") {
  const bilq::AxisSpec ax(6.0, 48);
  CHECK(ax.spacing() == doctest::Approx(12.0 / 48).epsilon(1e-15));
  CHECK(ax.coordinate(0) == doctest::Approx(-6.0));
  CHECK(ax.coordinate(24) == doctest::Approx(0.0));
  // The right endpoint +L is excluded: the last sample sits one step below.
  CHECK(ax.coordinate(47) == doctest::Approx(6.0 - ax.spacing()));
}

TEST_CASE("dual axis swaps box and resolution and is involutive") {
  const bilq::AxisSpec ax(6.0, 48);
  const bilq::AxisSpec dual = ax.dual();
  CHECK(dual.points == ax.points);
  CHECK(dual.half_width == doctest::Approx(48 * kPi / 12.0).epsilon(1e-15));
  // Reciprocity: dx * dxi = 2 pi / N.
  CHECK(ax.spacing() * dual.spacing() ==
        doctest::Approx(2.0 * kPi / 48).epsilon(1e-15));
  const bilq::AxisSpec twice = dual.dual();
  CHECK(twice.half_width == doctest::Approx(ax.half_width).epsilon(1e-15));
  CHECK(twice.points == ax.points);
}

TEST_CASE("axis validation rejects odd or non-positive sizes") {
  CHECK_THROWS_AS(bilq::AxisSpec(6.0, 47).validate(), bilq::UsageError);
  CHECK_THROWS_AS(bilq::AxisSpec(6.0, 0).validate(), bilq::UsageError);
  CHECK_THROWS_AS(bilq::AxisSpec(-1.0, 48).validate(), bilq::UsageError);
  CHECK_NOTHROW(bilq::AxisSpec(6.0, 48).validate());
}

TEST_CASE("grid strides are row-major with the last axis contiguous") {
  const bilq::GridSpec grid({bilq::AxisSpec(1.0, 4), bilq::AxisSpec(1.0, 6),
                             bilq::AxisSpec(1.0, 8)});
  CHECK(grid.size() == 4u * 6u * 8u);
  CHECK(grid.stride(2) == 1u);
  CHECK(grid.stride(1) == 8u);
  CHECK(grid.stride(0) == 48u);
  CHECK(grid.cell_volume() ==
        doctest::Approx(grid.axis(0).spacing() * grid.axis(1).spacing() *
                        grid.axis(2).spacing()));
}

TEST_CASE("with_dual_axis replaces exactly one axis") {
  const bilq::GridSpec grid = bilq::GridSpec::uniform(2, 5.0, 32);
  const bilq::GridSpec mixed = grid.with_dual_axis(1);
  CHECK(mixed.axis(0) == grid.axis(0));
  CHECK(mixed.axis(1) == grid.axis(1).dual());
  CHECK(mixed.with_dual_axis(1) == grid);
}

TEST_CASE("axis selection validates bounds and ordering") {
  const bilq::GridSpec grid = bilq::GridSpec::uniform(3, 5.0, 16);
  CHECK_NOTHROW(bilq::AxisSelection({0, 2}).validate(grid));
  CHECK_THROWS_AS(bilq::AxisSelection({2, 0}).validate(grid),
                  bilq::UsageError);
  CHECK_THROWS_AS(bilq::AxisSelection({0, 0}).validate(grid),
                  bilq::UsageError);
  CHECK_THROWS_AS(bilq::AxisSelection({3}).validate(grid), bilq::UsageError);
  CHECK_THROWS_AS(bilq::AxisSelection{}.validate(grid), bilq::UsageError);
  CHECK(bilq::AxisSelection::all(3).indices.size() == 3u);
}
