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
#include <complex>
#include <vector>

#include "bilq/errors.hpp"
#include "bilq/field.hpp"
#include "bilq/timefreq.hpp"

using bilq::Complex;
using bilq::SampledField;

TEST_CASE("sample visits coordinates in row-major order") {
  const bilq::GridSpec grid({bilq::AxisSpec(2.0, 4), bilq::AxisSpec(3.0, 6)});
  const SampledField f = SampledField::sample(
      grid, [](const std::vector<double>& x) {
        return Complex(x[0], x[1]);
      });
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 6; ++j) {
      const Complex v = f.at({i, j});
      CHECK(v.real() == doctest::Approx(grid.axis(0).coordinate(i)));
      CHECK(v.imag() == doctest::Approx(grid.axis(1).coordinate(j)));
    }
  }
}

TEST_CASE("l2 norm matches the closed-form Gaussian integral") {
  // |f|_2^2 for exp(-x^2 / (2 sigma^2)) is sigma sqrt(pi); at sigma = 1 and
  // a box that contains the mass, the lattice Riemann sum is exact to
  // machine precision.
  const bilq::GridSpec grid({bilq::AxisSpec(10.0, 256)});
  const SampledField f = SampledField::sample(
      grid, [](const std::vector<double>& x) {
        return Complex(std::exp(-x[0] * x[0] / 2.0), 0.0);
      });
  CHECK(f.l2_norm() ==
        doctest::Approx(std::sqrt(std::sqrt(3.14159265358979323846)))
            .epsilon(1e-13));
}

TEST_CASE("relative error helpers compare against the larger norm") {
  const bilq::GridSpec grid({bilq::AxisSpec(1.0, 8)});
  SampledField a(grid);
  SampledField b(grid);
  a[0] = Complex(2.0, 0.0);
  b[0] = Complex(1.0, 0.0);
  // |a - b| = 1, max(|a|, |b|) = |a| -> ratio 1/2.
  CHECK(bilq::relative_l2_error(a, b) == doctest::Approx(0.5));
  CHECK(bilq::max_abs_error(a, b) == doctest::Approx(1.0));
}

TEST_CASE("inner product is conjugate-linear in its second slot") {
  const bilq::GridSpec grid({bilq::AxisSpec(1.0, 4)});
  SampledField a(grid);
  SampledField b(grid);
  a[1] = Complex(0.0, 2.0);
  b[1] = Complex(3.0, 0.0);
  const Complex ip = a.inner(b);
  CHECK(ip.real() == doctest::Approx(0.0));
  CHECK(ip.imag() == doctest::Approx(2.0 * 3.0 * grid.cell_volume()));
}

TEST_CASE("grid mismatch is a usage error") {
  SampledField a(bilq::GridSpec({bilq::AxisSpec(1.0, 4)}));
  SampledField b(bilq::GridSpec({bilq::AxisSpec(1.0, 8)}));
  CHECK_THROWS_AS(bilq::relative_l2_error(a, b), bilq::UsageError);
  CHECK_THROWS_AS(a.inner(b), bilq::UsageError);
}

TEST_CASE("content hash distinguishes values and geometry") {
  const bilq::GridSpec grid({bilq::AxisSpec(1.0, 8)});
  SampledField a(grid);
  SampledField b(grid);
  CHECK(bilq::field_content_hash(a) == bilq::field_content_hash(b));
  b[3] = Complex(1e-300, 0.0);
  CHECK(bilq::field_content_hash(a) != bilq::field_content_hash(b));
  const SampledField c(bilq::GridSpec({bilq::AxisSpec(2.0, 8)}));
  CHECK(bilq::field_content_hash(a) != bilq::field_content_hash(c));
}
