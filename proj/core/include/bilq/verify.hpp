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
/// @brief The verification suites.  Each suite certifies one family of
/// numerical identities at a fixed desk scale with pinned tolerances; the
/// set of suites constitutes the project's acceptance gate.  Suites are
/// deterministic given their seed and return per-case metrics; they never
/// assert constants beyond the documented tolerances.

#ifndef BILQ_VERIFY_HPP_
#define BILQ_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "bilq/reports.hpp"

namespace bilq {

/// Global knobs for a suite run.  `workers` = 0 uses the hardware
/// concurrency; seeds feed the synthetic batteries.
struct VerifyOptions {
  int workers = 0;
  std::uint64_t seed = 0x5eedULL;
};

/// The available suite names, in canonical order:
/// fourier, stft, weights, classes, invariance, covariance, boundedness,
/// gs-continuity, oracle-quadrature.
const std::vector<std::string>& suite_names();

/// Runs one suite by name.  Throws UsageError for unknown names.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);

}  // namespace bilq

#endif  // BILQ_VERIFY_HPP_
