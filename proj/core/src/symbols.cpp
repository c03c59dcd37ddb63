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

#include "bilq/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "bilq/errors.hpp"
#include "bilq/fourier.hpp"
#include "bilq/parallel.hpp"

namespace bilq {
namespace {

constexpr int kMaxLadderOrder = 8;
constexpr double kLogOverflow = 700.0;
// Relative magnitude below which transform samples count as numerically zero
// for decay fitting.
constexpr double kProfileFloor = 1e-14;
// Slack factor for the Beurling ladder monotonicity heuristic.
constexpr double kLadderSlack = 1.05;
// Treat a coordinate (or its powered value) below this as exactly zero when
// classifying ray membership.
constexpr double kZeroCoordinate = 1e-9;

void require_symbol_layout(const SampledField& a, const char* what) {
  if (a.grid().rank() != 3) {
    throw UsageError(std::string(what) + ": symbol must have 3 axes");
  }
}

// Per-node profile U(Z) = sup_X |V(X, Z)| / w(X) over the plan.
std::vector<double> plan_profile(const SampledField& a,
                                 const SampledField& window,
                                 const GevreyClassSpec& spec,
                                 const SamplingPlan& plan) {
  a.require_same_grid(window, "plan_profile");
  if (!(plan.base() == a.grid())) {
    throw UsageError("plan_profile: plan was built for a different grid");
  }

  const SampledField weight_values = evaluate(spec.weight, a.grid());
  std::vector<double> inv_w(weight_values.size());
  for (std::size_t i = 0; i < inv_w.size(); ++i) {
    inv_w[i] = 1.0 / weight_values[i].real();
  }

  std::vector<double> profile(plan.size(), 0.0);
  parallel_for(plan.size(), [&](std::size_t n) {
    const SampledField v = stft_at_frequency(a, window, plan.nodes()[n].zeta);
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      best = std::max(best, std::abs(v[i]) * inv_w[i]);
    }
    profile[n] = best;
  });
  return profile;
}

double phi_of_node(const PlanNode& node, const std::vector<double>& powers) {
  double phi = 0.0;
  for (std::size_t a = 0; a < powers.size(); ++a) {
    const double c = std::abs(node.zeta[a]);
    if (c >= kZeroCoordinate) phi += std::pow(c, powers[a]);
  }
  return phi;
}

// Assembles gated decay samples from a plan profile, excluding magnitudes
// below `floor`.
std::vector<DecaySample> profile_samples(const SamplingPlan& plan,
                                         const std::vector<double>& profile,
                                         const std::vector<double>& powers,
                                         double floor) {
  std::vector<DecaySample> samples;
  for (std::size_t n = 0; n < plan.size(); ++n) {
    const PlanNode& node = plan.nodes()[n];
    if (profile[n] < floor) continue;
    bool gated = true;
    int nonzero = 0;
    for (std::size_t a = 0; a < powers.size(); ++a) {
      const double c = std::abs(node.zeta[a]);
      if (c >= kZeroCoordinate) {
        ++nonzero;
        if (c < 1.0) gated = false;
      }
    }
    if (!gated || nonzero == 0) continue;
    DecaySample pt;
    pt.log_value = std::log(profile[n]);
    pt.phi.assign(powers.size(), 0.0);
    for (std::size_t a = 0; a < powers.size(); ++a) {
      const double c = std::abs(node.zeta[a]);
      if (c >= kZeroCoordinate) pt.phi[a] = std::pow(c, powers[a]);
    }
    samples.push_back(std::move(pt));
  }
  return samples;
}

}  // namespace

double GevreyClassSpec::regularity_exponent(int axis) const {
  switch (axis) {
    case 0:
      return sigma1;
    case 1:
      return s2;
    case 2:
      return s3;
    default:
      throw UsageError("GevreyClassSpec: axis must be 0, 1, or 2");
  }
}

std::vector<double> GevreyClassSpec::dual_decay_powers() const {
  validate();
  return {1.0 / sigma1, 1.0 / s2, 1.0 / s3};
}

void GevreyClassSpec::validate() const {
  if (!(sigma1 > 0.0) || !(s2 > 0.0) || !(s3 > 0.0)) {
    throw UsageError("GevreyClassSpec: exponents must be positive");
  }
  if (weight.arity() > 3) {
    throw UsageError("GevreyClassSpec: weight uses more than 3 axes");
  }
}

ClassNormReport gamma_norm_estimate(const SampledField& a,
                                    const GevreyClassSpec& spec, int K) {
  require_symbol_layout(a, "gamma_norm_estimate");
  spec.validate();
  if (K < 0 || K > kMaxLadderOrder) {
    throw UsageError("gamma_norm_estimate: K must be in [0, 8]");
  }
  if (!a.all_finite()) {
    throw NumericError("gamma_norm_estimate: symbol has non-finite samples");
  }

  const SampledField weight_values = evaluate(spec.weight, a.grid());
  std::vector<double> inv_w(weight_values.size());
  for (std::size_t i = 0; i < inv_w.size(); ++i) {
    inv_w[i] = 1.0 / weight_values[i].real();
  }

  ClassNormReport report;
  report.max_order = K;

  // Incremental mixed derivatives: outer loop raises the x order on one
  // retained field, the middle loop the xi order, the inner loop the eta
  // order, so only three fields live at a time.
  SampledField dx = a;
  bool blown = false;
  for (int alpha = 0; alpha <= K && !blown; ++alpha) {
    if (alpha > 0) dx = spectral_derivative(dx, 0, 1);
    SampledField dxi = dx;
    for (int beta = 0; alpha + beta <= K && !blown; ++beta) {
      if (beta > 0) dxi = spectral_derivative(dxi, 1, 1);
      SampledField deta = dxi;
      for (int gamma = 0; alpha + beta + gamma <= K && !blown; ++gamma) {
        if (gamma > 0) deta = spectral_derivative(deta, 2, 1);
        double sup = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < deta.size(); ++i) {
          const double m = std::abs(deta[i]) * inv_w[i];
          if (!std::isfinite(m)) {
            finite = false;
            break;
          }
          sup = std::max(sup, m);
        }
        const int total = alpha + beta + gamma;
        if (!finite) {
          report.blow_up_order = total;
          blown = true;
          break;
        }
        ClassOrderEntry entry;
        entry.orders = {alpha, beta, gamma};
        const double log_fact = spec.sigma1 * std::lgamma(alpha + 1.0) +
                                spec.s2 * std::lgamma(beta + 1.0) +
                                spec.s3 * std::lgamma(gamma + 1.0);
        entry.log_sup_ratio =
            (sup > 0.0 ? std::log(sup) : -std::numeric_limits<double>::infinity()) -
            log_fact;
        if (total == 0) report.log_prefactor = entry.log_sup_ratio;
        report.table.push_back(std::move(entry));
      }
    }
  }

  // h_fit per truncation order: max over 1 <= total <= k of the order-th
  // root of the sup ratio relative to the order-0 prefactor.
  report.h_ladder.assign(static_cast<std::size_t>(std::max(K, 0)), 0.0);
  double h_running = 0.0;
  for (int k = 1; k <= K; ++k) {
    for (const ClassOrderEntry& entry : report.table) {
      const int total = entry.orders[0] + entry.orders[1] + entry.orders[2];
      if (total != k) continue;
      if (!std::isfinite(entry.log_sup_ratio)) continue;  // exact zero sup
      const double root = std::exp(
          (entry.log_sup_ratio - report.log_prefactor) / static_cast<double>(k));
      h_running = std::max(h_running, root);
    }
    report.h_ladder[static_cast<std::size_t>(k - 1)] = h_running;
  }
  report.h_fit = h_running;

  if (blown) {
    report.pass = false;
  } else if (spec.flavor == GevreyClassSpec::Flavor::kRoumieu) {
    report.pass = true;
  } else {
    bool monotone = true;
    for (std::size_t k = 1; k < report.h_ladder.size(); ++k) {
      if (report.h_ladder[k] > report.h_ladder[k - 1] * kLadderSlack &&
          report.h_ladder[k] > 0.0) {
        monotone = false;
        break;
      }
    }
    report.pass = monotone;
  }
  return report;
}

DecayFitReport stft_class_check(const SampledField& a,
                                const SampledField& window,
                                const GevreyClassSpec& spec,
                                const std::vector<double>& R_ladder) {
  return stft_class_check(a, window, spec, R_ladder,
                          make_class_plan(a.grid()));
}

DecayFitReport stft_class_check(const SampledField& a,
                                const SampledField& window,
                                const GevreyClassSpec& spec,
                                const std::vector<double>& R_ladder,
                                const SamplingPlan& plan) {
  require_symbol_layout(a, "stft_class_check");
  spec.validate();
  if (R_ladder.empty()) {
    throw UsageError("stft_class_check: R_ladder must be nonempty");
  }
  for (std::size_t i = 0; i < R_ladder.size(); ++i) {
    if (!(R_ladder[i] > 0.0) ||
        (i > 0 && !(R_ladder[i] > R_ladder[i - 1]))) {
      throw UsageError(
          "stft_class_check: R_ladder must be positive and increasing");
    }
  }

  const std::vector<double> powers = spec.dual_decay_powers();
  const std::vector<double> profile = plan_profile(a, window, spec, plan);
  const double peak = *std::max_element(profile.begin(), profile.end());
  if (!(peak > 0.0)) {
    throw NumericError("stft_class_check: transform is identically zero");
  }
  const double log_peak = std::log(peak);

  const auto fit_at_floor = [&](double floor) {
    const std::vector<DecaySample> samples =
        profile_samples(plan, profile, powers, floor);
    if (samples.empty()) {
      throw NumericError("stft_class_check: no nodes above the fit floor");
    }
    return fit_decay_samples(samples, powers, log_peak, R_ladder.front());
  };

  DecayFitReport report = fit_at_floor(peak * kProfileFloor);
  if (spec.flavor == GevreyClassSpec::Flavor::kBeurling) {
    // Ladder heuristic: each target rate must be reached when the fit is
    // restricted to successively shallower (larger-magnitude) data.
    bool all = report.pass;
    for (std::size_t k = 0; k < R_ladder.size() && all; ++k) {
      const double floor = peak * std::pow(10.0, -4.0 * (k + 1.0));
      const DecayFitReport rk = fit_at_floor(std::max(floor, peak * kProfileFloor));
      const double r_min_k =
          *std::min_element(rk.rates.begin(), rk.rates.end());
      all = r_min_k >= R_ladder[k];
    }
    report.pass = all;
  }
  return report;
}

double modspace_class_check(const SampledField& a, const SampledField& window,
                            const GevreyClassSpec& spec, double q, double R) {
  return modspace_class_check(a, window, spec, q, R,
                              make_class_plan(a.grid()));
}

double modspace_class_check(const SampledField& a, const SampledField& window,
                            const GevreyClassSpec& spec, double q, double R,
                            const SamplingPlan& plan) {
  require_symbol_layout(a, "modspace_class_check");
  spec.validate();
  const bool q_inf = MixedExponents::is_inf(q);
  if (!q_inf && !(q >= 1.0)) {
    throw UsageError("modspace_class_check: q must be >= 1 or kInf");
  }
  if (!(R >= 0.0)) {
    throw UsageError("modspace_class_check: R must be nonnegative");
  }

  const std::vector<double> powers = spec.dual_decay_powers();
  const std::vector<double> profile = plan_profile(a, window, spec, plan);

  // log of U(Z) * exp(R * Phi(Z)) per node.
  std::vector<double> log_terms(plan.size(),
                                -std::numeric_limits<double>::infinity());
  for (std::size_t n = 0; n < plan.size(); ++n) {
    if (profile[n] > 0.0) {
      log_terms[n] =
          std::log(profile[n]) + R * phi_of_node(plan.nodes()[n], powers);
    }
  }

  double log_result;
  if (q_inf) {
    log_result = *std::max_element(log_terms.begin(), log_terms.end());
  } else {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < plan.size(); ++n) {
      if (plan.nodes()[n].quad_weight > 0.0) {
        peak = std::max(peak, log_terms[n]);
      }
    }
    if (!std::isfinite(peak)) return 0.0;
    double sum = 0.0;
    for (std::size_t n = 0; n < plan.size(); ++n) {
      const double w = plan.nodes()[n].quad_weight;
      if (w > 0.0 && std::isfinite(log_terms[n])) {
        sum += w * std::exp(q * (log_terms[n] - peak));
      }
    }
    log_result = peak + std::log(sum) / q;
  }

  if (!std::isfinite(log_result)) {
    return log_result > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  if (log_result > kLogOverflow) {
    return std::numeric_limits<double>::infinity();
  }
  return std::exp(log_result);
}

SampledField partial_symbol(const SampledField& a, const SampledField& g) {
  require_symbol_layout(a, "partial_symbol");
  if (g.grid().rank() != 1) {
    throw UsageError("partial_symbol: g must have 1 axis");
  }
  if (!(a.grid().axis(2) == g.grid().axis(0).dual())) {
    throw UsageError(
        "partial_symbol: eta axis of a must be the dual of g's axis");
  }
  if (!(a.grid().axis(0) == g.grid().axis(0))) {
    throw UsageError("partial_symbol: x axis of a must equal g's axis");
  }

  const SampledField g_hat = forward_ft(g, AxisSelection{0});

  // Multiply along eta by g^ (eta is the contiguous last axis), transform
  // back in eta, and read the diagonal point x.
  SampledField b = a;
  const std::size_t n_eta = static_cast<std::size_t>(a.grid().axis(2).points);
  for (std::size_t flat = 0; flat < b.size(); ++flat) {
    b[flat] *= g_hat[flat % n_eta];
  }
  const SampledField c = inverse_ft(b, AxisSelection{2});

  const int n0 = a.grid().axis(0).points;
  const int n1 = a.grid().axis(1).points;
  GridSpec out_grid(std::vector<AxisSpec>{a.grid().axis(0), a.grid().axis(1)});
  std::vector<Complex> out_values(out_grid.size());
  std::vector<AxisRole> out_roles = {a.roles()[0], a.roles()[1]};
  for (int i = 0; i < n0; ++i) {
    for (int k = 0; k < n1; ++k) {
      out_values[static_cast<std::size_t>(i) * static_cast<std::size_t>(n1) +
                 static_cast<std::size_t>(k)] =
          c.at({i, k, i});
    }
  }
  return SampledField(std::move(out_grid), std::move(out_values),
                      std::move(out_roles));
}

}  // namespace bilq
