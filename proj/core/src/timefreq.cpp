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

#include "bilq/timefreq.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "bilq/errors.hpp"
#include "bilq/fourier.hpp"
#include "bilq/parallel.hpp"

namespace bilq {
namespace {

// Largest phase-space field we materialize (elements); beyond this, callers
// should evaluate per frequency with stft_at_frequency.
constexpr std::size_t kMaxPhaseSpaceElements = std::size_t{1} << 26;

// Coordinates below this magnitude count as exactly zero for ray selection
// and fit-point gating (the lattice origin lands within roundoff of 0).
constexpr double kZeroCoordinate = 1e-9;

void hash_bytes(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;  // FNV-1a
  }
}

}  // namespace

std::uint64_t field_content_hash(const SampledField& f) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const AxisSpec& ax : f.grid().axes()) {
    hash_bytes(h, &ax.half_width, sizeof ax.half_width);
    hash_bytes(h, &ax.points, sizeof ax.points);
  }
  hash_bytes(h, f.values().data(), f.size() * sizeof(Complex));
  return h;
}

PhaseSpaceField::PhaseSpaceField(SampledField base, SampledField window)
    : base_(std::move(base)),
      window_(std::move(window)),
      window_id_(field_content_hash(window_)) {
  const int m = window_.grid().rank();
  if (base_.grid().rank() != 2 * m) {
    throw UsageError("PhaseSpaceField: base rank must be twice window rank");
  }
  for (int a = 0; a < m; ++a) {
    if (!(base_.grid().axis(a) == window_.grid().axis(a)) ||
        !(base_.grid().axis(m + a) == window_.grid().axis(a).dual())) {
      throw UsageError(
          "PhaseSpaceField: phase-space axes must be the window grid and its "
          "dual");
    }
    if (base_.roles()[static_cast<std::size_t>(a)] != AxisRole::kSpace ||
        base_.roles()[static_cast<std::size_t>(m + a)] !=
            AxisRole::kFrequency) {
      throw UsageError("PhaseSpaceField: axis roles must be m space axes "
                       "followed by m frequency axes");
    }
  }
}

PhaseSpaceField stft(const SampledField& f, const SampledField& window) {
  f.require_same_grid(window, "stft");
  if (window.max_abs() == 0.0) {
    throw UsageError("stft: window is identically zero");
  }
  const GridSpec& g = f.grid();
  const int m = g.rank();
  const std::size_t n = g.size();
  if (n > kMaxPhaseSpaceElements / n) {
    throw UsageError(
        "stft: phase-space field too large to materialize; evaluate per "
        "frequency with stft_at_frequency");
  }

  std::vector<AxisSpec> axes = g.axes();
  for (int a = 0; a < m; ++a) axes.push_back(g.axis(a).dual());
  GridSpec phase_grid(std::move(axes));
  std::vector<AxisRole> roles(static_cast<std::size_t>(2 * m),
                              AxisRole::kSpace);
  for (int a = 0; a < m; ++a) {
    roles[static_cast<std::size_t>(m + a)] = AxisRole::kFrequency;
  }

  std::vector<Complex> wc(n);
  for (std::size_t i = 0; i < n; ++i) wc[i] = std::conj(window[i]);

  std::vector<Complex> out(n * n);
  const AxisSelection all = AxisSelection::all(m);

  parallel_for(n, [&](std::size_t p) {
    // Multi-index of the translate p.
    std::vector<int> pidx(static_cast<std::size_t>(m));
    {
      std::size_t rem = p;
      for (int a = 0; a < m; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        pidx[ua] = static_cast<int>(rem / g.stride(a));
        rem %= g.stride(a);
      }
    }
    // wq[a] = (j_a - p_a + N_a/2) mod N_a tracks the cyclically translated
    // window index while j sweeps the lattice.
    std::vector<int> wq(static_cast<std::size_t>(m));
    std::vector<int> jidx(static_cast<std::size_t>(m), 0);
    for (int a = 0; a < m; ++a) {
      const int na = g.axis(a).points;
      const auto ua = static_cast<std::size_t>(a);
      wq[ua] = ((na / 2 - pidx[ua]) % na + na) % na;
    }
    SampledField h(g);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t wflat = 0;
      for (int a = 0; a < m; ++a) {
        wflat += static_cast<std::size_t>(wq[static_cast<std::size_t>(a)]) *
                 g.stride(a);
      }
      h[j] = f[j] * wc[wflat];
      for (int a = m - 1; a >= 0; --a) {
        const auto ua = static_cast<std::size_t>(a);
        const int na = g.axis(a).points;
        wq[ua] = wq[ua] + 1 == na ? 0 : wq[ua] + 1;
        if (++jidx[ua] < na) break;
        jidx[ua] = 0;
      }
    }
    SampledField H = forward_ft(h, all);
    std::memcpy(out.data() + p * n, H.values().data(), n * sizeof(Complex));
  });

  return PhaseSpaceField(
      SampledField(phase_grid, std::move(out), std::move(roles)), window);
}

SampledField stft_at_frequency(const SampledField& f,
                               const SampledField& window,
                               const std::vector<double>& Z) {
  f.require_same_grid(window, "stft_at_frequency");
  const int m = f.grid().rank();
  if (static_cast<int>(Z.size()) != m) {
    throw UsageError("stft_at_frequency: frequency point arity mismatch");
  }
  if (window.max_abs() == 0.0) {
    throw UsageError("stft_at_frequency: window is identically zero");
  }
  // V(x, Z) = sum_y f(y) e^{-i<y,Z>} conj(window(y - x)) dy is a cyclic
  // correlation; run it through the transform pair.
  SampledField u = f;
  for (int a = 0; a < m; ++a) {
    u = modulate(u, a, -Z[static_cast<std::size_t>(a)]);
  }
  const AxisSelection all = AxisSelection::all(m);
  SampledField U = forward_ft(u, all);
  SampledField W = forward_ft(window, all);
  for (std::size_t i = 0; i < U.size(); ++i) U[i] *= std::conj(W[i]);
  SampledField v = inverse_ft(U, all);
  return SampledField(f.grid(), v.values(),
                      std::vector<AxisRole>(static_cast<std::size_t>(m),
                                            AxisRole::kSpace));
}

SampledField stft_adjoint_invert(const PhaseSpaceField& V,
                                 const SampledField& window,
                                 std::string* warning) {
  const int m = V.space_rank();
  window.require_same_grid(V.window(), "stft_adjoint_invert");
  if (warning != nullptr) warning->clear();
  const std::uint64_t rec_id = field_content_hash(window);
  if (rec_id != V.window_id() && warning != nullptr) {
    *warning =
        "stft_adjoint_invert: reconstruction window differs from the analysis "
        "window; result is rescaled by the window pairing";
  }
  const Complex pairing = window.inner(V.window());
  const double floor_pairing =
      1e-12 * window.l2_norm() * V.window().l2_norm();
  if (std::abs(pairing) <= floor_pairing) {
    throw NumericError(
        "stft_adjoint_invert: window pairing is numerically zero");
  }

  // Synthesize over the frequency axes first, then sum window translates.
  AxisSelection freq_axes;
  for (int a = 0; a < m; ++a) freq_axes.indices.push_back(m + a);
  SampledField W = inverse_ft(V.base(), freq_axes);

  const GridSpec& g = window.grid();
  const std::size_t n = g.size();
  const double dx_m = g.cell_volume();
  std::vector<Complex> rec(n, Complex(0.0, 0.0));

  parallel_for(n, [&](std::size_t l) {
    std::vector<int> lidx(static_cast<std::size_t>(m));
    {
      std::size_t rem = l;
      for (int a = 0; a < m; ++a) {
        lidx[static_cast<std::size_t>(a)] = static_cast<int>(rem / g.stride(a));
        rem %= g.stride(a);
      }
    }
    Complex acc(0.0, 0.0);
    std::vector<int> pidx(static_cast<std::size_t>(m), 0);
    for (std::size_t p = 0; p < n; ++p) {
      std::size_t wflat = 0;
      for (int a = 0; a < m; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        const int na = g.axis(a).points;
        const int q = ((lidx[ua] - pidx[ua] + na / 2) % na + na) % na;
        wflat += static_cast<std::size_t>(q) * g.stride(a);
      }
      acc += W[p * n + l] * window[wflat];
      for (int a = m - 1; a >= 0; --a) {
        const auto ua = static_cast<std::size_t>(a);
        if (++pidx[ua] < g.axis(a).points) break;
        pidx[ua] = 0;
      }
    }
    rec[l] = acc * dx_m / pairing;
  });

  return SampledField(g, std::move(rec),
                      std::vector<AxisRole>(static_cast<std::size_t>(m),
                                            AxisRole::kSpace));
}

void MixedExponents::validate() const {
  for (double e : {p, q}) {
    if (!(e == kInf || e >= 1.0)) {
      throw UsageError("MixedExponents: exponents must be >= 1 or infinity");
    }
  }
}

namespace {

/// Shared mixed-norm loop; log_weight(flat, coords) supplies log w at a
/// point given its flat index and coordinate vector.
template <typename LogWeight>
double mixed_norm_impl(const PhaseSpaceField& F, const MixedExponents& pq,
                       const LogWeight& log_weight) {
  pq.validate();
  const SampledField& base = F.base();
  const GridSpec& grid = base.grid();
  const int rank = grid.rank();
  const int m = F.space_rank();

  std::size_t freq_size = 1;
  for (int a = 0; a < m; ++a) {
    freq_size *= static_cast<std::size_t>(grid.axis(m + a).points);
  }
  double dx_m = 1.0, dxi_m = 1.0;
  for (int a = 0; a < m; ++a) {
    dx_m *= grid.axis(a).spacing();
    dxi_m *= grid.axis(m + a).spacing();
  }

  std::vector<double> inner_log(freq_size,
                                -std::numeric_limits<double>::infinity());
  std::vector<double> coords(static_cast<std::size_t>(rank));

  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  // One sweep per pass over the full array; pass 1 records per-frequency
  // maxima, pass 2 accumulates the rescaled p-sums.
  auto sweep = [&](auto&& visit) {
    std::fill(idx.begin(), idx.end(), 0);
    for (int a = 0; a < rank; ++a) {
      coords[static_cast<std::size_t>(a)] = grid.axis(a).coordinate(0);
    }
    const std::size_t total = base.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t fidx = 0;
      for (int a = 0; a < m; ++a) {
        fidx = fidx * static_cast<std::size_t>(grid.axis(m + a).points) +
               static_cast<std::size_t>(idx[static_cast<std::size_t>(m + a)]);
      }
      visit(flat, fidx);
      for (int a = rank - 1; a >= 0; --a) {
        const auto ua = static_cast<std::size_t>(a);
        if (++idx[ua] < grid.axis(a).points) {
          coords[ua] = grid.axis(a).coordinate(idx[ua]);
          break;
        }
        idx[ua] = 0;
        coords[ua] = grid.axis(a).coordinate(0);
      }
    }
  };

  auto log_term = [&](std::size_t flat) {
    const double mod = std::abs(base[flat]);
    if (mod == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(mod) + log_weight(flat, coords);
  };

  sweep([&](std::size_t flat, std::size_t fidx) {
    inner_log[fidx] = std::max(inner_log[fidx], log_term(flat));
  });

  const bool p_inf = MixedExponents::is_inf(pq.p);
  if (!p_inf) {
    std::vector<double> sums(freq_size, 0.0);
    sweep([&](std::size_t flat, std::size_t fidx) {
      const double lt = log_term(flat);
      if (std::isfinite(lt) && std::isfinite(inner_log[fidx])) {
        sums[fidx] += std::exp(pq.p * (lt - inner_log[fidx]));
      }
    });
    for (std::size_t i = 0; i < freq_size; ++i) {
      if (std::isfinite(inner_log[i])) {
        inner_log[i] += std::log(sums[i] * dx_m) / pq.p;
      }
    }
  }

  // Outer q-stage over the per-frequency values.
  double outer_max = -std::numeric_limits<double>::infinity();
  for (double v : inner_log) outer_max = std::max(outer_max, v);
  if (!std::isfinite(outer_max)) return 0.0;
  if (MixedExponents::is_inf(pq.q)) {
    return outer_max > 700.0 ? std::numeric_limits<double>::infinity()
                             : std::exp(outer_max);
  }
  double sum = 0.0;
  for (double v : inner_log) {
    if (std::isfinite(v)) sum += std::exp(pq.q * (v - outer_max));
  }
  const double log_norm = outer_max + std::log(sum * dxi_m) / pq.q;
  return log_norm > 700.0 ? std::numeric_limits<double>::infinity()
                          : std::exp(log_norm);
}

}  // namespace

double mixed_norm(const PhaseSpaceField& F, const WeightModel& w,
                  const MixedExponents& pq) {
  if (w.arity() > F.base().grid().rank()) {
    throw UsageError("mixed_norm: weight arity exceeds phase-space rank");
  }
  return mixed_norm_impl(
      F, pq, [&w](std::size_t, const std::vector<double>& coords) {
        return w.log_value(coords);
      });
}

double mixed_norm(const PhaseSpaceField& F, const SampledField& w,
                  const MixedExponents& pq) {
  F.base().require_same_grid(w, "mixed_norm");
  return mixed_norm_impl(F, pq,
                         [&w](std::size_t flat, const std::vector<double>&) {
                           const double v = w[flat].real();
                           if (!(v > 0.0)) {
                             throw NumericError(
                                 "mixed_norm: sampled weight must be strictly "
                                 "positive");
                           }
                           return std::log(v);
                         });
}

double modulation_norm(const SampledField& f, const SampledField& window,
                       const WeightModel& w, const MixedExponents& pq) {
  return mixed_norm(stft(f, window), w, pq);
}

DecayFitReport fit_decay_field(const SampledField& modulus,
                               const std::vector<double>& powers, double floor,
                               double r_min) {
  const GridSpec& grid = modulus.grid();
  const int rank = grid.rank();
  if (static_cast<int>(powers.size()) != rank) {
    throw UsageError("fit_decay_field: one power per axis required");
  }
  for (double pw : powers) {
    if (!(pw > 0.0)) {
      throw UsageError("fit_decay_field: powers must be positive");
    }
  }
  if (!(floor > 0.0)) {
    throw UsageError("fit_decay_field: floor must be positive");
  }

  const double max_mod = modulus.max_abs();
  if (max_mod < floor) {
    throw NumericError("fit_decay_field: all samples below the floor");
  }
  const double log_c = std::log(max_mod);

  // Pass over the lattice: gate coordinates and collect fit samples for the
  // shared core.
  std::vector<DecaySample> samples;
  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  const std::size_t total = modulus.size();
  std::vector<double> coords(static_cast<std::size_t>(rank));
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (int a = 0; a < rank; ++a) {
      coords[static_cast<std::size_t>(a)] =
          grid.axis(a).coordinate(idx[static_cast<std::size_t>(a)]);
    }
    const double mod = std::abs(modulus[flat]);
    if (mod >= floor) {
      int nonzero_count = 0;
      bool gated = true;
      for (int a = 0; a < rank; ++a) {
        const double c = std::abs(coords[static_cast<std::size_t>(a)]);
        if (c >= kZeroCoordinate) {
          ++nonzero_count;
          if (c < 1.0) gated = false;
        }
      }
      if (gated && nonzero_count > 0) {
        DecaySample pt;
        pt.log_value = std::log(mod);
        pt.phi.assign(static_cast<std::size_t>(rank), 0.0);
        for (int a = 0; a < rank; ++a) {
          const auto ua = static_cast<std::size_t>(a);
          const double c = std::abs(coords[ua]);
          if (c >= kZeroCoordinate) pt.phi[ua] = std::pow(c, powers[ua]);
        }
        samples.push_back(std::move(pt));
      }
    }
    for (int a = rank - 1; a >= 0; --a) {
      const auto ua = static_cast<std::size_t>(a);
      if (++idx[ua] < grid.axis(a).points) break;
      idx[ua] = 0;
    }
  }

  if (samples.empty()) {
    throw NumericError("fit_decay_field: no usable fit points above the floor");
  }
  return fit_decay_samples(samples, powers, log_c, r_min);
}

DecayFitReport fit_decay_samples(const std::vector<DecaySample>& samples,
                                 const std::vector<double>& powers,
                                 double log_prefactor, double r_min) {
  if (samples.empty()) {
    throw NumericError("fit_decay_samples: no samples");
  }
  const auto slots = samples.front().phi.size();
  if (powers.size() != slots) {
    throw UsageError("fit_decay_samples: one power per phi slot required");
  }

  DecayFitReport report;
  report.powers = powers;
  report.rates.assign(slots, 0.0);
  report.log_prefactor = log_prefactor;

  // Per-slot rates from samples supported on a single slot.
  std::vector<double> ray_rate(slots, std::numeric_limits<double>::infinity());
  std::vector<bool> ray_seen(slots, false);
  for (const DecaySample& pt : samples) {
    if (pt.phi.size() != slots) {
      throw UsageError("fit_decay_samples: inconsistent phi size");
    }
    std::size_t nonzero_slot = slots;
    int nonzero_count = 0;
    for (std::size_t a = 0; a < slots; ++a) {
      if (pt.phi[a] > 0.0) {
        ++nonzero_count;
        nonzero_slot = a;
      }
    }
    if (nonzero_count == 1) {
      const double margin =
          std::max(0.0, log_prefactor - pt.log_value) / pt.phi[nonzero_slot];
      ray_rate[nonzero_slot] = std::min(ray_rate[nonzero_slot], margin);
      ray_seen[nonzero_slot] = true;
    }
  }
  for (std::size_t a = 0; a < slots; ++a) {
    report.rates[a] = ray_seen[a] ? ray_rate[a] : 0.0;
  }

  // Joint rescale: shrink all rates together until the model lies above the
  // data at every sample (rates from rays alone need not do so).
  double beta = 1.0;
  for (const DecaySample& pt : samples) {
    double denom = 0.0;
    for (std::size_t a = 0; a < slots; ++a) {
      denom += report.rates[a] * pt.phi[a];
    }
    if (denom > 0.0) {
      beta = std::min(
          beta, std::max(0.0, log_prefactor - pt.log_value) / denom);
    }
  }
  for (double& r : report.rates) r *= beta;

  double residual = -std::numeric_limits<double>::infinity();
  for (const DecaySample& pt : samples) {
    double model = log_prefactor;
    for (std::size_t a = 0; a < slots; ++a) {
      model -= report.rates[a] * pt.phi[a];
    }
    residual = std::max(residual, pt.log_value - model);
  }
  report.residual = residual;
  report.pass = std::all_of(report.rates.begin(), report.rates.end(),
                            [r_min](double r) { return r >= r_min; });
  return report;
}

DecayFitReport fit_gs_decay(const PhaseSpaceField& V,
                            const std::vector<double>& powers, double floor,
                            double r_min) {
  return fit_decay_field(V.base(), powers, floor, r_min);
}

}  // namespace bilq
