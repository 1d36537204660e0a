// Copyright 2026 The bellsn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Cross-check suite behind the `verify` command: closed forms against
// enumeration, settings evaluation and both optimizers, plus the seeded
// property sweeps (finite-difference gradients, see-saw monotonicity,
// enumeration oracle equivalence, convexity of LHV mixtures).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bellsn/bell_core.hpp"
#include "bellsn/format.hpp"
#include "bellsn/lhv_bound.hpp"
#include "bellsn/quantum_singlet.hpp"
#include "bellsn/settings_optimizer.hpp"

namespace bellsn {

struct CheckResult {
  std::string label;
  bool passed = false;
};

struct VerifyOptions {
  std::size_t n_max = 6;
  EnumerationOptions enumeration{};
  OptimizerConfig optimizer{};
  std::uint64_t property_seed = 20260101;
};

namespace verify {

inline constexpr double kClosedFormRelTol = 1e-12;
inline constexpr double kViolationMargin = 1e-9;
inline constexpr double kAsymptoteTol = 1e-7;
inline constexpr std::size_t kAsymptoteN = 10000;
inline constexpr double kOptimizerGap = 1e-8;
inline constexpr double kStationarityTol = 1e-9;
inline constexpr double kGradientRelTol = 1e-6;
inline constexpr double kFiniteDifferenceStep = 1e-6;
inline constexpr std::size_t kGradientInstances = 50;
inline constexpr std::size_t kOracleMatricesPerN = 100;
inline constexpr std::size_t kOracleMaxN = 6;
inline constexpr double kMonotoneSlack = 1e-12;
inline constexpr double kConvexSlack = 1e-12;

inline std::string sig(double x) { return format_sig15(x); }

// Uniform integer matrix with entries in [lo, hi].
inline BellCoefficients random_integer_matrix(std::size_t n, int lo, int hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(lo, hi);
  SquareMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) m(j, k) = entry(rng);
  }
  return BellCoefficients(std::move(m));
}

inline BellCoefficients random_real_matrix(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  SquareMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) m(j, k) = entry(rng);
  }
  return BellCoefficients(std::move(m));
}

/// Largest relative error ||g - fd||_2 / ||fd||_2 between the analytic
/// gradient and central differences, over seeded random instances.
inline double gradient_vs_finite_difference(std::uint64_t seed, std::size_t instances, std::size_t n_lo,
                                            std::size_t n_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_n(n_lo, n_hi);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  double worst = 0.0;
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t n = pick_n(rng);
    const auto c = random_real_matrix(n, rng);
    std::vector<double> alpha(n);
    std::vector<double> beta(n);
    for (auto& x : alpha) x = angle(rng);
    for (auto& x : beta) x = angle(rng);
    const auto g = coplanar_gradient(c, CoplanarSettings(alpha, beta));
    double err_sq = 0.0;
    double ref_sq = 0.0;
    auto probe = [&](std::vector<double>& x, std::size_t i, double analytic) {
      const double x0 = x[i];
      x[i] = x0 + kFiniteDifferenceStep;
      const double up = quantum_value_coplanar(c, CoplanarSettings(alpha, beta));
      x[i] = x0 - kFiniteDifferenceStep;
      const double down = quantum_value_coplanar(c, CoplanarSettings(alpha, beta));
      x[i] = x0;
      const double fd = (up - down) / (2.0 * kFiniteDifferenceStep);
      err_sq += (analytic - fd) * (analytic - fd);
      ref_sq += fd * fd;
    };
    for (std::size_t i = 0; i < n; ++i) probe(alpha, i, g.d_alpha[i]);
    for (std::size_t i = 0; i < n; ++i) probe(beta, i, g.d_beta[i]);
    worst = std::max(worst, std::sqrt(err_sq) / std::max(std::sqrt(ref_sq), 1e-300));
  }
  return worst;
}

/// Largest decrease between consecutive half-steps over seeded see-saw runs
/// (random real coefficients and the sign pattern, d = 1..3). <= 0 means monotone.
inline double seesaw_worst_decrease(std::uint64_t seed, std::size_t n_max) {
  std::mt19937_64 rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::size_t d = 1; d <= 3; ++d) {
      for (int rep = 0; rep < 4; ++rep) {
        const auto c = rep == 0 ? sn_sign_matrix(n) : random_real_matrix(n, rng);
        const auto run = seesaw_from(c, random_vector_settings(n, d, rng));
        for (std::size_t i = 1; i < run.trace.size(); ++i) {
          worst = std::max(worst, run.trace[i - 1] - run.trace[i]);
        }
      }
    }
  }
  return worst;
}

/// Number of seeded random integer matrices (entries -3..3) where the two
/// enumerations disagree on the value or the witness.
inline std::size_t oracle_mismatches(std::uint64_t seed, std::size_t n_max, std::size_t per_n,
                                     const EnumerationOptions& opt) {
  std::mt19937_64 rng(seed);
  std::size_t bad = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::size_t t = 0; t < per_n; ++t) {
      const auto c = random_integer_matrix(n, -3, 3, rng);
      const auto brute = lhv_bound_bruteforce(c, opt);
      const auto fast = lhv_bound_fast(c, opt);
      if (brute.value != fast.value || !(brute.witness == fast.witness)) ++bad;
    }
  }
  return bad;
}

/// Largest excess of a random mixture of deterministic strategies over the
/// LHV bound of the sign pattern.
inline double convexity_worst_excess(std::uint64_t seed, std::size_t n_max, const EnumerationOptions& opt) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto c = sn_sign_matrix(n);
    const double bound = lhv_bound_fast(c, opt).value;
    std::uniform_int_distribution<std::uint64_t> enc(0, (std::uint64_t{1} << n) - 1);
    for (int trial = 0; trial < 20; ++trial) {
      const int terms = 1 + trial % 8;
      std::vector<double> w(terms);
      double total = 0.0;
      for (auto& x : w) total += (x = weight(rng));
      SquareMatrix mix(n);
      for (int t = 0; t < terms; ++t) {
        const auto s = DeterministicStrategy::from_encoding(enc(rng), enc(rng), n);
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) mix(j, k) += (w[t] / total) * s.a()[j] * s.b()[k];
        }
      }
      worst = std::max(worst, evaluate(c, CorrelationMatrix(std::move(mix))) - bound);
    }
  }
  return worst;
}

}  // namespace verify

/// Runs every cross-check up to opt.n_max, reporting each as it completes.
/// Returns true iff all checks pass.
inline bool run_verification(const VerifyOptions& opt, const std::function<void(const CheckResult&)>& report) {
  using namespace verify;
  bool all = true;
  auto emit = [&](std::string label, bool ok) {
    all = all && ok;
    report({std::move(label) + (ok ? " PASS" : " FAIL"), ok});
  };
  const std::size_t n_max = opt.n_max;

  for (std::size_t n = 2; n <= std::min<std::size_t>(n_max, 12); ++n) {
    const auto r = lhv_bound_bruteforce(sn_sign_matrix(n), opt.enumeration);
    const auto closed = static_cast<double>(lhv_bound_closed_form(n));
    emit("lhv_brute(" + std::to_string(n) + ")=" + sig(r.value) + " == closed=" + sig(closed),
         r.value == closed && strategy_value(sn_sign_matrix(n), r.witness) == r.value);
  }
  for (std::size_t n = 2; n <= std::min<std::size_t>(n_max, 24); ++n) {
    const auto r = lhv_bound_fast(sn_sign_matrix(n), opt.enumeration);
    const auto closed = static_cast<double>(lhv_bound_closed_form(n));
    emit("lhv_fast(" + std::to_string(n) + ")=" + sig(r.value) + " == closed=" + sig(closed),
         r.value == closed && strategy_value(sn_sign_matrix(n), r.witness) == r.value);
  }
  for (std::size_t n = 2; n <= std::min<std::size_t>(n_max, 12); ++n) {
    const double p = product_state_max(sn_sign_matrix(n), opt.enumeration);
    emit("product_state_max(" + std::to_string(n) + ")=" + sig(p) + " == lhv", p == lhv_bound_closed_form(n));
  }
  for (std::size_t n = 2; n <= n_max; ++n) {
    const double at = quantum_value_coplanar(sn_sign_matrix(n), paper_settings(n));
    const double closed = quantum_max_closed_form(n);
    const double rel = std::abs(at - closed) / closed;
    emit("qvalue(" + std::to_string(n) + ") settings=" + sig(at) + " closed=" + sig(closed) + " relerr=" + sig(rel) +
             " < 1e-12",
         rel < kClosedFormRelTol);
  }
  for (std::size_t n = 2; n <= std::min<std::size_t>(n_max, 50); ++n) {
    const auto g = coplanar_gradient(sn_sign_matrix(n), paper_settings(n));
    double worst = 0.0;
    for (double x : g.d_alpha) worst = std::max(worst, std::abs(x));
    for (double x : g.d_beta) worst = std::max(worst, std::abs(x));
    emit("stationary(" + std::to_string(n) + ") max|grad|=" + sig(worst) + " < 1e-9", worst < kStationarityTol);
  }
  bool parity_ok = true;
  bool ratio_ok = true;
  for (std::size_t n = 2; n <= n_max; ++n) {
    const double ratio = violation_ratio(n).ratio;
    const bool violates = ratio > 1.0 + kViolationMargin;
    ratio_ok = ratio_ok && violates;
    if (n <= 24) emit("ratio(" + std::to_string(n) + ")=" + sig(ratio) + " > 1", violates);
    parity_ok = parity_ok && ((n % 2 == 0) ? ratio > asymptotic_ratio() : ratio < asymptotic_ratio());
  }
  if (n_max > 24) emit("ratio(n) > 1 for n=2.." + std::to_string(n_max), ratio_ok);
  emit("parity: even-n ratios above and odd-n below 4/pi for n=2.." + std::to_string(n_max), parity_ok);
  {
    const double dev = std::abs(violation_ratio(kAsymptoteN).ratio - asymptotic_ratio());
    emit("asymptote |ratio(10000)-4/pi|=" + sig(dev) + " < 1e-7", dev < kAsymptoteTol);
  }
  for (std::size_t n = 2; n <= std::min<std::size_t>(n_max, 10); ++n) {
    const auto c = sn_sign_matrix(n);
    const double closed = quantum_max_closed_form(n);
    const double cop = optimize_coplanar(c, opt.optimizer).best_value;
    emit("optimize_coplanar(" + std::to_string(n) + ") gap=" + sig(closed - cop) + " < 1e-8",
         std::abs(closed - cop) < kOptimizerGap);
    for (std::size_t d : {2, 3}) {
      const double ss = seesaw(c, d, opt.optimizer).best_value;
      emit("seesaw(" + std::to_string(n) + ",d=" + std::to_string(d) + ") gap=" + sig(closed - ss) + " < 1e-8",
           std::abs(closed - ss) < kOptimizerGap);
    }
  }
  {
    const double err = gradient_vs_finite_difference(opt.property_seed, kGradientInstances, 2, 6);
    emit("gradient vs finite differences, 50 instances: max relerr=" + sig(err) + " < 1e-6", err < kGradientRelTol);
  }
  {
    const std::size_t cap = std::min<std::size_t>(n_max, kOracleMaxN);
    const double dec = seesaw_worst_decrease(opt.property_seed + 1, cap);
    emit("seesaw traces monotone for n=1.." + std::to_string(cap) + ": worst decrease=" + sig(dec),
         dec <= kMonotoneSlack);
    const std::size_t bad = oracle_mismatches(opt.property_seed + 2, cap, kOracleMatricesPerN, opt.enumeration);
    emit("fast == brute on 100 random matrices per n=1.." + std::to_string(cap) + ": mismatches=" +
             std::to_string(bad),
         bad == 0);
    const double excess = convexity_worst_excess(opt.property_seed + 3, cap, opt.enumeration);
    emit("LHV mixtures stay below bound for n=1.." + std::to_string(cap) + ": worst excess=" + sig(excess),
         excess <= kConvexSlack);
  }
  return all;
}

}  // namespace bellsn
