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

// Numerical search for the quantum maximum of a correlation Bell expression
// on the singlet, by two independent routes:
//
//   optimize_coplanar  gradient ascent over analyzer angles in one plane,
//                      objective sum c[j][k] (-cos(alpha_j - beta_k));
//   seesaw             alternating exact maximization over unit vectors in
//                      R^d, objective sum c[j][k] (-u_j . v_k).
//
// Both are seeded multistart searches. Restart i draws from its own stream
// derived from (seed, i); the best restart wins, ties going to the lower
// index, so results do not depend on how restarts are scheduled. Neither
// route certifies global optimality.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bellsn/bell_core.hpp"
#include "bellsn/errors.hpp"
#include "bellsn/format.hpp"
#include "bellsn/parallel.hpp"
#include "bellsn/quantum_singlet.hpp"

namespace bellsn {

/// Unit Bloch vectors u_1..u_n (Alice) and v_1..v_n (Bob) in R^d.
class VectorSettings {
 public:
  static constexpr double kNormTolerance = 1e-12;

  VectorSettings(std::size_t d, std::vector<std::vector<double>> u, std::vector<std::vector<double>> v)
      : d_(d), u_(std::move(u)), v_(std::move(v)) {
    if (d_ == 0) throw InvalidArgument("vector settings: dimension must be at least 1");
    if (u_.empty() || u_.size() != v_.size()) {
      throw InvalidArgument("vector settings: need the same positive number of vectors on each side");
    }
    for (const auto* side : {&u_, &v_}) {
      for (const auto& x : *side) {
        if (x.size() != d_) throw InvalidArgument("vector settings: vector of wrong dimension");
        double sq = 0.0;
        for (double c : x) sq += c * c;
        if (!(std::abs(std::sqrt(sq) - 1.0) <= kNormTolerance)) {
          throw InvalidArgument("vector settings: vector norm " + format_exact(std::sqrt(sq)) + " is not 1");
        }
      }
    }
  }

  std::size_t dimension() const { return d_; }
  std::size_t settings() const { return u_.size(); }
  const std::vector<std::vector<double>>& u() const { return u_; }
  const std::vector<std::vector<double>>& v() const { return v_; }

 private:
  std::size_t d_;
  std::vector<std::vector<double>> u_;
  std::vector<std::vector<double>> v_;
};

/// sum c[j][k] (-u_j . v_k), the singlet value of general analyzers.
inline double quantum_value_vectors(const BellCoefficients& coeffs, const VectorSettings& s) {
  if (coeffs.settings() != s.settings()) {
    throw InvalidArgument("quantum_value_vectors: coefficients have " + std::to_string(coeffs.settings()) +
                          " settings but the vectors describe " + std::to_string(s.settings()));
  }
  detail::CompensatedSum total;
  for (std::size_t j = 0; j < s.settings(); ++j) {
    for (std::size_t k = 0; k < s.settings(); ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < s.dimension(); ++i) dot += s.u()[j][i] * s.v()[k][i];
      total.add(-coeffs(j, k) * dot);
    }
  }
  return total.value();
}

struct OptimizerConfig {
  std::size_t max_iterations = 10000;
  double value_tolerance = 1e-12;
  std::size_t restarts = 100;
  std::uint64_t seed = 0;
  double initial_step = 0.1;  // radians, gradient ascent only
  unsigned threads = 1;

  void validate() const {
    if (max_iterations == 0) throw InvalidArgument("optimizer: max_iterations must be positive");
    if (!(value_tolerance > 0.0)) throw InvalidArgument("optimizer: value_tolerance must be positive");
    if (restarts == 0) throw InvalidArgument("optimizer: restarts must be at least 1");
    if (!(initial_step > 0.0)) throw InvalidArgument("optimizer: initial_step must be positive");
  }
};

struct OptimizationResult {
  double best_value = 0.0;
  std::variant<CoplanarSettings, VectorSettings> best_settings;
  std::size_t iterations_used = 0;  // of the winning restart
  bool converged = false;           // of the winning restart
  std::size_t best_restart = 0;
  std::vector<double> restart_values;
  /// 0 for co-planar angle search, otherwise the vector dimension.
  std::size_t dimension = 0;
};

inline constexpr std::string_view kOptimizationCsvHeader = "n,d,best_value,closed_form,gap,restarts,converged";

/// n,d|coplanar,best_value,closed_form,gap,restarts,converged. The closed
/// form and gap print as "nan" when no reference value is given.
inline std::string to_csv_row(const OptimizationResult& r,
                              double reference = std::numeric_limits<double>::quiet_NaN()) {
  const std::size_t n = std::visit([](const auto& s) { return s.settings(); }, r.best_settings);
  const std::string d = r.dimension == 0 ? "coplanar" : std::to_string(r.dimension);
  std::string ref = "nan";
  std::string gap = "nan";
  if (!std::isnan(reference)) {
    ref = format_sig15(reference);
    gap = format_sig15(reference - r.best_value);
  }
  return std::to_string(n) + "," + d + "," + format_sig15(r.best_value) + "," + ref + "," + gap + "," +
         std::to_string(r.restart_values.size()) + "," + (r.converged ? "true" : "false");
}

struct CoplanarGradient {
  std::vector<double> d_alpha;
  std::vector<double> d_beta;
};

namespace detail {

inline void check_dims(const BellCoefficients& coeffs, std::size_t n, std::string_view what) {
  if (coeffs.settings() != n) {
    throw InvalidArgument(std::string(what) + ": coefficients have " + std::to_string(coeffs.settings()) +
                          " settings but the settings describe " + std::to_string(n));
  }
}

inline double coplanar_objective(const BellCoefficients& c, const std::vector<double>& alpha,
                                 const std::vector<double>& beta) {
  detail::CompensatedSum total;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    for (std::size_t k = 0; k < beta.size(); ++k) total.add(-c(j, k) * std::cos(alpha[j] - beta[k]));
  }
  return total.value();
}

inline CoplanarGradient coplanar_gradient_raw(const BellCoefficients& c, const std::vector<double>& alpha,
                                             const std::vector<double>& beta) {
  const std::size_t n = alpha.size();
  CoplanarGradient g{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double t = c(j, k) * std::sin(alpha[j] - beta[k]);
      g.d_alpha[j] += t;
      g.d_beta[k] -= t;
    }
  }
  return g;
}

inline std::mt19937_64 restart_engine(std::uint64_t seed, std::size_t restart) {
  const auto r = static_cast<std::uint64_t>(restart);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(r >> 32)};
  return std::mt19937_64(seq);
}

struct CoplanarRun {
  std::vector<double> alpha;
  std::vector<double> beta;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Steepest ascent: try x + step * grad, halving the step (at most
// kMaxHalvings times) until the value does not decrease; the step resets to
// initial_step after every accepted move.
inline CoplanarRun ascend_coplanar(const BellCoefficients& c, std::vector<double> alpha, std::vector<double> beta,
                                   const OptimizerConfig& cfg) {
  constexpr int kMaxHalvings = 60;
  const std::size_t n = alpha.size();
  CoplanarRun run;
  double value = coplanar_objective(c, alpha, beta);
  std::vector<double> next_alpha(n);
  std::vector<double> next_beta(n);
  for (run.iterations = 1; run.iterations <= cfg.max_iterations; ++run.iterations) {
    const auto g = coplanar_gradient_raw(c, alpha, beta);
    double step = cfg.initial_step;
    bool accepted = false;
    double next_value = value;
    for (int h = 0; h <= kMaxHalvings; ++h, step *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) {
        next_alpha[i] = alpha[i] + step * g.d_alpha[i];
        next_beta[i] = beta[i] + step * g.d_beta[i];
      }
      next_value = coplanar_objective(c, next_alpha, next_beta);
      if (next_value >= value) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Stalled: no step along the gradient keeps the value.
      run.converged = true;
      break;
    }
    const double improvement = next_value - value;
    alpha.swap(next_alpha);
    beta.swap(next_beta);
    value = next_value;
    if (improvement < cfg.value_tolerance) {
      run.converged = true;
      break;
    }
  }
  if (run.iterations > cfg.max_iterations) run.iterations = cfg.max_iterations;
  run.alpha = std::move(alpha);
  run.beta = std::move(beta);
  run.value = value;
  return run;
}

// Index of the best value; ties go to the lowest index.
template <typename Run>
std::size_t best_index(const std::vector<Run>& runs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].value > runs[best].value) best = i;
  }
  return best;
}

template <typename Run, typename Fn>
std::vector<Run> run_restarts(const OptimizerConfig& cfg, Fn one) {
  auto chunks = map_ranges<std::vector<Run>>(cfg.restarts, cfg.threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<Run> out;
    out.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) out.push_back(one(i));
    return out;
  });
  std::vector<Run> runs;
  runs.reserve(cfg.restarts);
  for (auto& chunk : chunks) {
    for (auto& r : chunk) runs.push_back(std::move(r));
  }
  return runs;
}

}  // namespace detail

/// dS/dalpha_j = sum_k c[j][k] sin(alpha_j - beta_k);
/// dS/dbeta_k = -sum_j c[j][k] sin(alpha_j - beta_k).
inline CoplanarGradient coplanar_gradient(const BellCoefficients& coeffs, const CoplanarSettings& s) {
  detail::check_dims(coeffs, s.settings(), "coplanar_gradient");
  return detail::coplanar_gradient_raw(coeffs, s.alpha(), s.beta());
}

/// Multistart gradient ascent over co-planar angles, each restart starting
/// from angles drawn uniformly in (-pi, pi].
inline OptimizationResult optimize_coplanar(const BellCoefficients& coeffs, const OptimizerConfig& cfg = {}) {
  cfg.validate();
  const std::size_t n = coeffs.settings();
  const auto runs = detail::run_restarts<detail::CoplanarRun>(cfg, [&](std::size_t i) {
    auto rng = detail::restart_engine(cfg.seed, i);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<double> alpha(n);
    std::vector<double> beta(n);
    for (auto& x : alpha) x = normalize_angle(angle(rng));
    for (auto& x : beta) x = normalize_angle(angle(rng));
    return detail::ascend_coplanar(coeffs, std::move(alpha), std::move(beta), cfg);
  });
  const std::size_t best = detail::best_index(runs);
  CoplanarSettings settings(runs[best].alpha, runs[best].beta);
  OptimizationResult result{quantum_value_coplanar(coeffs, settings), std::move(settings), runs[best].iterations,
                            runs[best].converged, best, {}, 0};
  for (const auto& r : runs) result.restart_values.push_back(r.value);
  return result;
}

/// One see-saw descent from a given start.
struct SeesawRun {
  std::vector<std::vector<double>> u;
  std::vector<std::vector<double>> v;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Objective at the start and after every half-step.
  std::vector<double> trace;

  VectorSettings settings() const { return {u.empty() ? 1 : u[0].size(), u, v}; }
};

namespace detail {

inline constexpr double kDegenerateResultant = 1e-14;

// Replaces each x_i by -w_i / |w_i| where w_i = sum_m weight(i, m) y_m.
template <typename Weight>
void best_response(std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y, Weight weight) {
  const std::size_t d = y.front().size();
  std::vector<double> w(d);
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t m = 0; m < y.size(); ++m) {
      const double c = weight(i, m);
      for (std::size_t t = 0; t < d; ++t) w[t] += c * y[m][t];
    }
    double sq = 0.0;
    for (double wt : w) sq += wt * wt;
    const double norm = std::sqrt(sq);
    if (norm < kDegenerateResultant) continue;  // keep the previous vector
    for (std::size_t t = 0; t < d; ++t) x[i][t] = -w[t] / norm;
  }
}

inline std::vector<double> random_unit_vector(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(d);
  for (;;) {
    double sq = 0.0;
    for (auto& c : x) {
      c = gauss(rng);
      sq += c * c;
    }
    if (sq > 1e-300) {
      const double norm = std::sqrt(sq);
      for (auto& c : x) c /= norm;
      return x;
    }
  }
}

}  // namespace detail

/// Isotropic random unit vectors for n settings per side in R^d.
inline VectorSettings random_vector_settings(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  if (n == 0 || d == 0) throw InvalidArgument("random_vector_settings: n and d must be positive");
  std::vector<std::vector<double>> u(n);
  std::vector<std::vector<double>> v(n);
  for (auto& x : u) x = detail::random_unit_vector(d, rng);
  for (auto& x : v) x = detail::random_unit_vector(d, rng);
  return {d, std::move(u), std::move(v)};
}

/// Alternates exact block maximization from `start`: Alice's vectors with
/// Bob's fixed, then Bob's with Alice's fixed. The objective never decreases.
/// Stops once a full iteration improves by less than value_tolerance.
inline SeesawRun seesaw_from(const BellCoefficients& coeffs, const VectorSettings& start,
                             const OptimizerConfig& cfg = {}) {
  cfg.validate();
  detail::check_dims(coeffs, start.settings(), "seesaw");
  SeesawRun run{start.u(), start.v(), 0.0, 0, false, {}};
  auto value_of = [&] { return quantum_value_vectors(coeffs, run.settings()); };
  double value = value_of();
  run.trace.push_back(value);
  for (run.iterations = 1; run.iterations <= cfg.max_iterations; ++run.iterations) {
    const double before = value;
    detail::best_response(run.u, run.v, [&](std::size_t j, std::size_t k) { return coeffs(j, k); });
    run.trace.push_back(value_of());
    detail::best_response(run.v, run.u, [&](std::size_t k, std::size_t j) { return coeffs(j, k); });
    value = value_of();
    run.trace.push_back(value);
    if (value - before < cfg.value_tolerance) {
      run.converged = true;
      break;
    }
  }
  if (run.iterations > cfg.max_iterations) run.iterations = cfg.max_iterations;
  run.value = value;
  return run;
}

/// Multistart see-saw over isotropic random starts in R^d.
inline OptimizationResult seesaw(const BellCoefficients& coeffs, std::size_t d, const OptimizerConfig& cfg = {}) {
  cfg.validate();
  if (d == 0) throw InvalidArgument("seesaw: dimension must be at least 1");
  const std::size_t n = coeffs.settings();
  const auto runs = detail::run_restarts<SeesawRun>(cfg, [&](std::size_t i) {
    auto rng = detail::restart_engine(cfg.seed, i);
    return seesaw_from(coeffs, random_vector_settings(n, d, rng), cfg);
  });
  const std::size_t best = detail::best_index(runs);
  OptimizationResult result{runs[best].value, runs[best].settings(), runs[best].iterations, runs[best].converged,
                            best, {}, d};
  for (const auto& r : runs) result.restart_values.push_back(r.value);
  return result;
}

}  // namespace bellsn
