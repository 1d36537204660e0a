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

// Singlet-state quantum values.
//
// For co-planar analyzers a_j = (sin alpha_j, 0, cos alpha_j) and
// b_k = (sin beta_k, 0, cos beta_k) the singlet correlation is
// E(alpha, beta) = -cos(alpha - beta). The n-setting sign pattern reaches
// 2n cos(pi/2n) / sin(pi/n) at alpha_j = j pi/n, beta_k = (3 - n - 2k) pi/(2n),
// and the violation ratio against floor((n^2 + 1)/2) tends to 4/pi.
//
// Product states only produce factorized correlations E[j][k] = c_j d_k with
// c, d in [-1, 1]^n. A bilinear form over a product of hypercubes peaks at a
// vertex, so the product-state maximum coincides with the LHV maximum.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bellsn/bell_core.hpp"
#include "bellsn/errors.hpp"
#include "bellsn/format.hpp"
#include "bellsn/lhv_bound.hpp"

namespace bellsn {

/// Maps any real angle into (-pi, pi].
inline double normalize_angle(double x) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::remainder(x, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

inline double singlet_correlation(double alpha, double beta) {
  return -std::cos(alpha - beta);
}

/// Measurement angles in the x-z plane, one per setting and side.
class CoplanarSettings {
 public:
  CoplanarSettings(std::vector<double> alpha, std::vector<double> beta)
      : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (alpha_.size() != beta_.size()) {
      throw InvalidArgument("coplanar settings: alpha has " + std::to_string(alpha_.size()) +
                            " angles but beta has " + std::to_string(beta_.size()));
    }
    if (alpha_.empty()) throw InvalidArgument("coplanar settings: need at least one setting");
    for (double& x : alpha_) x = normalize_angle(x);
    for (double& x : beta_) x = normalize_angle(x);
  }

  std::size_t settings() const { return alpha_.size(); }
  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& beta() const { return beta_; }

  CorrelationMatrix correlations() const {
    SquareMatrix m(settings());
    for (std::size_t j = 0; j < settings(); ++j) {
      for (std::size_t k = 0; k < settings(); ++k) m(j, k) = singlet_correlation(alpha_[j], beta_[k]);
    }
    return CorrelationMatrix(std::move(m));
  }

 private:
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

/// alpha_j = j pi/n, beta_k = (3 - n - 2k) pi/(2n), k indexing Bob's settings.
inline CoplanarSettings paper_settings(std::size_t n) {
  if (n == 0) throw InvalidArgument("paper_settings: number of settings must be at least 1");
  const double nd = static_cast<double>(n);
  std::vector<double> alpha(n);
  std::vector<double> beta(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    alpha[j - 1] = jd * std::numbers::pi / nd;
    beta[j - 1] = (3.0 - nd - 2.0 * jd) * std::numbers::pi / (2.0 * nd);
  }
  return {std::move(alpha), std::move(beta)};
}

inline double quantum_value_coplanar(const BellCoefficients& coeffs, const CoplanarSettings& s) {
  if (coeffs.settings() != s.settings()) {
    throw InvalidArgument("quantum_value_coplanar: coefficients have " + std::to_string(coeffs.settings()) +
                          " settings but the angles describe " + std::to_string(s.settings()));
  }
  detail::CompensatedSum total;
  for (std::size_t j = 0; j < s.settings(); ++j) {
    for (std::size_t k = 0; k < s.settings(); ++k) {
      total.add(coeffs(j, k) * singlet_correlation(s.alpha()[j], s.beta()[k]));
    }
  }
  return total.value();
}

/// 2n cos(pi/2n) / sin(pi/n); undefined for n < 2.
inline double quantum_max_closed_form(std::size_t n) {
  if (n < 2) {
    throw DomainError("quantum_max_closed_form: requires n >= 2 (sin(pi/n) vanishes at n = 1)");
  }
  const double nd = static_cast<double>(n);
  return 2.0 * nd * std::cos(std::numbers::pi / (2.0 * nd)) / std::sin(std::numbers::pi / nd);
}

inline constexpr double asymptotic_ratio() { return 4.0 / std::numbers::pi; }

enum class ValueSource { ClosedForm, Enumeration, Optimizer };

inline std::string_view to_string(ValueSource s) {
  switch (s) {
    case ValueSource::ClosedForm: return "closed-form";
    case ValueSource::Enumeration: return "enumeration";
    case ValueSource::Optimizer: return "optimizer";
  }
  return "unknown";
}

struct ViolationReport {
  std::size_t n = 0;
  double lhv_bound = 0.0;
  double quantum_value = 0.0;
  double ratio = 0.0;
  ValueSource lhv_source = ValueSource::ClosedForm;
  ValueSource quantum_source = ValueSource::ClosedForm;
};

inline ViolationReport violation_ratio(std::size_t n) {
  const double quantum = quantum_max_closed_form(n);
  const auto lhv = static_cast<double>(lhv_bound_closed_form(n));
  return {n, lhv, quantum, quantum / lhv, ValueSource::ClosedForm, ValueSource::ClosedForm};
}

inline constexpr std::string_view kSweepCsvHeader = "n,lhv_bound,quantum_max,ratio";

/// "n,lhv_bound,quantum_max,ratio" with 15 significant digits.
inline std::string to_csv_row(const ViolationReport& r) {
  return std::to_string(r.n) + "," + format_sig15(r.lhv_bound) + "," + format_sig15(r.quantum_value) + "," +
         format_sig15(r.ratio);
}

/// Max of sum c[j][k] x_j y_k over x, y in [-1, 1]^n; delegates to the
/// column-collapse LHV bound (vertex optimality of bilinear forms).
inline double product_state_max(const BellCoefficients& coeffs, const EnumerationOptions& opt = {}) {
  return lhv_bound_fast(coeffs, opt).value;
}

}  // namespace bellsn
