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

#include "bellsn/quantum_singlet.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

using namespace bellsn;

namespace {

constexpr double kPi = std::numbers::pi;

// Oracle: <psi| (a.sigma) x (b.sigma) |psi> for the singlet
// (|01> - |10>)/sqrt(2), analyzers in the x-z plane (real matrices).
using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 spin_along(double angle) {
  const double s = std::sin(angle);
  const double c = std::cos(angle);
  return {{{c, s}, {s, -c}}};  // sin * sigma_x + cos * sigma_z
}

double singlet_expectation(double alpha, double beta) {
  const Mat2 a = spin_along(alpha);
  const Mat2 b = spin_along(beta);
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<double, 4> psi{0.0, r, -r, 0.0};
  double e = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e += psi[i] * a[i / 2][j / 2] * b[i % 2][j % 2] * psi[j];
  return e;
}

double oracle_value(const BellCoefficients& c, const CoplanarSettings& s) {
  double v = 0.0;
  for (std::size_t j = 0; j < c.settings(); ++j)
    for (std::size_t k = 0; k < c.settings(); ++k) v += c(j, k) * singlet_expectation(s.alpha()[j], s.beta()[k]);
  return v;
}

}  // namespace

TEST(singlet_correlation, examples) {
  EXPECT_DOUBLE_EQ(singlet_correlation(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(singlet_correlation(0, kPi), 1.0);
  EXPECT_NEAR(singlet_correlation(0, kPi / 2), 0.0, 1e-16);
}

TEST(singlet_correlation, matches_density_matrix_oracle) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int t = 0; t < 500; ++t) {
    const double a = u(rng);
    const double b = u(rng);
    EXPECT_NEAR(singlet_correlation(a, b), singlet_expectation(a, b), 1e-14);
  }
}

TEST(normalize_angle, half_open_interval) {
  EXPECT_DOUBLE_EQ(normalize_angle(kPi), kPi);
  EXPECT_DOUBLE_EQ(normalize_angle(-kPi), kPi);
  EXPECT_DOUBLE_EQ(normalize_angle(3 * kPi), kPi);
  EXPECT_NEAR(normalize_angle(2 * kPi + 0.25), 0.25, 1e-15);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int t = 0; t < 1000; ++t) {
    const double x = normalize_angle(u(rng));
    EXPECT_GT(x, -kPi);
    EXPECT_LE(x, kPi);
  }
}

TEST(paper_settings, two_settings) {
  const auto s = paper_settings(2);
  EXPECT_NEAR(s.alpha()[0], kPi / 2, 1e-15);
  EXPECT_NEAR(s.alpha()[1], kPi, 1e-15);
  EXPECT_NEAR(s.beta()[0], -kPi / 4, 1e-15);
  EXPECT_NEAR(s.beta()[1], -3 * kPi / 4, 1e-15);
}

TEST(paper_settings, three_settings_normalized) {
  const auto s = paper_settings(3);
  const double alpha[] = {kPi / 3, 2 * kPi / 3, kPi};
  const double beta[] = {-kPi / 3, -2 * kPi / 3, kPi};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(s.alpha()[i], alpha[i], 1e-15);
    EXPECT_NEAR(s.beta()[i], beta[i], 1e-15);
  }
}

TEST(paper_settings, one_setting) {
  const auto s = paper_settings(1);
  EXPECT_NEAR(s.alpha()[0], kPi, 1e-15);
  EXPECT_EQ(s.beta()[0], 0.0);
  EXPECT_THROW(paper_settings(0), InvalidArgument);
}

TEST(coplanar_settings, validation) {
  EXPECT_THROW(CoplanarSettings({0.0}, {0.0, 1.0}), InvalidArgument);
  EXPECT_THROW(CoplanarSettings({}, {}), InvalidArgument);
}

TEST(quantum_value_coplanar, examples) {
  EXPECT_NEAR(quantum_value_coplanar(sn_sign_matrix(2), paper_settings(2)), 2 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(quantum_value_coplanar(sn_sign_matrix(3), paper_settings(3)), 6.0, 1e-14);
  EXPECT_NEAR(quantum_value_coplanar(sn_sign_matrix(2), CoplanarSettings({0, 0}, {0, 0})), -2.0, 1e-15);
  EXPECT_THROW(quantum_value_coplanar(sn_sign_matrix(3), paper_settings(2)), InvalidArgument);
}

TEST(quantum_value_coplanar, matches_oracle_and_evaluate) {
  for (std::size_t n = 1; n <= 30; ++n) {
    const auto c = sn_sign_matrix(n);
    const auto s = paper_settings(n);
    const double v = quantum_value_coplanar(c, s);
    EXPECT_NEAR(v, oracle_value(c, s), 1e-12 * n * n);
    EXPECT_NEAR(v, evaluate(c, s.correlations()), 1e-12 * n * n);
  }
}

TEST(quantum_value_coplanar, closed_form_consistency) {
  for (std::size_t n = 2; n <= 100; ++n) {
    const double direct = quantum_value_coplanar(sn_sign_matrix(n), paper_settings(n));
    const double closed = quantum_max_closed_form(n);
    EXPECT_LT(std::abs(direct - closed), 1e-9) << n;
    EXPECT_LT(std::abs(direct - closed) / closed, 1e-12) << n;
  }
}

TEST(quantum_value_coplanar, global_rotation_invariant) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto c = sn_sign_matrix(n);
    const auto base = paper_settings(n);
    for (int t = 0; t < 5; ++t) {
      const double shift = u(rng);
      auto alpha = base.alpha();
      auto beta = base.beta();
      for (auto& x : alpha) x += shift;
      for (auto& x : beta) x += shift;
      EXPECT_NEAR(quantum_value_coplanar(c, CoplanarSettings(alpha, beta)), quantum_value_coplanar(c, base),
                  1e-12 * static_cast<double>(n));
    }
  }
}

TEST(quantum_max_closed_form, examples) {
  EXPECT_NEAR(quantum_max_closed_form(2), 2.82842712474619, 1e-13);
  EXPECT_NEAR(quantum_max_closed_form(3), 6.0, 1e-14);
  EXPECT_NEAR(quantum_max_closed_form(4), 10.4525037190110, 1e-12);
  EXPECT_NEAR(quantum_max_closed_form(5), 16.1803398874989, 1e-12);
  EXPECT_THROW(quantum_max_closed_form(1), DomainError);
  EXPECT_THROW(quantum_max_closed_form(0), DomainError);
}

TEST(violation_ratio, examples) {
  EXPECT_NEAR(violation_ratio(2).ratio, 1.4142136, 1e-7);
  EXPECT_NEAR(violation_ratio(3).ratio, 1.2, 1e-14);
  EXPECT_NEAR(violation_ratio(4).ratio, 1.3065630, 1e-7);
  const auto r = violation_ratio(7);
  EXPECT_EQ(r.lhv_bound, 25.0);
  EXPECT_NEAR(r.ratio * r.lhv_bound, r.quantum_value, 1e-12 * r.quantum_value);
  EXPECT_EQ(r.lhv_source, ValueSource::ClosedForm);
  EXPECT_THROW(violation_ratio(1), DomainError);
}

TEST(violation_ratio, violated_for_every_n) {
  for (std::size_t n = 2; n <= 200; ++n) EXPECT_GT(violation_ratio(n).ratio, 1.0 + 1e-9) << n;
}

TEST(violation_ratio, parity_oscillation_around_asymptote) {
  for (std::size_t n = 2; n <= 200; ++n) {
    const double r = violation_ratio(n).ratio;
    if (n % 2 == 0) EXPECT_GT(r, asymptotic_ratio()) << n;
    else EXPECT_LT(r, asymptotic_ratio()) << n;
  }
}

TEST(asymptotic_ratio, value_and_convergence) {
  EXPECT_NEAR(asymptotic_ratio(), 1.2732395, 1e-7);
  EXPECT_LT(std::abs(violation_ratio(1000).ratio - asymptotic_ratio()), 1e-5);
  EXPECT_LT(std::abs(violation_ratio(10000).ratio - asymptotic_ratio()), 1e-7);
}

TEST(violation_report, sweep_csv_rows) {
  EXPECT_EQ(to_csv_row(violation_ratio(2)), "2,2,2.82842712474619,1.4142135623731");
  EXPECT_EQ(to_csv_row(violation_ratio(3)), "3,5,6,1.2");
}

TEST(product_state_max, examples) {
  EXPECT_EQ(product_state_max(sn_sign_matrix(3)), 5.0);
  EXPECT_EQ(product_state_max(sn_sign_matrix(2)), 2.0);
  EXPECT_EQ(product_state_max(BellCoefficients(SquareMatrix(2))), 0.0);
}

TEST(product_state_max, saturates_lhv_bound) {
  for (std::size_t n = 2; n <= 12; ++n) {
    EXPECT_EQ(product_state_max(sn_sign_matrix(n)), static_cast<double>(lhv_bound_closed_form(n)));
  }
}

TEST(product_state_max, interior_product_points_do_not_exceed_it) {
  // Random product correlations E[j][k] = x_j y_k with x, y in [-1, 1]^n.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto c = sn_sign_matrix(n);
    const double ceiling = product_state_max(c);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> x(n);
      std::vector<double> y(n);
      for (auto& v : x) v = u(rng);
      for (auto& v : y) v = u(rng);
      SquareMatrix e(n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) e(j, k) = x[j] * y[k];
      EXPECT_LE(evaluate(c, CorrelationMatrix(e)), ceiling + 1e-12);
    }
  }
}
