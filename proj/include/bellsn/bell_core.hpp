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

// Bipartite correlation Bell expressions.
//
// A Bell expression with n settings per side is an n x n real matrix c; its
// value on a correlation table E is sum_{j,k} c[j][k] * E[j][k], where
// E[j][k] is the expectation of the product of Alice's outcome under
// setting j and Bob's outcome under setting k. Documentation uses 1-based
// setting indices; storage is 0-based row-major.
//
// The canonical instance is the n-setting sign pattern: +1 where
// k <= n + 1 - j, -1 strictly below the anti-diagonal. For n = 2 it is the
// CHSH expression.

#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bellsn/errors.hpp"
#include "bellsn/format.hpp"

namespace bellsn {

namespace detail {

// Neumaier-compensated accumulator. Exact whenever every partial sum is
// representable, and close to correctly rounded otherwise.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

/// Dense n x n real matrix, row-major, 0-based.
class SquareMatrix {
 public:
  SquareMatrix() = default;

  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  /// Builds from nested rows; every row must have exactly rows.size() entries.
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    SquareMatrix m(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[j].size() != rows.size()) {
        throw InvalidArgument("matrix row " + std::to_string(j + 1) + " has " +
                              std::to_string(rows[j].size()) + " entries, expected " +
                              std::to_string(rows.size()));
      }
      for (std::size_t k = 0; k < rows.size(); ++k) m(j, k) = rows[j][k];
    }
    return m;
  }

  std::size_t size() const { return n_; }

  double& operator()(std::size_t j, std::size_t k) { return data_[j * n_ + k]; }
  double operator()(std::size_t j, std::size_t k) const { return data_[j * n_ + k]; }

  std::span<const double> row(std::size_t j) const { return {data_.data() + j * n_, n_}; }
  std::span<const double> values() const { return data_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Plain-text matrix format: first line "n", then n lines of n
/// space-separated decimal numbers.
inline void write_matrix_text(std::ostream& out, const SquareMatrix& m) {
  out << m.size() << '\n';
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k != 0) out << ' ';
      out << format_exact(m(j, k));
    }
    out << '\n';
  }
}

inline std::string to_matrix_text(const SquareMatrix& m) {
  std::ostringstream out;
  write_matrix_text(out, m);
  return out.str();
}

inline SquareMatrix read_matrix_text(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n < 1) {
    throw InvalidArgument("matrix text: expected a positive dimension on the first line");
  }
  SquareMatrix m(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (!(in >> m(j, k))) {
        throw InvalidArgument("matrix text: missing or malformed entry at row " +
                              std::to_string(j + 1) + ", column " + std::to_string(k + 1));
      }
    }
  }
  std::string trailing;
  if (in >> trailing) {
    throw InvalidArgument("matrix text: unexpected trailing token '" + trailing + "'");
  }
  return m;
}

inline SquareMatrix parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_text(in);
}

/// Weights c[j][k] of a correlation Bell expression. Arbitrary real entries.
class BellCoefficients {
 public:
  explicit BellCoefficients(SquareMatrix m) : m_(std::move(m)) {
    if (m_.size() == 0) throw InvalidArgument("Bell coefficients need at least one setting");
  }

  static BellCoefficients from_rows(const std::vector<std::vector<double>>& rows) {
    return BellCoefficients(SquareMatrix::from_rows(rows));
  }

  std::size_t settings() const { return m_.size(); }
  double operator()(std::size_t j, std::size_t k) const { return m_(j, k); }
  const SquareMatrix& matrix() const { return m_; }

  /// True when every entry is an integer of magnitude below 2^31, so
  /// enumeration can accumulate in 64-bit integers.
  bool is_integral() const {
    for (double c : m_.values()) {
      if (!(std::abs(c) < 2147483648.0) || c != std::trunc(c)) return false;
    }
    return true;
  }

  friend bool operator==(const BellCoefficients&, const BellCoefficients&) = default;

 private:
  SquareMatrix m_;
};

/// Correlation table E[j][k] = E(a_j, b_k); entries lie in [-1, 1] up to
/// kCorrelationSlack.
class CorrelationMatrix {
 public:
  static constexpr double kCorrelationSlack = 1e-12;

  explicit CorrelationMatrix(SquareMatrix m) : m_(std::move(m)) {
    if (m_.size() == 0) throw InvalidArgument("correlation matrix needs at least one setting");
    for (std::size_t j = 0; j < m_.size(); ++j) {
      for (std::size_t k = 0; k < m_.size(); ++k) {
        const double e = m_(j, k);
        if (!(std::abs(e) <= 1.0 + kCorrelationSlack)) {
          throw InvalidArgument("correlation entry (" + std::to_string(j + 1) + "," +
                                std::to_string(k + 1) + ") = " + format_exact(e) +
                                " lies outside [-1, 1]");
        }
      }
    }
  }

  static CorrelationMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    return CorrelationMatrix(SquareMatrix::from_rows(rows));
  }

  std::size_t settings() const { return m_.size(); }
  double operator()(std::size_t j, std::size_t k) const { return m_(j, k); }
  const SquareMatrix& matrix() const { return m_; }

 private:
  SquareMatrix m_;
};

/// The n-setting sign pattern: entry (j, k) is +1 iff k <= n + 1 - j
/// (1-based), so row j holds n + 1 - j plus signs.
inline BellCoefficients sn_sign_matrix(std::size_t n) {
  if (n == 0) throw InvalidArgument("sn_sign_matrix: number of settings must be at least 1");
  SquareMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      // 0-based form of k <= n + 1 - j.
      m(j, k) = (j + k <= n - 1) ? 1.0 : -1.0;
    }
  }
  return BellCoefficients(std::move(m));
}

/// sum_{j,k} c[j][k] * E[j][k].
inline double evaluate(const BellCoefficients& coeffs, const CorrelationMatrix& corr) {
  if (coeffs.settings() != corr.settings()) {
    throw InvalidArgument("evaluate: coefficient matrix is " + std::to_string(coeffs.settings()) +
                          "x" + std::to_string(coeffs.settings()) + " but correlation matrix is " +
                          std::to_string(corr.settings()) + "x" + std::to_string(corr.settings()));
  }
  detail::CompensatedSum s;
  const auto c = coeffs.matrix().values();
  const auto e = corr.matrix().values();
  for (std::size_t i = 0; i < c.size(); ++i) s.add(c[i] * e[i]);
  return s.value();
}

}  // namespace bellsn
