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

// Local-hidden-variable (LHV) maximum of a correlation Bell expression.
//
// An LHV model assigns outcomes a(j, lambda), b(k, lambda) in {-1, +1} that
// depend only on the local setting and a shared hidden variable lambda. Its
// correlations E[j][k] = integral rho(lambda) a(j, lambda) b(k, lambda) form
// the convex hull of the deterministic tables a_j * b_k, and the expression
// is linear in E, so the LHV maximum is attained at a deterministic strategy:
//
//   max over a, b in {-1,+1}^n of  sum_{j,k} c[j][k] a_j b_k.
//
// Three routes compute it:
//   brute-force      every one of the 2^(2n) strategies;
//   column-collapse  max over a of sum_k |sum_j a_j c[j][k]|, since the best
//                    b_k is the sign of its column score;
//   closed-form      floor((n^2 + 1) / 2) for the n-setting sign pattern.
//
// Witness encoding: bit (j - 1) is set iff entry j equals -1. Among all
// maximizers the witness with the smallest a-encoding is reported, and among
// those the smallest b-encoding. The column-collapse route realizes the same
// rule by resolving zero column scores to b_k = +1.

#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bellsn/bell_core.hpp"
#include "bellsn/errors.hpp"
#include "bellsn/format.hpp"
#include "bellsn/parallel.hpp"

namespace bellsn {

/// Sign vector packed as bits: bit i set iff entry i + 1 is -1.
inline std::uint64_t encode_signs(std::span<const int> signs) {
  std::uint64_t enc = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] < 0) enc |= std::uint64_t{1} << i;
  }
  return enc;
}

inline std::vector<int> decode_signs(std::uint64_t enc, std::size_t n) {
  std::vector<int> signs(n);
  for (std::size_t i = 0; i < n; ++i) signs[i] = ((enc >> i) & 1U) ? -1 : 1;
  return signs;
}

/// One deterministic local assignment: Alice outputs a_j, Bob outputs b_k.
class DeterministicStrategy {
 public:
  DeterministicStrategy(std::vector<int> a, std::vector<int> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() != b_.size()) {
      throw InvalidArgument("strategy: a has " + std::to_string(a_.size()) + " entries but b has " +
                            std::to_string(b_.size()));
    }
    if (a_.empty()) throw InvalidArgument("strategy: needs at least one setting");
    for (int s : a_) check_sign(s);
    for (int s : b_) check_sign(s);
  }

  static DeterministicStrategy from_encoding(std::uint64_t a_enc, std::uint64_t b_enc, std::size_t n) {
    return {decode_signs(a_enc, n), decode_signs(b_enc, n)};
  }

  std::size_t settings() const { return a_.size(); }
  std::span<const int> a() const { return a_; }
  std::span<const int> b() const { return b_; }
  std::uint64_t a_encoding() const { return encode_signs(a_); }
  std::uint64_t b_encoding() const { return encode_signs(b_); }

  /// Deterministic correlation table E[j][k] = a_j b_k.
  CorrelationMatrix correlations() const {
    SquareMatrix m(a_.size());
    for (std::size_t j = 0; j < a_.size(); ++j) {
      for (std::size_t k = 0; k < b_.size(); ++k) m(j, k) = a_[j] * b_[k];
    }
    return CorrelationMatrix(std::move(m));
  }

  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;

 private:
  static void check_sign(int s) {
    if (s != 1 && s != -1) throw InvalidArgument("strategy: entries must be +1 or -1");
  }

  std::vector<int> a_;
  std::vector<int> b_;
};

enum class LhvMethod { BruteForce, ColumnCollapse, ClosedForm };

inline std::string_view to_string(LhvMethod m) {
  switch (m) {
    case LhvMethod::BruteForce: return "brute-force";
    case LhvMethod::ColumnCollapse: return "column-collapse";
    case LhvMethod::ClosedForm: return "closed-form";
  }
  return "unknown";
}

struct LhvResult {
  std::size_t n = 0;
  double value = 0.0;
  DeterministicStrategy witness{{1}, {1}};
  LhvMethod method = LhvMethod::BruteForce;
};

/// Single CSV row: n,value,method,a-encoding,b-encoding.
inline std::string to_csv_row(const LhvResult& r) {
  return std::to_string(r.n) + "," + format_sig15(r.value) + "," + std::string(to_string(r.method)) +
         "," + std::to_string(r.witness.a_encoding()) + "," + std::to_string(r.witness.b_encoding());
}

inline constexpr std::string_view kLhvCsvHeader = "n,value,method,a_encoding,b_encoding";

struct EnumerationOptions {
  std::size_t brute_force_max_settings = 12;
  std::size_t fast_max_settings = 24;
  unsigned threads = 1;
};

/// sum_{j,k} c[j][k] a_j b_k. Exact for integer coefficients.
inline double strategy_value(const BellCoefficients& coeffs, const DeterministicStrategy& s) {
  if (coeffs.settings() != s.settings()) {
    throw InvalidArgument("strategy_value: coefficients have " + std::to_string(coeffs.settings()) +
                          " settings but strategy has " + std::to_string(s.settings()));
  }
  detail::CompensatedSum total;
  for (std::size_t j = 0; j < s.settings(); ++j) {
    for (std::size_t k = 0; k < s.settings(); ++k) {
      total.add(coeffs(j, k) * (s.a()[j] * s.b()[k]));
    }
  }
  return total.value();
}

namespace detail {

// Hard ceilings implied by the 64-bit encodings and loop counters.
inline constexpr std::size_t kBruteForceCeiling = 31;
inline constexpr std::size_t kFastCeiling = 62;

template <typename Acc>
struct Candidate {
  Acc value{};
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool valid = false;

  // Larger value wins; ties go to the smaller (a, b) encoding.
  bool beats(const Candidate& other) const {
    if (!other.valid) return valid;
    if (!valid) return false;
    if (value != other.value) return value > other.value;
    if (a != other.a) return a < other.a;
    return b < other.b;
  }
};

template <typename Acc>
std::vector<Acc> coefficient_table(const BellCoefficients& coeffs) {
  const std::size_t n = coeffs.settings();
  std::vector<Acc> c(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) c[j * n + k] = static_cast<Acc>(coeffs(j, k));
  }
  return c;
}

// score_k = sum_j a_j c[j][k] for the sign vector encoded by a_enc.
template <typename Acc>
void column_scores(const std::vector<Acc>& c, std::size_t n, std::uint64_t a_enc, std::vector<Acc>& score) {
  score.assign(n, Acc{});
  for (std::size_t j = 0; j < n; ++j) {
    const bool minus = (a_enc >> j) & 1U;
    for (std::size_t k = 0; k < n; ++k) score[k] += minus ? -c[j * n + k] : c[j * n + k];
  }
}

template <typename Acc>
Candidate<Acc> brute_force_range(const std::vector<Acc>& c, std::size_t n, std::uint64_t a_begin,
                                 std::uint64_t a_end) {
  Candidate<Acc> best;
  std::vector<Acc> score;
  const std::uint64_t b_count = std::uint64_t{1} << n;
  for (std::uint64_t a = a_begin; a < a_end; ++a) {
    column_scores(c, n, a, score);
    for (std::uint64_t b = 0; b < b_count; ++b) {
      Acc v{};
      for (std::size_t k = 0; k < n; ++k) v += ((b >> k) & 1U) ? -score[k] : score[k];
      // Encodings ascend lexicographically, so strict improvement keeps the smallest.
      if (!best.valid || v > best.value) best = {v, a, b, true};
    }
  }
  return best;
}

template <typename Acc>
Acc abs_sum(const std::vector<Acc>& score) {
  Acc v{};
  for (Acc s : score) v += s < Acc{} ? -s : s;
  return v;
}

// Walks Gray-code indices [begin, end); only the a-encoding is tracked.
template <typename Acc>
Candidate<Acc> column_collapse_range(const std::vector<Acc>& c, std::size_t n, std::uint64_t begin,
                                     std::uint64_t end) {
  Candidate<Acc> best;
  if (begin >= end) return best;
  // Floating accumulators are rebuilt periodically to bound drift.
  constexpr std::uint64_t kRefresh = std::numeric_limits<Acc>::is_integer ? 0 : 4096;
  std::vector<Acc> score;
  std::uint64_t a = begin ^ (begin >> 1);
  column_scores(c, n, a, score);
  for (std::uint64_t i = begin;;) {
    const Candidate<Acc> here{abs_sum(score), a, 0, true};
    if (here.beats(best)) best = here;
    if (++i == end) break;
    const auto j = static_cast<std::size_t>(std::countr_zero(i));
    a ^= std::uint64_t{1} << j;
    if (kRefresh != 0 && i % kRefresh == 0) {
      column_scores(c, n, a, score);
    } else {
      const bool minus = (a >> j) & 1U;
      for (std::size_t k = 0; k < n; ++k) {
        const Acc twice = c[j * n + k] + c[j * n + k];
        score[k] += minus ? -twice : twice;
      }
    }
  }
  return best;
}

template <typename Acc>
Candidate<Acc> reduce(const std::vector<Candidate<Acc>>& parts) {
  Candidate<Acc> best;
  for (const auto& p : parts) {
    if (p.beats(best)) best = p;
  }
  return best;
}

template <typename Acc>
Candidate<Acc> run_brute_force(const BellCoefficients& coeffs, unsigned threads) {
  const std::size_t n = coeffs.settings();
  const auto c = coefficient_table<Acc>(coeffs);
  return reduce(map_ranges<Candidate<Acc>>(std::size_t{1} << n, threads, [&](std::size_t lo, std::size_t hi) {
    return brute_force_range<Acc>(c, n, lo, hi);
  }));
}

template <typename Acc>
std::uint64_t run_column_collapse(const BellCoefficients& coeffs, unsigned threads) {
  const std::size_t n = coeffs.settings();
  const auto c = coefficient_table<Acc>(coeffs);
  return reduce(map_ranges<Candidate<Acc>>(std::size_t{1} << n, threads, [&](std::size_t lo, std::size_t hi) {
           return column_collapse_range<Acc>(c, n, lo, hi);
         }))
      .a;
}

// b_k = sign(score_k) with zero resolved to +1.
inline std::uint64_t best_response_b(const BellCoefficients& coeffs, std::uint64_t a_enc) {
  const std::size_t n = coeffs.settings();
  std::uint64_t b = 0;
  for (std::size_t k = 0; k < n; ++k) {
    detail::CompensatedSum score;
    for (std::size_t j = 0; j < n; ++j) score.add(((a_enc >> j) & 1U) ? -coeffs(j, k) : coeffs(j, k));
    if (score.value() < 0.0) b |= std::uint64_t{1} << k;
  }
  return b;
}

inline void check_limit(std::size_t n, std::size_t configured, std::size_t ceiling, std::string_view what,
                        std::string_view alternative) {
  const std::size_t limit = std::min(configured, ceiling);
  if (n > limit) {
    throw ResourceLimit(std::string(what) + ": n = " + std::to_string(n) + " exceeds the limit of " +
                        std::to_string(limit) + " settings" + std::string(alternative));
  }
}

}  // namespace detail

/// Exhaustive maximum over all 2^(2n) deterministic strategies.
inline LhvResult lhv_bound_bruteforce(const BellCoefficients& coeffs, const EnumerationOptions& opt = {}) {
  const std::size_t n = coeffs.settings();
  detail::check_limit(n, opt.brute_force_max_settings, detail::kBruteForceCeiling, "brute-force enumeration",
                      "; use the column-collapse method (lhv_bound_fast) instead");
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  if (coeffs.is_integral()) {
    const auto best = detail::run_brute_force<std::int64_t>(coeffs, opt.threads);
    a = best.a;
    b = best.b;
  } else {
    const auto best = detail::run_brute_force<double>(coeffs, opt.threads);
    a = best.a;
    b = best.b;
  }
  auto witness = DeterministicStrategy::from_encoding(a, b, n);
  const double value = strategy_value(coeffs, witness);
  return {n, value, std::move(witness), LhvMethod::BruteForce};
}

/// max over a of sum_k |sum_j a_j c[j][k]|, 2^n work with Gray-code updates.
inline LhvResult lhv_bound_fast(const BellCoefficients& coeffs, const EnumerationOptions& opt = {}) {
  const std::size_t n = coeffs.settings();
  detail::check_limit(n, opt.fast_max_settings, detail::kFastCeiling, "column-collapse enumeration", "");
  const std::uint64_t a = coeffs.is_integral() ? detail::run_column_collapse<std::int64_t>(coeffs, opt.threads)
                                               : detail::run_column_collapse<double>(coeffs, opt.threads);
  auto witness = DeterministicStrategy::from_encoding(a, detail::best_response_b(coeffs, a), n);
  const double value = strategy_value(coeffs, witness);
  return {n, value, std::move(witness), LhvMethod::ColumnCollapse};
}

/// floor((n^2 + 1) / 2), the LHV maximum of the n-setting sign pattern.
inline std::uint64_t lhv_bound_closed_form(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("lhv_bound_closed_form: number of settings must be at least 1");
  if (n > 4294967295ULL) throw InvalidArgument("lhv_bound_closed_form: n too large for 64-bit arithmetic");
  return (n * n + 1) / 2;
}

/// Closed-form bound together with an attaining strategy for the sign pattern:
/// Alice all +1 (column scores n + 2 - 2k), Bob b_k = sign of that score.
inline LhvResult lhv_result_closed_form(std::size_t n) {
  const auto value = lhv_bound_closed_form(n);
  std::vector<int> a(n, 1);
  std::vector<int> b(n);
  for (std::size_t k = 1; k <= n; ++k) b[k - 1] = (2 * k <= n + 2) ? 1 : -1;
  return {n, static_cast<double>(value), DeterministicStrategy(std::move(a), std::move(b)), LhvMethod::ClosedForm};
}

}  // namespace bellsn
