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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bellsn/bellsn.hpp"
#include "bellsn_cli.hpp"

using namespace bellsn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  const char* id;
  const char* title;
  std::function<bool(std::string&)> body;
};

bool lhv_bounds(std::string& detail) {
  const auto t0 = Clock::now();
  const double expected[] = {2, 5, 8, 13, 18, 25, 32, 41, 50, 61, 72};
  bool ok = true;
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto r = lhv_bound_bruteforce(sn_sign_matrix(n));
    ok = ok && r.value == expected[n - 2] && r.value == static_cast<double>(lhv_bound_closed_form(n));
    ok = ok && strategy_value(sn_sign_matrix(n), r.witness) == r.value;
  }
  for (std::size_t n = 13; n <= 24; ++n) {
    const auto r = lhv_bound_fast(sn_sign_matrix(n));
    ok = ok && r.value == static_cast<double>(lhv_bound_closed_form(n));
  }
  const double elapsed = seconds_since(t0);
  detail = "brute n=2..12, fast n=13..24 in " + format_sig15(std::round(elapsed * 100) / 100) + " s (< 60 s)";
  return ok && elapsed < 60.0;
}

bool quantum_maximum(std::string& detail) {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 100; ++n) {
    const double direct = quantum_value_coplanar(sn_sign_matrix(n), paper_settings(n));
    const double closed = quantum_max_closed_form(n);
    worst = std::max(worst, std::abs(direct - closed) / closed);
  }
  const bool anchors = std::abs(quantum_value_coplanar(sn_sign_matrix(2), paper_settings(2)) - 2 * std::sqrt(2.0)) <
                           1e-12 &&
                       std::abs(violation_ratio(2).ratio - std::sqrt(2.0)) < 1e-12 &&
                       std::abs(quantum_value_coplanar(sn_sign_matrix(3), paper_settings(3)) - 6.0) < 1e-12;
  detail = "max relative error n=2..100: " + format_sig15(worst) + " (< 1e-12); anchors 2*sqrt(2), 6";
  return worst < 1e-12 && anchors;
}

bool violation_everywhere(std::string& detail) {
  double margin = 1e300;
  for (std::size_t n = 2; n <= 200; ++n) margin = std::min(margin, violation_ratio(n).ratio - 1.0);
  detail = "min ratio - 1 over n=2..200: " + format_sig15(margin) + " (>= 1e-9)";
  return margin >= 1e-9;
}

bool asymptote(std::string& detail) {
  const double dev = std::abs(violation_ratio(10000).ratio - asymptotic_ratio());
  bool parity = true;
  for (std::size_t n = 2; n <= 200; ++n) {
    const double r = violation_ratio(n).ratio;
    parity = parity && (n % 2 == 0 ? r > asymptotic_ratio() : r < asymptotic_ratio());
  }
  detail = "|ratio(10000) - 4/pi| = " + format_sig15(dev) + " (< 1e-7); parity shape n=2..200 " +
           (parity ? "holds" : "broken");
  return dev < 1e-7 && parity;
}

bool optimizer_rediscovery(std::string& detail) {
  const auto t0 = Clock::now();
  OptimizerConfig cfg;
  cfg.restarts = 100;
  cfg.seed = 20260101;
  double worst = 0.0;
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto c = sn_sign_matrix(n);
    const double q = quantum_max_closed_form(n);
    worst = std::max(worst, std::abs(q - optimize_coplanar(c, cfg).best_value));
    worst = std::max(worst, std::abs(q - seesaw(c, 2, cfg).best_value));
    worst = std::max(worst, std::abs(q - seesaw(c, 3, cfg).best_value));
  }
  const double elapsed = seconds_since(t0);
  detail = "worst gap n=2..10 (coplanar, seesaw d=2, d=3): " + format_sig15(worst) + " (< 1e-8) in " +
           format_sig15(std::round(elapsed * 100) / 100) + " s (< 120 s)";
  return worst < 1e-8 && elapsed < 120.0;
}

bool product_saturation(std::string& detail) {
  bool ok = true;
  for (std::size_t n = 2; n <= 12; ++n) {
    ok = ok && product_state_max(sn_sign_matrix(n)) == static_cast<double>(lhv_bound_closed_form(n));
  }
  detail = "product_state_max == floor((n^2+1)/2) exactly for n=2..12";
  return ok;
}

bool property_suites(std::string& detail) {
  const double grad = verify::gradient_vs_finite_difference(7, 50, 2, 6);
  const double decrease = verify::seesaw_worst_decrease(8, 6);
  const std::size_t mismatches = verify::oracle_mismatches(9, 6, 100, {});
  std::ostringstream out;
  std::ostringstream err;
  const int ok_code = cli::run({"verify", "6"}, out, err);
  const int usage_code = cli::run({"verify", "1"}, out, err);
  detail = "gradient relerr " + format_sig15(grad) + " (< 1e-6); seesaw worst decrease " + format_sig15(decrease) +
           "; fast/brute mismatches " + std::to_string(mismatches) + "; verify 6 exit " + std::to_string(ok_code) +
           ", verify 1 exit " + std::to_string(usage_code);
  return grad < 1e-6 && decrease <= 1e-12 && mismatches == 0 && ok_code == 0 && usage_code == 2;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1", "LHV bounds", lhv_bounds},
      {"2", "quantum maximum at optimal settings", quantum_maximum},
      {"3", "violation for all n", violation_everywhere},
      {"4", "asymptotic ratio 4/pi", asymptote},
      {"5", "optimizer rediscovery", optimizer_rediscovery},
      {"6", "product-state saturation", product_saturation},
      {"7", "property suites and verify exit codes", property_suites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %s, %s: %s\n", ok ? "PASS" : "FAIL", c.id, c.title, detail.c_str());
    failed += ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
