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

// Prints the LHV bound, the singlet maximum and their ratio for small n,
// next to the value a seeded see-saw search finds in three dimensions.

#include <cstdio>

#include "bellsn/bellsn.hpp"

int main() {
  bellsn::OptimizerConfig cfg;
  cfg.restarts = 20;
  std::printf("%3s %6s %14s %10s %14s\n", "n", "lhv", "quantum", "ratio", "seesaw(d=3)");
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto report = bellsn::violation_ratio(n);
    const double found = bellsn::seesaw(bellsn::sn_sign_matrix(n), 3, cfg).best_value;
    std::printf("%3zu %6.0f %14.10f %10.7f %14.10f\n", n, report.lhv_bound, report.quantum_value, report.ratio,
                found);
  }
  std::printf("limit 4/pi = %.10f\n", bellsn::asymptotic_ratio());
}
