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

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace bellsn::detail {

// Splits [0, count) into at most `threads` contiguous ranges and runs
// fn(begin, end) for each, returning the per-range results in range order.
// The caller reduces them, so the outcome never depends on scheduling.
template <typename Result, typename Fn>
std::vector<Result> map_ranges(std::size_t count, unsigned threads, Fn fn) {
  const std::size_t parts =
      std::max<std::size_t>(1, std::min<std::size_t>(threads == 0 ? 1 : threads, count));
  std::vector<Result> results(parts);
  const std::size_t base = count / parts;
  const std::size_t extra = count % parts;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t begin = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t len = base + (p < extra ? 1 : 0);
    ranges.emplace_back(begin, begin + len);
    begin += len;
  }
  if (parts == 1) {
    results[0] = fn(ranges[0].first, ranges[0].second);
    return results;
  }
  std::vector<std::thread> workers;
  workers.reserve(parts);
  for (std::size_t p = 0; p < parts; ++p) {
    workers.emplace_back([&, p] { results[p] = fn(ranges[p].first, ranges[p].second); });
  }
  for (auto& w : workers) w.join();
  return results;
}

}  // namespace bellsn::detail
