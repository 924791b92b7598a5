// Copyright 2026 The bhclone Authors
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
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace bhclone {

/// Probability over occupation numbers 0..size()-1. `tail_mass` bounds the
/// probability of occupations that were cut off.
struct NumberDistribution {
  std::vector<double> probabilities;
  double tail_mass = 0.0;

  std::size_t size() const { return probabilities.size(); }
  double operator[](std::size_t m) const { return probabilities[m]; }

  double total() const {
    return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  }

  double mean() const {
    double s = 0.0;
    for (std::size_t m = 0; m < probabilities.size(); ++m) s += static_cast<double>(m) * probabilities[m];
    return s;
  }
};

/// Total-variation distance between two distributions; entries missing from
/// the shorter one count as zero.
inline double total_variation(const NumberDistribution& p, const NumberDistribution& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double s = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double a = m < p.size() ? p[m] : 0.0;
    const double b = m < q.size() ? q[m] : 0.0;
    s += std::abs(a - b);
  }
  return 0.5 * s;
}

}  // namespace bhclone
