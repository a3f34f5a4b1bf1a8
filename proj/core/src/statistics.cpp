// Copyright 2026 The heliopt Authors
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

#include "heliopt/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "heliopt/errors.hpp"

namespace heliopt {

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    WilcoxonMethod method) {
  if (a.size() != b.size()) throw ParameterError("wilcoxon: samples differ in length");
  if (a.size() < 5) throw ParameterError("wilcoxon: need at least 5 pairs");

  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) throw UndefinedTestError("wilcoxon: all differences are zero");

  std::vector<double> magnitudes(diffs.size());
  std::transform(diffs.begin(), diffs.end(), magnitudes.begin(),
                 [](double d) { return std::abs(d); });
  const std::vector<double> ranks = average_ranks(magnitudes);

  WilcoxonResult res;
  res.n = diffs.size();
  double total = 0.0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    total += ranks[i];
    if (diffs[i] > 0.0) res.w_plus += ranks[i];
  }
  res.statistic = std::min(res.w_plus, total - res.w_plus);

  const bool exact = method == WilcoxonMethod::kExact ||
                     (method == WilcoxonMethod::kAuto && res.n <= kWilcoxonExactLimit);
  res.exact = exact;
  if (exact) {
    // Average ranks are multiples of 1/2, so doubled ranks are integers and
    // counts[s] is the number of sign patterns whose doubled W+ equals s.
    std::vector<int> twice(ranks.size());
    std::transform(ranks.begin(), ranks.end(), twice.begin(),
                   [](double r) { return static_cast<int>(std::lround(2.0 * r)); });
    const int max_sum = std::accumulate(twice.begin(), twice.end(), 0);
    std::vector<double> counts(static_cast<std::size_t>(max_sum) + 1, 0.0);
    counts[0] = 1.0;
    int reach = 0;
    for (int r : twice) {
      for (int s = reach; s >= 0; --s) counts[static_cast<std::size_t>(s + r)] += counts[s];
      reach += r;
    }
    const int observed = static_cast<int>(std::lround(2.0 * res.w_plus));
    double lower = 0.0;
    double upper = 0.0;
    for (int s = 0; s <= max_sum; ++s) {
      if (s <= observed) lower += counts[static_cast<std::size_t>(s)];
      if (s >= observed) upper += counts[static_cast<std::size_t>(s)];
    }
    const double patterns = std::ldexp(1.0, static_cast<int>(res.n));
    res.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / patterns);
    return res;
  }

  const double n = static_cast<double>(res.n);
  const double mean = n * (n + 1.0) / 4.0;
  double variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
  std::vector<double> sorted = magnitudes;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    variance -= (t * t * t - t) / 48.0;
    i = j + 1;
  }
  const double dev = res.w_plus - mean;
  const double corrected = std::max(std::abs(dev) - 0.5, 0.0);
  const double z = variance > 0.0 ? corrected / std::sqrt(variance) : 0.0;
  res.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return res;
}

std::vector<double> friedman_ranks(const std::vector<std::vector<double>>& costs) {
  if (costs.size() < 2) throw ParameterError("friedman: need at least 2 runs");
  const std::size_t k = costs.front().size();
  if (k < 2) throw ParameterError("friedman: need at least 2 algorithms");
  std::vector<double> mean(k, 0.0);
  for (const auto& row : costs) {
    if (row.size() != k) throw ParameterError("friedman: ragged cost matrix");
    const std::vector<double> r = average_ranks(row);
    for (std::size_t j = 0; j < k; ++j) mean[j] += r[j];
  }
  for (double& m : mean) m /= static_cast<double>(costs.size());
  return mean;
}

}  // namespace heliopt
