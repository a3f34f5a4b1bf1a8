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

// Nonparametric comparisons of optimizer runs: the paired Wilcoxon
// signed-rank test and Friedman mean ranks.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace heliopt {

enum class WilcoxonMethod {
  kAuto,    ///< exact for n <= 25 nonzero differences, normal otherwise
  kExact,
  kNormal,  ///< normal approximation with tie and continuity corrections
};

struct WilcoxonResult {
  double statistic = 0.0;  ///< min(W+, W-)
  double w_plus = 0.0;     ///< rank sum of positive differences a - b
  double p_value = 1.0;    ///< two-sided
  std::size_t n = 0;       ///< nonzero differences used
  bool exact = false;
};

inline constexpr std::size_t kWilcoxonExactLimit = 25;

/// Two-sided test on the paired differences a - b. Zero differences are
/// dropped and tied magnitudes share their average rank. The exact null
/// distribution counts every one of the 2^n sign patterns (by dynamic
/// programming over rank sums). Throws ParameterError unless the samples
/// have equal length >= 5 and UndefinedTestError when every difference is
/// zero.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    WilcoxonMethod method = WilcoxonMethod::kAuto);

/// 1-based ranks of the values in ascending order; ties get their mean rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Mean rank of each column of a runs x algorithms cost matrix, ranking the
/// algorithms within each run (1 = lowest cost). Throws ParameterError for
/// fewer than two rows or columns, or ragged rows.
std::vector<double> friedman_ranks(const std::vector<std::vector<double>>& costs);

}  // namespace heliopt
