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

// Plain-text artifacts: run series, optimizer traces and campaign summaries.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heliopt/campaign.hpp"
#include "heliopt/experiments.hpp"
#include "heliopt/swarm.hpp"

namespace heliopt {

/// One row per sample: t, angles, desired angles, errors, v1, v2, u1, u2.
void write_run_csv(std::ostream& out, const RunRecord& record);

/// Writes <stem>_outputs.csv, <stem>_errors.csv and <stem>_controls.csv to
/// dir and returns the paths in that order.
std::vector<std::filesystem::path> emit_plot_data(const RunRecord& record,
                                                  const std::filesystem::path& dir,
                                                  const std::string& stem);

/// key = value lines for the scalar fields of a record.
void write_run_summary(std::ostream& out, const RunRecord& record);

/// iteration,best_cost,mean_cost,w
void write_trace_csv(std::ostream& out, std::span<const IterationStats> trace);
std::vector<IterationStats> read_trace_csv(std::istream& in);

/// scenario,algorithm,seed,final_cost,evaluations,best_position. Deterministic given
/// the runs: wall-clock times go to the timing table instead.
void write_campaign_summary(std::ostream& out, const CampaignResult& result);
/// scenario,algorithm,seed,wall_seconds
void write_campaign_timing(std::ostream& out, const CampaignResult& result);

/// Reads a campaign summary back. Traces are left empty; callers attach them
/// from the trace files when needed.
CampaignResult read_campaign_summary(std::istream& in);

/// File name of a campaign trace inside the campaign directory.
std::string trace_file_name(std::string_view scenario, Algorithm algorithm, std::uint64_t seed);

/// Writes summary.csv, timing.csv and one trace per run into dir.
void write_campaign(const CampaignResult& result, const std::filesystem::path& dir);
/// Loads summary.csv and the per-run traces written by write_campaign.
CampaignResult load_campaign(const std::filesystem::path& dir);

}  // namespace heliopt
