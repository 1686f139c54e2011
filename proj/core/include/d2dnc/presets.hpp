#pragma once

#include <string>
#include <vector>

#include "d2dnc/engine.hpp"

namespace d2dnc {

/// Named experiment presets:
///   fig_players       completion vs N in {40..120}, M=30, eps=.25, sigma=.12, C=.4
///   fig_packets       completion vs M in {10..50}, N=30, eps=.25, sigma=.12, C=.4
///   fig_sigma         completion vs sigma in {.05...25}, N=60, M=30, eps=2*sigma, C=.4
///   fig_connectivity  completion vs C in {.1...9}, N=60, M=30, eps=.25, sigma=.12
///   fig_coalitions    coalition count vs N in {40..160} for C in {.1,.3,.6} (one CSV per C)
///   table1            completion vs sigma-factor in {.6,.7,.9,1}, N=30, M=20, eps=.5, C=.1
///   table3            round-1 coalition/rule statistics at N in {100,160}, C=.1
///   example_fig1      the six-player worked example, one deterministic episode
std::vector<std::string> preset_names();

bool is_preset(const std::string& name);

struct PresetOutput {
    std::vector<std::string> csv_paths;
};

/// Runs a preset and writes its CSV file(s) under out_dir with the schema
///   grid_param,scheme,mean_completion,std_completion,mean_coalitions,
///   mean_rules,episodes,seed
/// For table3 the coalition/rule columns carry round-1 statistics; everywhere
/// else they are per-round means. Deterministic: same seed, same bytes.
PresetOutput run_preset(const std::string& name, const std::string& out_dir,
                        const std::string& fixture_dir, std::uint64_t seed = 42, int threads = 0);

/// CSV body shared by presets and the CLI `run` verb.
std::string sweep_to_csv(const std::vector<SweepRow>& rows, bool first_round_stats = false);

/// The pinned two-round schedule of the six-player worked example
/// (data/fig1.fixture): round 1 sends p3+p4 from u1 and p1+p4 from u6, round 2
/// sends p2+p4 from u1 and p2 from u4. Used by the example_fig1 preset and the
/// acceptance suite.
std::vector<TransmissionPlan> fig1_replay_schedule();

}  // namespace d2dnc
