#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "d2dnc/fixture.hpp"
#include "d2dnc/schemes.hpp"

namespace d2dnc {

enum class SigmaRule {
    HalfEpsilon,  // sigma = 0.5 * epsilon on every link
    Factor,       // sigma = sigma_factor * epsilon
    Fixed,        // sigma = sigma_value
};

struct RunConfig {
    int players = 60;
    int packets = 30;
    double epsilon = 0.25;
    SigmaRule sigma_rule = SigmaRule::HalfEpsilon;
    double sigma_factor = 0.5;
    double sigma_value = 0.0;
    double connectivity = 0.4;
    double side_meters = 500.0;
    SchemeKind scheme = SchemeKind::Cfg;
    int episodes = 200;
    std::uint64_t seed = 42;
    int max_rounds = 0;  // 0: use 50*(players+packets)
    int threads = 0;     // 0: hardware concurrency

    double sigma() const;
    int effective_max_rounds() const { return max_rounds > 0 ? max_rounds : 50 * (players + packets); }
};

struct EpisodeResult {
    int completion_time = 0;          // rounds until every Wants set is empty
    double mean_finish_round = 0.0;   // mean over players of their individual completion round
    double anticipated_norm = 0.0;    // max over players of the final anticipated completion
    std::vector<int> finish_round;    // per player: first round after which its Wants set is empty
    std::vector<long long> final_delay;
    std::vector<double> final_anticipated;
    std::vector<std::size_t> per_round_coalitions;
    int merge_rules = 0;
    int split_rules = 0;
    std::size_t first_round_coalitions = 0;
    int first_round_rules = 0;
    double overhead_messages = 0.0;  // N * (2*mean degree + mean rules per round)
};

/// Optional replacements for the random instance: a fixed network and/or a
/// pinned per-round schedule that bypasses the scheme planner.
struct EpisodeOverride {
    std::optional<Fixture> fixture;
    std::optional<std::vector<TransmissionPlan>> schedule;
};

/// Runs one recovery episode: plan, draw erasures, apply decodable receptions,
/// accumulate delay, repeat until every Wants set is empty. Deterministic
/// given (config.seed, episode_index). Throws MAX_ROUNDS_EXCEEDED when the
/// safety cap is hit.
EpisodeResult run_episode(const RunConfig& config, std::uint64_t episode_index,
                          const EpisodeOverride& override_ = {});

struct SweepPoint {
    double grid_value = 0.0;
    RunConfig config;
};

struct SweepRow {
    double grid_value = 0.0;
    SchemeKind scheme = SchemeKind::Cfg;
    // Completion is reported as the average individual completion time: the
    // mean over players of the round in which each player's Wants set
    // empties, averaged over episodes. The episode length (rounds until
    // everyone finishes) is reported alongside.
    double mean_completion = 0.0;
    double std_completion = 0.0;
    double mean_rounds = 0.0;
    double mean_coalitions = 0.0;        // per-round mean, averaged over episodes
    double mean_rules = 0.0;             // merge+split per episode
    double mean_first_coalitions = 0.0;  // round-1 structure size
    double mean_first_rules = 0.0;       // round-1 merge+split rules
    int episodes = 0;
    std::uint64_t seed = 0;
};

/// Runs every grid point with `config.episodes` independent episodes each.
/// Episodes are distributed over a thread pool; the aggregate is keyed by
/// episode index, so the output is identical for any thread count.
std::vector<SweepRow> run_sweep(const std::vector<SweepPoint>& grid, int threads = 0);

}  // namespace d2dnc
