#include "d2dnc/engine.hpp"

#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "d2dnc/errors.hpp"

namespace d2dnc {

double RunConfig::sigma() const {
    switch (sigma_rule) {
        case SigmaRule::HalfEpsilon: return 0.5 * epsilon;
        case SigmaRule::Factor: return sigma_factor * epsilon;
        case SigmaRule::Fixed: return sigma_value;
    }
    return 0.0;
}

EpisodeResult run_episode(const RunConfig& config, std::uint64_t episode_index,
                          const EpisodeOverride& override_) {
    EpisodeStreams streams = EpisodeStreams::make(config.seed, episode_index);

    StateMatrix state;
    Topology topo;
    ErasureModel erasures;
    if (override_.fixture) {
        state = override_.fixture->state;
        topo = override_.fixture->topology;
        erasures = override_.fixture->erasures;
    } else {
        topo = generate_topology(config.players, config.side_meters, config.connectivity,
                                 streams.topology);
        state = init_side_information(config.players, Frame{config.packets}, config.epsilon,
                                      streams.state);
        erasures = ErasureModel(config.players, config.sigma(), config.epsilon);
    }
    const int n = state.players();

    const bool pmp = config.scheme == SchemeKind::Pmp && !override_.schedule;
    DelayState delay = DelayState::start(state, topo, erasures, pmp);

    EpisodeResult result;
    result.final_delay.assign(static_cast<std::size_t>(n), 0);
    result.finish_round.assign(static_cast<std::size_t>(n), 0);

    const int max_rounds = config.effective_max_rounds();
    int t = 0;
    while (!state.all_finished()) {
        if (t >= max_rounds)
            throw Error(ErrorCode::MaxRoundsExceeded,
                        "episode " + std::to_string(episode_index) + " still incomplete after " +
                            std::to_string(max_rounds) + " rounds");

        TransmissionPlan plan;
        if (override_.schedule) {
            if (static_cast<std::size_t>(t) < override_.schedule->size())
                plan = (*override_.schedule)[static_cast<std::size_t>(t)];
        } else {
            RoundPlan rp = plan_round(config.scheme, state, topo, erasures, delay);
            plan = std::move(rp.plan);
            if (config.scheme == SchemeKind::Cfg) {
                result.per_round_coalitions.push_back(rp.coalition_count);
                const int rules = rp.formation.merge_rules + rp.formation.split_rules;
                result.merge_rules += rp.formation.merge_rules;
                result.split_rules += rp.formation.split_rules;
                if (t == 0) {
                    result.first_round_coalitions = rp.coalition_count;
                    result.first_round_rules = rules;
                }
            }
        }
        plan.round = t;

        const auto tau = targeted_sets(plan, topo, state);
        const auto sets = collision_and_orphan_sets(plan, topo, n);
        const auto outcomes = draw_outcomes(plan, topo, erasures, n, streams.channel);
        const auto increment = round_delay(plan, tau, sets, state, outcomes, topo);

        // Deliver: a targeted player decodes iff its copy survived the channel
        // (collided players were already excluded from the targeted sets).
        for (std::size_t a = 0; a < plan.entries.size(); ++a) {
            tau[a].for_each([&](std::size_t u) {
                if (outcomes.delivered[a].test(u)) {
                    state.receive(static_cast<int>(u), plan.entries[a].combination);
                    if (state.player_finished(static_cast<int>(u)))
                        result.finish_round[u] = t + 1;
                }
            });
        }

        for (int u = 0; u < n; ++u)
            delay.cumulative[static_cast<std::size_t>(u)] += increment[static_cast<std::size_t>(u)];
        ++t;
        // Acknowledgments are error-free: `state` already is ground truth.
    }

    result.completion_time = t;
    result.final_delay = delay.cumulative;
    result.final_anticipated = anticipated_completion(delay);
    for (double v : result.final_anticipated)
        result.anticipated_norm = std::max(result.anticipated_norm, v);
    for (int r : result.finish_round) result.mean_finish_round += r;
    result.mean_finish_round /= n;

    double mean_degree = 0.0;
    for (int u = 0; u < n; ++u) mean_degree += static_cast<double>(topo.degree(u));
    mean_degree /= n;
    const double mean_rules =
        t > 0 ? static_cast<double>(result.merge_rules + result.split_rules) / t : 0.0;
    result.overhead_messages = n * (2.0 * mean_degree + mean_rules);
    return result;
}

namespace {

struct Accumulator {
    std::vector<EpisodeResult> episodes;
};

}  // namespace

std::vector<SweepRow> run_sweep(const std::vector<SweepPoint>& grid, int threads) {
    if (threads <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        threads = hc > 0 ? static_cast<int>(hc) : 1;
    }

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());

    for (const auto& point : grid) {
        const int episodes = point.config.episodes;
        std::vector<EpisodeResult> results(static_cast<std::size_t>(episodes));
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(episodes));

        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= episodes) return;
                try {
                    results[static_cast<std::size_t>(i)] =
                        run_episode(point.config, static_cast<std::uint64_t>(i));
                } catch (...) {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
        };

        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(threads));
            for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        for (int i = 0; i < episodes; ++i) {
            if (errors[static_cast<std::size_t>(i)]) {
                try {
                    std::rethrow_exception(errors[static_cast<std::size_t>(i)]);
                } catch (const Error& e) {
                    throw Error(e.code(), "grid point " + std::to_string(point.grid_value) +
                                              ", episode " + std::to_string(i) + ": " + e.what());
                }
            }
        }

        SweepRow row;
        row.grid_value = point.grid_value;
        row.scheme = point.config.scheme;
        row.episodes = episodes;
        row.seed = point.config.seed;

        double sum = 0.0, sum_sq = 0.0, rounds = 0.0;
        double coal = 0.0, rules = 0.0, first_coal = 0.0, first_rules = 0.0;
        for (const auto& r : results) {
            sum += r.mean_finish_round;
            sum_sq += r.mean_finish_round * r.mean_finish_round;
            rounds += r.completion_time;
            if (!r.per_round_coalitions.empty()) {
                double c = 0.0;
                for (auto v : r.per_round_coalitions) c += static_cast<double>(v);
                coal += c / static_cast<double>(r.per_round_coalitions.size());
            }
            rules += r.merge_rules + r.split_rules;
            first_coal += static_cast<double>(r.first_round_coalitions);
            first_rules += r.first_round_rules;
        }
        const double mean = sum / episodes;
        row.mean_completion = mean;
        row.mean_rounds = rounds / episodes;
        row.std_completion =
            episodes > 1 ? std::sqrt(std::max(0.0, (sum_sq - episodes * mean * mean) /
                                                      (episodes - 1)))
                         : 0.0;
        row.mean_coalitions = coal / episodes;
        row.mean_rules = rules / episodes;
        row.mean_first_coalitions = first_coal / episodes;
        row.mean_first_rules = first_rules / episodes;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace d2dnc
