#include "d2dnc/delay.hpp"

#include <algorithm>
#include <string>

#include "d2dnc/errors.hpp"

namespace d2dnc {

DelayState DelayState::start(const StateMatrix& state, const Topology& topo,
                             const ErasureModel& erasures, bool broadcast_station) {
    const int n = state.players();
    DelayState d;
    d.cumulative.assign(static_cast<std::size_t>(n), 0);
    d.initial_wants.resize(static_cast<std::size_t>(n));
    d.expected_erasure.resize(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        d.initial_wants[static_cast<std::size_t>(u)] = static_cast<int>(state.wants_count(u));
        d.expected_erasure[static_cast<std::size_t>(u)] =
            broadcast_station ? erasures.epsilon() : erasures.expected_erasure(u, topo);
    }
    return d;
}

std::vector<double> anticipated_completion(const DelayState& delay) {
    const int n = delay.players();
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        const double es = delay.expected_erasure[static_cast<std::size_t>(u)];
        if (es >= 1.0)
            throw Error(ErrorCode::DegenerateErasure,
                        "expected erasure of player " + std::to_string(u) + " is >= 1");
        t[static_cast<std::size_t>(u)] =
            (delay.initial_wants[static_cast<std::size_t>(u)] +
             static_cast<double>(delay.cumulative[static_cast<std::size_t>(u)]) - es) /
            (1.0 - es);
    }
    return t;
}

double overall_completion(const std::vector<double>& t, const StateMatrix& state) {
    double best = 0.0;
    bool found = false;
    for (int u = 0; u < state.players(); ++u) {
        if (state.player_finished(u)) continue;
        best = found ? std::max(best, t[static_cast<std::size_t>(u)]) : t[static_cast<std::size_t>(u)];
        found = true;
    }
    return found ? best : 0.0;
}

ReceptionOutcomes draw_outcomes(const TransmissionPlan& plan, const Topology& topo,
                                const ErasureModel& erasures, int players, Rng& channel) {
    ReceptionOutcomes out;
    out.delivered.reserve(plan.entries.size());

    Bits transmitters(static_cast<std::size_t>(players));
    for (const auto& e : plan.entries)
        if (e.transmitter != kBaseStation) transmitters.set(static_cast<std::size_t>(e.transmitter));

    for (const auto& e : plan.entries) {
        Bits delivered(static_cast<std::size_t>(players));
        const Bits coverage = entry_coverage(e, topo, players);
        // Draw in player order for reproducibility.
        for (int u = 0; u < players; ++u) {
            if (!coverage.test(static_cast<std::size_t>(u))) continue;
            if (transmitters.test(static_cast<std::size_t>(u))) continue;
            const double p_lost =
                e.transmitter == kBaseStation ? erasures.epsilon() : erasures.sigma(e.transmitter, u);
            if (!channel.bernoulli(p_lost)) delivered.set(static_cast<std::size_t>(u));
        }
        out.delivered.push_back(std::move(delivered));
    }
    return out;
}

namespace {

/// Shared skeleton of the sampled and expected increments. `useless_value(a,u)`
/// supplies the contribution of a successful-but-useless reception.
template <typename T, typename UselessFn>
std::vector<T> delay_increments(const TransmissionPlan& plan, const std::vector<Bits>& targets,
                                const CollisionSets& sets, const StateMatrix& state,
                                const std::vector<Bits>& received_or_covered,
                                UselessFn&& useless_value) {
    const int n = state.players();
    std::vector<T> inc(static_cast<std::size_t>(n), T{0});

    Bits transmitters(static_cast<std::size_t>(n));
    for (const auto& e : plan.entries)
        if (e.transmitter != kBaseStation) transmitters.set(static_cast<std::size_t>(e.transmitter));

    Bits targeted(static_cast<std::size_t>(n));
    for (const auto& t : targets) targeted |= t;

    for (int u = 0; u < n; ++u) {
        if (state.player_finished(u)) continue;
        const auto ui = static_cast<std::size_t>(u);
        if (plan.empty()) {
            inc[ui] = T{1};
            continue;
        }
        if (transmitters.test(ui) || sets.collided.test(ui)) {
            inc[ui] = T{1};
            continue;
        }
        // A player out of range of every transmitter receives nothing, and
        // only receptions can cost a delay unit (collided players receive an
        // undecodable aggregate, transmitters forgo listening entirely).
        if (sets.orphaned.test(ui)) continue;
        if (targeted.test(ui)) continue;
        // Covered by exactly one transmitter, combination not useful.
        for (std::size_t a = 0; a < plan.entries.size(); ++a) {
            if (received_or_covered[a].test(ui)) {
                inc[ui] = useless_value(a, u);
                break;
            }
        }
    }
    return inc;
}

}  // namespace

std::vector<int> round_delay(const TransmissionPlan& plan, const std::vector<Bits>& targets,
                             const CollisionSets& sets, const StateMatrix& state,
                             const ReceptionOutcomes& outcomes, const Topology&) {
    return delay_increments<int>(plan, targets, sets, state, outcomes.delivered,
                                 [](std::size_t, int) { return 1; });
}

std::vector<double> expected_round_delay(const TransmissionPlan& plan,
                                         const std::vector<Bits>& targets,
                                         const CollisionSets& sets, const StateMatrix& state,
                                         const ErasureModel& erasures, const Topology& topo) {
    std::vector<Bits> coverage;
    coverage.reserve(plan.entries.size());
    for (const auto& e : plan.entries) coverage.push_back(entry_coverage(e, topo, state.players()));
    return delay_increments<double>(
        plan, targets, sets, state, coverage, [&](std::size_t a, int u) {
            const auto& e = plan.entries[a];
            const double p_lost =
                e.transmitter == kBaseStation ? erasures.epsilon() : erasures.sigma(e.transmitter, u);
            return 1.0 - p_lost;
        });
}

Bits critical_set(const DelayState& delay, const std::vector<double>& current_t,
                  const StateMatrix& state, const Bits& scope) {
    const double t_max = overall_completion(current_t, state);
    Bits out(static_cast<std::size_t>(delay.players()));
    scope.for_each([&](std::size_t u) {
        if (state.player_finished(static_cast<int>(u))) return;
        const double margin = 1.0 / (1.0 - delay.expected_erasure[u]);
        if (current_t[u] + margin >= t_max) out.set(u);
    });
    return out;
}

}  // namespace d2dnc
