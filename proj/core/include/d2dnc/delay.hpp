#pragma once

#include <vector>

#include "d2dnc/coding.hpp"
#include "d2dnc/model.hpp"

namespace d2dnc {

/// Per-player decoding-delay bookkeeping across a recovery phase. The
/// anticipated completion time of player u is
///   (initial_wants[u] + cumulative[u] - E\[sigma_u]) / (1 - E\[sigma_u]),
/// driven entirely by the frozen initial wants and the accumulated delay.
struct DelayState {
    std::vector<long long> cumulative;
    std::vector<int> initial_wants;
    std::vector<double> expected_erasure;

    static DelayState start(const StateMatrix& state, const Topology& topo,
                            const ErasureModel& erasures, bool broadcast_station = false);

    int players() const { return static_cast<int>(cumulative.size()); }
};

/// Anticipated completion time of every player. Throws DEGENERATE_ERASURE if
/// any expected erasure is >= 1.
std::vector<double> anticipated_completion(const DelayState& delay);

/// Infinity norm of the anticipated completion over players that still want
/// packets; finished players are excluded (their formula value can go
/// negative). Returns 0 when everyone is finished.
double overall_completion(const std::vector<double>& t, const StateMatrix& state);

/// Realized per-link outcomes for one round, indexed by plan entry.
/// delivered[a] holds the players that successfully received entry a's
/// transmission (drawn for every in-coverage non-transmitter).
struct ReceptionOutcomes {
    std::vector<Bits> delivered;
};

ReceptionOutcomes draw_outcomes(const TransmissionPlan& plan, const Topology& topo,
                                const ErasureModel& erasures, int players, Rng& channel);

/// Delay increment of one round. Only players with a non-empty Wants set can
/// accrue delay: collided players and wanting transmitters take one unit, as
/// does any player that successfully receives at least one transmission that
/// is not instantly useful to it. Players out of range of every transmitter
/// receive nothing and accrue nothing; an empty plan, however, charges every
/// wanting player.
std::vector<int> round_delay(const TransmissionPlan& plan, const std::vector<Bits>& targets,
                             const CollisionSets& sets, const StateMatrix& state,
                             const ReceptionOutcomes& outcomes, const Topology& topo);

/// Erasure-probability-weighted expectation of round_delay: a covered
/// non-targeted player accrues 1 - sigma(a,u) in expectation, everything else
/// is deterministic.
std::vector<double> expected_round_delay(const TransmissionPlan& plan,
                                         const std::vector<Bits>& targets,
                                         const CollisionSets& sets, const StateMatrix& state,
                                         const ErasureModel& erasures, const Topology& topo);

/// Critical players: wanting members of `scope` whose next-round miss could
/// raise the maximum anticipated completion time, i.e.
///   T_u + 1/(1 - E[sigma_u]) >= max_w T_w  (max over wanting players).
Bits critical_set(const DelayState& delay, const std::vector<double>& current_t,
                  const StateMatrix& state, const Bits& scope);

}  // namespace d2dnc
