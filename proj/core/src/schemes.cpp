#include "d2dnc/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace d2dnc {

const char* scheme_name(SchemeKind k) {
    switch (k) {
        case SchemeKind::Cfg: return "CFG";
        case SchemeKind::Pmp: return "PMP";
        case SchemeKind::FullD2d: return "FULL_D2D";
        case SchemeKind::Ocf: return "OCF";
        case SchemeKind::Fran: return "FRAN";
    }
    return "?";
}

std::optional<SchemeKind> scheme_from_name(const std::string& name) {
    if (name == "CFG" || name == "cfg") return SchemeKind::Cfg;
    if (name == "PMP" || name == "pmp") return SchemeKind::Pmp;
    if (name == "FULL_D2D" || name == "full_d2d") return SchemeKind::FullD2d;
    if (name == "OCF" || name == "ocf") return SchemeKind::Ocf;
    if (name == "FRAN" || name == "fran") return SchemeKind::Fran;
    return std::nullopt;
}

RoundPlan plan_round_cfg(const StateMatrix& state, const Topology& topo,
                         const ErasureModel& erasures, const DelayState& delay) {
    GameContext ctx(state, topo, erasures, delay);
    FormationResult formed = form_coalitions(CoalitionStructure::singletons(state.players()), ctx);

    RoundPlan out;
    out.plan = std::move(formed.evaluation.plan);
    out.coalition_count = formed.structure.coalition_count();
    out.formation = formed.metrics;
    return out;
}

RoundPlan plan_round_pmp(const StateMatrix& state, const ErasureModel& erasures,
                         const DelayState& delay) {
    RoundPlan out;
    const Bits wanting = state.wanting_players();
    if (wanting.none()) return out;

    const auto t = anticipated_completion(delay);
    const Bits critical = critical_set(delay, t, state, wanting);

    const CodingGraph graph =
        build_coding_graph(kBaseStation, wanting, state, [&](int u, int) {
            return target_weight(critical.test(static_cast<std::size_t>(u)), erasures.epsilon());
        });
    const Combination combo = max_weight_combination(graph);
    if (combo.targets.any()) out.plan.entries.push_back({kBaseStation, combo.packets});
    return out;
}

namespace {

/// Ranks players by score (descending, ties to the lower id) and returns the
/// plan of the best-ranked one whose combination targets at least one player.
/// A candidate with nothing useful to encode never transmits; without this a
/// single-transmitter baseline would stall once the top-ranked player's
/// audience is served while remote players still want packets.
RoundPlan best_single_transmitter(const std::vector<std::size_t>& scores, const StateMatrix& state,
                                  const Topology& topo) {
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[static_cast<std::size_t>(a)] >
                                                scores[static_cast<std::size_t>(b)]; });

    const Bits wanting = state.wanting_players();
    for (int u : order) {
        const Bits candidates = topo.neighbors(u) & wanting;
        if (candidates.none()) continue;
        const CodingGraph graph =
            build_coding_graph(u, candidates, state, [](int, int) { return 1.0; });
        const Combination combo = max_weight_combination(graph);
        if (combo.targets.any()) {
            RoundPlan out;
            out.plan.entries.push_back({u, combo.packets});
            return out;
        }
    }
    return {};
}

}  // namespace

RoundPlan plan_round_full_d2d(const StateMatrix& state, const Topology& topo) {
    // Selection pretends full connectivity (largest Has set wins); reception
    // still honors the real coverage.
    if (state.all_finished()) return {};
    std::vector<std::size_t> scores(static_cast<std::size_t>(state.players()));
    for (int u = 0; u < state.players(); ++u)
        scores[static_cast<std::size_t>(u)] = state.packets() - state.wants_count(u);
    return best_single_transmitter(scores, state, topo);
}

RoundPlan plan_round_ocf(const StateMatrix& state, const Topology& topo) {
    const Bits wanting = state.wanting_players();
    if (wanting.none()) return {};
    std::vector<std::size_t> scores(static_cast<std::size_t>(state.players()));
    for (int u = 0; u < state.players(); ++u)
        scores[static_cast<std::size_t>(u)] = topo.neighbors(u).intersection_count(wanting) +
                                              (state.packets() - state.wants_count(u));
    return best_single_transmitter(scores, state, topo);
}

RoundPlan plan_round_fran(const StateMatrix& state, const Topology& topo,
                          const ErasureModel& erasures, const DelayState& delay) {
    RoundPlan out;
    const Bits wanting = state.wanting_players();
    if (wanting.none()) return out;

    const auto t = anticipated_completion(delay);
    const Bits critical = critical_set(delay, t, state, wanting);

    // Greedy seed: repeatedly pick the best-gain transmitter whose wanting
    // audience is untouched so far, and claim that audience as a cell. A
    // wanting transmitter's gain is discounted by the listening round it
    // gives up.
    std::vector<Bits> seed_cells;
    Bits claimed(static_cast<std::size_t>(state.players()));
    Bits blocked(static_cast<std::size_t>(state.players()));

    for (;;) {
        int best = -1;
        double best_score = 0.0;

        for (int a = 0; a < state.players(); ++a) {
            if (blocked.test(static_cast<std::size_t>(a))) continue;
            const Bits audience = topo.neighbors(a) & wanting;
            if (audience.none() || audience.intersects(blocked)) continue;

            const CodingGraph graph =
                build_coding_graph(a, audience, state, [&](int u, int) {
                    return target_weight(critical.test(static_cast<std::size_t>(u)),
                                         erasures.sigma(a, u));
                });
            const Combination combo = max_weight_combination(graph);
            if (combo.targets.none()) continue;

            const double gain = static_cast<double>(audience.count()) + combo.weight -
                                (wanting.test(static_cast<std::size_t>(a)) ? 1.0 : 0.0);
            if (best < 0 || gain > best_score + kParetoTolerance) {
                best = a;
                best_score = gain;
            }
        }
        if (best < 0) break;
        Bits cell = (topo.neighbors(best) & wanting) - claimed;
        cell.set(static_cast<std::size_t>(best));
        blocked |= topo.neighbors(best) & wanting;
        blocked.set(static_cast<std::size_t>(best));
        claimed |= cell;
        seed_cells.push_back(std::move(cell));
    }

    // The fog refines the greedy packing with the same local improvement
    // rules the distributed game uses; it simply runs them in one place.
    std::vector<Bits> groups = std::move(seed_cells);
    for (int u = 0; u < state.players(); ++u) {
        if (!claimed.test(static_cast<std::size_t>(u))) {
            Bits single(static_cast<std::size_t>(state.players()));
            single.set(static_cast<std::size_t>(u));
            groups.push_back(std::move(single));
        }
    }
    GameContext ctx(state, topo, erasures, delay);
    FormationResult formed = form_coalitions(
        CoalitionStructure::from_groups(state.players(), std::move(groups)), ctx);
    out.plan = std::move(formed.evaluation.plan);
    return out;
}

RoundPlan plan_round(SchemeKind kind, const StateMatrix& state, const Topology& topo,
                     const ErasureModel& erasures, const DelayState& delay) {
    switch (kind) {
        case SchemeKind::Cfg: return plan_round_cfg(state, topo, erasures, delay);
        case SchemeKind::Pmp: return plan_round_pmp(state, erasures, delay);
        case SchemeKind::FullD2d: return plan_round_full_d2d(state, topo);
        case SchemeKind::Ocf: return plan_round_ocf(state, topo);
        case SchemeKind::Fran: return plan_round_fran(state, topo, erasures, delay);
    }
    return {};
}

}  // namespace d2dnc
