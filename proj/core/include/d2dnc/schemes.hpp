#pragma once

#include <optional>
#include <string>

#include "d2dnc/game.hpp"

namespace d2dnc {

enum class SchemeKind {
    Cfg,      // merge-and-split coalition formation, multiple transmitters
    Pmp,      // broadcast station holding every packet, one combination/round
    FullD2d,  // single player with the largest Has set transmits
    Ocf,      // single player scored by coverage + Has-set size
    Fran,     // centralized greedy multi-transmitter with disjoint coverages
};

const char* scheme_name(SchemeKind k);
std::optional<SchemeKind> scheme_from_name(const std::string& name);

/// Round plan plus the formation metrics the coalition scheme produces
/// (empty metrics for the other schemes).
struct RoundPlan {
    TransmissionPlan plan;
    std::size_t coalition_count = 0;
    FormationMetrics formation;
};

RoundPlan plan_round_cfg(const StateMatrix& state, const Topology& topo,
                         const ErasureModel& erasures, const DelayState& delay);

RoundPlan plan_round_pmp(const StateMatrix& state, const ErasureModel& erasures,
                         const DelayState& delay);

RoundPlan plan_round_full_d2d(const StateMatrix& state, const Topology& topo);

RoundPlan plan_round_ocf(const StateMatrix& state, const Topology& topo);

RoundPlan plan_round_fran(const StateMatrix& state, const Topology& topo,
                          const ErasureModel& erasures, const DelayState& delay);

RoundPlan plan_round(SchemeKind kind, const StateMatrix& state, const Topology& topo,
                     const ErasureModel& erasures, const DelayState& delay);

}  // namespace d2dnc
