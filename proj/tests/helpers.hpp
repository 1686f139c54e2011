#pragma once

#include <vector>

#include "d2dnc/engine.hpp"
#include "d2dnc/fixture.hpp"
#include "d2dnc/presets.hpp"
#include "d2dnc/rng.hpp"

namespace testutil {

inline d2dnc::Fixture fig1() { return d2dnc::load_fixture(std::string(D2DNC_DATA_DIR) + "/fig1.fixture"); }

/// Error-free delivery of one plan: every covered non-collided target decodes.
inline void apply_plan(d2dnc::StateMatrix& state, d2dnc::DelayState& delay,
                       const d2dnc::TransmissionPlan& plan, const d2dnc::Topology& topo,
                       const d2dnc::ErasureModel& erasures) {
    const int n = state.players();
    const auto tau = d2dnc::targeted_sets(plan, topo, state);
    const auto sets = d2dnc::collision_and_orphan_sets(plan, topo, n);
    d2dnc::ReceptionOutcomes outcomes;
    for (const auto& e : plan.entries)
        outcomes.delivered.push_back(d2dnc::entry_coverage(e, topo, n));
    const auto inc = d2dnc::round_delay(plan, tau, sets, state, outcomes, topo);
    for (std::size_t a = 0; a < plan.entries.size(); ++a)
        tau[a].for_each([&](std::size_t u) {
            state.receive(static_cast<int>(u), plan.entries[a].combination);
        });
    for (int u = 0; u < n; ++u)
        delay.cumulative[static_cast<std::size_t>(u)] += inc[static_cast<std::size_t>(u)];
}

struct RandomInstance {
    d2dnc::StateMatrix state;
    d2dnc::Topology topology;
    d2dnc::ErasureModel erasures;
};

inline RandomInstance random_instance(d2dnc::Rng& rng, int n, int m, double epsilon, double sigma,
                                      double connectivity = 0.5) {
    RandomInstance inst;
    inst.topology = d2dnc::generate_topology(n, 100.0, connectivity, rng);
    inst.state = d2dnc::init_side_information(n, d2dnc::Frame{m}, epsilon, rng);
    inst.erasures = d2dnc::ErasureModel(n, sigma, epsilon);
    return inst;
}

}  // namespace testutil
