#include <benchmark/benchmark.h>

#include "d2dnc/engine.hpp"
#include "d2dnc/game.hpp"

using namespace d2dnc;

namespace {

struct Instance {
    StateMatrix state;
    Topology topo;
    ErasureModel erasures;
    DelayState delay;
};

Instance make_instance(int players, int packets, double epsilon, double connectivity,
                       std::uint64_t seed) {
    EpisodeStreams streams = EpisodeStreams::make(seed, 0);
    Instance inst;
    inst.topo = generate_topology(players, 500.0, connectivity, streams.topology);
    inst.state = init_side_information(players, Frame{packets}, epsilon, streams.state);
    inst.erasures = ErasureModel(players, 0.5 * epsilon, epsilon);
    inst.delay = DelayState::start(inst.state, inst.topo, inst.erasures);
    return inst;
}

CodingGraph broadcast_graph(const Instance& inst) {
    return build_coding_graph(kBaseStation, inst.state.wanting_players(), inst.state,
                              [](int, int) { return 1.0; });
}

}  // namespace

static void BM_CliqueGreedy(benchmark::State& state) {
    const auto inst = make_instance(static_cast<int>(state.range(0)), 30, 0.25, 0.4, 7);
    const auto graph = broadcast_graph(inst);
    for (auto _ : state)
        benchmark::DoNotOptimize(max_weight_combination(graph, CliqueSearch::Greedy));
    state.counters["vertices"] = static_cast<double>(graph.vertices.size());
}
BENCHMARK(BM_CliqueGreedy)->Arg(30)->Arg(60)->Arg(120);

static void BM_CliqueExact(benchmark::State& state) {
    // Small graph so the exact search stays tractable.
    const auto inst = make_instance(6, 5, 0.4, 0.5, 11);
    const auto graph = broadcast_graph(inst);
    for (auto _ : state)
        benchmark::DoNotOptimize(max_weight_combination(graph, CliqueSearch::Exact));
    state.counters["vertices"] = static_cast<double>(graph.vertices.size());
}
BENCHMARK(BM_CliqueExact);

static void BM_FormCoalitions(benchmark::State& state) {
    const auto inst =
        make_instance(static_cast<int>(state.range(0)), 30, 0.25, 0.4, 13);
    for (auto _ : state) {
        GameContext ctx(inst.state, inst.topo, inst.erasures, inst.delay);
        benchmark::DoNotOptimize(
            form_coalitions(CoalitionStructure::singletons(inst.state.players()), ctx));
    }
}
BENCHMARK(BM_FormCoalitions)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_Episode(benchmark::State& state) {
    RunConfig config;
    config.players = static_cast<int>(state.range(0));
    config.packets = 30;
    config.epsilon = 0.25;
    config.connectivity = 0.4;
    config.scheme = static_cast<SchemeKind>(state.range(1));
    std::uint64_t episode = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_episode(config, episode++));
    state.SetLabel(scheme_name(config.scheme));
}
BENCHMARK(BM_Episode)
    ->Args({60, static_cast<int>(SchemeKind::Cfg)})
    ->Args({60, static_cast<int>(SchemeKind::Pmp)})
    ->Args({60, static_cast<int>(SchemeKind::Fran)})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
