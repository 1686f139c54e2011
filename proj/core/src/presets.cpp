#include "d2dnc/presets.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "d2dnc/errors.hpp"
#include "d2dnc/fixture.hpp"

namespace d2dnc {

namespace {

const std::vector<std::string> kPresets = {
    "fig_players", "fig_packets",     "fig_sigma", "fig_connectivity",
    "fig_coalitions", "table1", "table3",    "example_fig1",
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << body;
}

RunConfig base_config(std::uint64_t seed, int threads) {
    RunConfig c;
    c.seed = seed;
    c.threads = threads;
    return c;
}

std::vector<SweepPoint> cross(const std::vector<double>& grid,
                              const std::vector<SchemeKind>& schemes, const RunConfig& base,
                              void (*apply)(RunConfig&, double)) {
    std::vector<SweepPoint> points;
    for (double g : grid) {
        for (SchemeKind k : schemes) {
            SweepPoint p;
            p.grid_value = g;
            p.config = base;
            p.config.scheme = k;
            apply(p.config, g);
            points.push_back(p);
        }
    }
    return points;
}

const std::vector<SchemeKind> kAllSchemes = {SchemeKind::Cfg, SchemeKind::Pmp, SchemeKind::FullD2d,
                                             SchemeKind::Ocf, SchemeKind::Fran};

}  // namespace

std::vector<std::string> preset_names() { return kPresets; }

std::vector<TransmissionPlan> fig1_replay_schedule() {
    constexpr std::size_t kPackets = 4;
    auto combo = [](std::initializer_list<int> packets) {
        Bits b(kPackets);
        for (int p : packets) b.set(static_cast<std::size_t>(p - 1));
        return b;
    };
    TransmissionPlan round1;
    round1.round = 0;
    round1.entries.push_back({0, combo({3, 4})});  // u1: p3+p4
    round1.entries.push_back({5, combo({1, 4})});  // u6: p1+p4
    TransmissionPlan round2;
    round2.round = 1;
    round2.entries.push_back({0, combo({2, 4})});  // u1: p2+p4
    round2.entries.push_back({3, combo({2})});     // u4: p2
    return {round1, round2};
}

bool is_preset(const std::string& name) {
    return std::find(kPresets.begin(), kPresets.end(), name) != kPresets.end();
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, bool first_round_stats) {
    std::string body =
        "grid_param,scheme,mean_completion,std_completion,mean_coalitions,mean_rules,episodes,seed\n";
    for (const auto& r : rows) {
        const double coal = first_round_stats ? r.mean_first_coalitions : r.mean_coalitions;
        const double rules = first_round_stats ? r.mean_first_rules : r.mean_rules;
        body += fmt(r.grid_value);
        body += ",";
        body += scheme_name(r.scheme);
        body += "," + fmt(r.mean_completion) + "," + fmt(r.std_completion) + "," + fmt(coal) +
                "," + fmt(rules) + "," + std::to_string(r.episodes) + "," + std::to_string(r.seed) +
                "\n";
    }
    return body;
}

PresetOutput run_preset(const std::string& name, const std::string& out_dir,
                        const std::string& fixture_dir, std::uint64_t seed, int threads) {
    PresetOutput out;
    const RunConfig base = base_config(seed, threads);
    const std::string prefix = out_dir.empty() ? name : out_dir + "/" + name;

    if (name == "fig_players") {
        RunConfig c = base;
        c.packets = 30;
        c.epsilon = 0.25;
        c.sigma_rule = SigmaRule::Fixed;
        c.sigma_value = 0.12;
        c.connectivity = 0.4;
        auto points = cross({40, 60, 80, 100, 120}, kAllSchemes, c,
                            [](RunConfig& rc, double g) { rc.players = static_cast<int>(g); });
        write_file(prefix + ".csv", sweep_to_csv(run_sweep(points, threads)));
        out.csv_paths.push_back(prefix + ".csv");
    } else if (name == "fig_packets") {
        RunConfig c = base;
        c.players = 30;
        c.epsilon = 0.25;
        c.sigma_rule = SigmaRule::Fixed;
        c.sigma_value = 0.12;
        c.connectivity = 0.4;
        auto points = cross({10, 20, 30, 40, 50}, kAllSchemes, c,
                            [](RunConfig& rc, double g) { rc.packets = static_cast<int>(g); });
        write_file(prefix + ".csv", sweep_to_csv(run_sweep(points, threads)));
        out.csv_paths.push_back(prefix + ".csv");
    } else if (name == "fig_sigma") {
        RunConfig c = base;
        c.players = 60;
        c.packets = 30;
        c.connectivity = 0.4;
        c.sigma_rule = SigmaRule::Fixed;
        auto points = cross({0.05, 0.10, 0.15, 0.20, 0.25}, kAllSchemes, c,
                            [](RunConfig& rc, double g) {
                                rc.sigma_value = g;
                                rc.epsilon = 2.0 * g;
                            });
        write_file(prefix + ".csv", sweep_to_csv(run_sweep(points, threads)));
        out.csv_paths.push_back(prefix + ".csv");
    } else if (name == "fig_connectivity") {
        RunConfig c = base;
        c.players = 60;
        c.packets = 30;
        c.epsilon = 0.25;
        c.sigma_rule = SigmaRule::Fixed;
        c.sigma_value = 0.12;
        auto points = cross({0.1, 0.3, 0.5, 0.7, 0.9}, kAllSchemes, c,
                            [](RunConfig& rc, double g) { rc.connectivity = g; });
        write_file(prefix + ".csv", sweep_to_csv(run_sweep(points, threads)));
        out.csv_paths.push_back(prefix + ".csv");
    } else if (name == "fig_coalitions") {
        for (double conn : {0.1, 0.3, 0.6}) {
            RunConfig c = base;
            c.packets = 30;
            c.epsilon = 0.25;
            c.sigma_rule = SigmaRule::Fixed;
            c.sigma_value = 0.12;
            c.connectivity = conn;
            auto points = cross({40, 60, 80, 100, 120, 140, 160}, {SchemeKind::Cfg}, c,
                                [](RunConfig& rc, double g) { rc.players = static_cast<int>(g); });
            char suffix[32];
            std::snprintf(suffix, sizeof suffix, "_c%02d.csv", static_cast<int>(conn * 10 + 0.5));
            write_file(prefix + suffix, sweep_to_csv(run_sweep(points, threads)));
            out.csv_paths.push_back(prefix + suffix);
        }
    } else if (name == "table1") {
        RunConfig c = base;
        c.players = 30;
        c.packets = 20;
        c.epsilon = 0.5;
        c.connectivity = 0.1;
        c.episodes = 500;
        c.sigma_rule = SigmaRule::Factor;
        auto points = cross({0.6, 0.7, 0.9, 1.0}, {SchemeKind::Pmp, SchemeKind::Cfg}, c,
                            [](RunConfig& rc, double g) { rc.sigma_factor = g; });
        write_file(prefix + ".csv", sweep_to_csv(run_sweep(points, threads)));
        out.csv_paths.push_back(prefix + ".csv");
    } else if (name == "table3") {
        RunConfig c = base;
        c.packets = 30;
        c.epsilon = 0.25;
        c.connectivity = 0.1;
        c.episodes = 200;
        auto points = cross({100, 160}, {SchemeKind::Cfg}, c,
                            [](RunConfig& rc, double g) { rc.players = static_cast<int>(g); });
        write_file(prefix + ".csv", sweep_to_csv(run_sweep(points, threads), true));
        out.csv_paths.push_back(prefix + ".csv");
    } else if (name == "example_fig1") {
        // Deterministic replay of the worked example's pinned schedule.
        const Fixture fixture = load_fixture(fixture_dir + "/fig1.fixture");
        RunConfig c = base;
        c.players = fixture.state.players();
        c.packets = fixture.state.packets();
        c.episodes = 1;
        EpisodeOverride override_;
        override_.fixture = fixture;
        override_.schedule = fig1_replay_schedule();
        const EpisodeResult r = run_episode(c, 0, override_);
        SweepRow row;
        row.grid_value = 0.0;
        row.scheme = SchemeKind::Cfg;
        row.mean_completion = r.completion_time;
        row.episodes = 1;
        row.seed = seed;
        write_file(prefix + ".csv", sweep_to_csv({row}));
        out.csv_paths.push_back(prefix + ".csv");
    } else {
        throw Error(ErrorCode::ConfigError, "unknown preset '" + name + "'");
    }
    return out;
}

}  // namespace d2dnc
