#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "d2dnc/config.hpp"
#include "d2dnc/errors.hpp"
#include "d2dnc/fixture.hpp"
#include "d2dnc/presets.hpp"

namespace {

int exit_code_for(d2dnc::ErrorCode c) {
    switch (c) {
        case d2dnc::ErrorCode::ConfigError: return 2;
        case d2dnc::ErrorCode::IoError: return 3;
        default: return 4;
    }
}

std::string default_out_dir() {
    if (const char* env = std::getenv("D2DNC_OUT_DIR")) return env;
    return ".";
}

void print_rows(const std::vector<d2dnc::SweepRow>& rows) {
    std::fputs(d2dnc::sweep_to_csv(rows).c_str(), stdout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cooperative packet recovery simulator for partially connected D2D networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir = default_out_dir();
    std::string preset_name;
    std::string fixture_path;
    std::string fixture_scheme = "CFG";
    int fixture_episodes = 1;
    std::uint64_t preset_seed = 42;
    int threads = 0;

    auto* run = app.add_subcommand("run", "Run one configuration and print a CSV row");
    run->add_option("--config", config_path, "Plain-text config file (key = value lines)");
    run->add_option("--set,-s", sets, "Override a config key, e.g. -s players=40")
        ->take_all();

    auto* preset = app.add_subcommand("preset", "Run a named experiment preset");
    preset->add_option("name", preset_name, "Preset name")->required();
    preset->add_option("--out", out_dir, "Output directory (default $D2DNC_OUT_DIR or .)");
    preset->add_option("--seed", preset_seed, "Master seed");
    preset->add_option("--threads", threads, "Worker threads (0 = hardware)");

    auto* fixture = app.add_subcommand("fixture", "Run episodes on a fixture file");
    fixture->add_option("path", fixture_path, "Fixture file")->required();
    fixture->add_option("--scheme", fixture_scheme, "Scheme: CFG|PMP|FULL_D2D|OCF|FRAN");
    fixture->add_option("--episodes", fixture_episodes, "Episode count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const d2dnc::RunConfig cfg = d2dnc::parse_config(config_path, sets);
            d2dnc::SweepPoint point;
            point.grid_value = 0.0;
            point.config = cfg;
            print_rows(d2dnc::run_sweep({point}, cfg.threads));
        } else if (preset->parsed()) {
            if (!d2dnc::is_preset(preset_name)) {
                std::fprintf(stderr, "unknown preset '%s'; available:", preset_name.c_str());
                for (const auto& p : d2dnc::preset_names()) std::fprintf(stderr, " %s", p.c_str());
                std::fprintf(stderr, "\n");
                return 2;
            }
            const auto out = d2dnc::run_preset(preset_name, out_dir, D2DNC_DATA_DIR, preset_seed,
                                               threads);
            for (const auto& p : out.csv_paths) std::printf("wrote %s\n", p.c_str());
        } else if (fixture->parsed()) {
            const auto kind = d2dnc::scheme_from_name(fixture_scheme);
            if (!kind) {
                std::fprintf(stderr, "unknown scheme '%s'\n", fixture_scheme.c_str());
                return 2;
            }
            const d2dnc::Fixture f = d2dnc::load_fixture(fixture_path);
            d2dnc::RunConfig cfg;
            cfg.players = f.state.players();
            cfg.packets = f.state.packets();
            cfg.epsilon = f.erasures.epsilon();
            cfg.scheme = *kind;
            cfg.episodes = fixture_episodes;

            double mean = 0.0;
            for (int e = 0; e < fixture_episodes; ++e) {
                d2dnc::EpisodeOverride ov;
                ov.fixture = f;
                const auto r = d2dnc::run_episode(cfg, static_cast<std::uint64_t>(e), ov);
                mean += r.completion_time;
            }
            std::printf("scheme=%s episodes=%d mean_completion=%.4f\n",
                        d2dnc::scheme_name(*kind), fixture_episodes, mean / fixture_episodes);
        }
    } catch (const d2dnc::Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", d2dnc::error_code_name(e.code()), e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
