#include <CLI11.hpp>
#include <iostream>

#include "hnf/pipeline.hpp"

using namespace hnf;

namespace {

PipelineConfig load_config(const std::string& config_path, const std::string& preset,
                           double eps_res, std::uint64_t seed, bool full_scale) {
    PipelineConfig cfg;
    if (!preset.empty())
        cfg = PipelineConfig::preset(preset);
    else if (!config_path.empty())
        cfg = PipelineConfig::from_file(config_path);
    else
        throw PipelineError(EXIT_MISSING_INPUT, "need --config or --preset");
    if (eps_res > 0.0) {
        cfg.eps_res = eps_res;
        if (cfg.system) cfg.system->eps_res = eps_res;
    }
    if (seed != 0) cfg.seed = seed;
    if (full_scale) cfg.apply_full_scale();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"derive-simulate-recover engine for emergent hypernetworks in weakly "
                 "coupled oscillator networks"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir = "artifacts";
    double eps_res = -1.0;
    std::uint64_t seed = 0;
    bool full_scale = false;
    int threads = 0;

    app.add_option("--config", config_path, "path to a system/pipeline JSON config");
    app.add_option("--preset", preset,
                   "built-in preset: ring-sn5, chain-sn6, sixring-sn7, tongue-sn3, "
                   "meanfield-sn10, if-sn9");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "PRNG seed (ensembles)");
    app.add_option("--eps-res", eps_res, "resonance tolerance override");
    app.add_flag("--full-scale", full_scale, "use the full published run durations");
    app.add_option("--threads", threads, "worker cap (also HNF_THREADS)");

    auto* derive = app.add_subcommand("derive", "hypernetwork + coupling functions");
    auto* simulate = app.add_subcommand("simulate", "integrate the configured system");
    auto* recover = app.add_subcommand("recover", "sparse model recovery from trajectories");
    auto* pipeline =
        app.add_subcommand("pipeline", "derive + simulate + recover + predict + index");
    auto* report = app.add_subcommand("report", "plot-ready SVG/CSV from artifacts");
    std::string artifacts_dir;
    report->add_option("dir", artifacts_dir, "artifacts directory (defaults to --out)");
    for (auto* sub : {derive, simulate, recover, pipeline, report}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (report->parsed()) {
            return cmd_report(artifacts_dir.empty() ? out_dir : artifacts_dir);
        }
        const PipelineConfig cfg =
            load_config(config_path, preset, eps_res, seed, full_scale);
        if (derive->parsed()) {
            for (const auto& f : cmd_derive(cfg, out_dir)) std::cout << f << "\n";
            return EXIT_OK;
        }
        if (simulate->parsed()) {
            for (const auto& f : cmd_simulate(cfg, out_dir, threads)) std::cout << f << "\n";
            return EXIT_OK;
        }
        if (recover->parsed()) {
            for (const auto& f : cmd_recover(cfg, out_dir)) std::cout << f << "\n";
            return EXIT_OK;
        }
        if (pipeline->parsed()) return cmd_pipeline(cfg, out_dir, threads);
    } catch (const PipelineError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return err.exit_code;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return EXIT_OK;
}
