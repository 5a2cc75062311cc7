#pragma once

#include <filesystem>
#include <optional>

#include "hnf/integrate_fire.hpp"
#include "hnf/json_io.hpp"
#include "hnf/kuramoto.hpp"
#include "hnf/regression.hpp"
#include "hnf/slow_phase.hpp"
#include "hnf/sweep.hpp"

namespace hnf {

// Exit codes shared by the CLI.
enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_DERIVE_FAILURE = 2,
    EXIT_MISSING_INPUT = 3,
    EXIT_DIVERGENCE = 4,
};

struct PipelineError : std::runtime_error {
    int exit_code;
    PipelineError(int code, const std::string& what)
        : std::runtime_error(what), exit_code(code) {}
};

// Batch configuration: a "kind" plus per-stage blocks, loaded from a JSON
// file or one of the checked-in presets.
struct PipelineConfig {
    std::string name = "custom";
    std::string kind = "network";  // network | meanfield | if
    Json raw;

    std::optional<NetworkSystem> system;     // network kind
    std::optional<EnsembleConfig> ensemble;  // meanfield kind
    std::optional<IFConfig> ifcfg;           // if kind

    // simulation window
    double T = 1000.0, dt = 0.01, transient = 0.0;
    int record_every = 1;
    std::uint64_t seed = 1;
    double eps_res = 0.1;
    bool full_scale = false;

    std::vector<std::vector<int>> slow_phases;

    static PipelineConfig from_file(const std::string& path);
    static PipelineConfig preset(const std::string& name);
    static std::vector<std::string> preset_names();

    void apply_full_scale();
};

std::filesystem::path preset_dir();

// Stage entry points; each writes artifacts under out and returns the list
// of files it produced. Failures throw PipelineError.
std::vector<std::string> cmd_derive(const PipelineConfig& cfg,
                                    const std::filesystem::path& out);
std::vector<std::string> cmd_simulate(const PipelineConfig& cfg,
                                      const std::filesystem::path& out, int threads = 0);
std::vector<std::string> cmd_recover(const PipelineConfig& cfg,
                                     const std::filesystem::path& out);
std::vector<std::string> cmd_predict(const PipelineConfig& cfg,
                                     const std::filesystem::path& out);
int cmd_pipeline(const PipelineConfig& cfg, const std::filesystem::path& out,
                 int threads = 0);
int cmd_report(const std::filesystem::path& artifacts);

}  // namespace hnf
