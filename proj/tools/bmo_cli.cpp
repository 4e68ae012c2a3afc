// bmo: batch runner for Butterfly Mating Optimization experiments.
//
//   bmo run <config>               ensemble over the config's seeds (and sweep, if any)
//   bmo sweep <config>             same, but the config must define a sweep
//   bmo analyze <trace>...         print run summaries as JSON
//   bmo render <trace> <out.svg>   static path plot
//
// Exit codes: 0 success, 1 runtime failure, 2 config or usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "bmo/config.hpp"
#include "bmo/experiment.hpp"
#include "bmo/simd.hpp"
#include "bmo/svg.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kConfigError = 2;

struct Flags {
    std::string out_dir;
    std::uint64_t seed_override = 0;
    bool quiet = false;
};

int execute(const std::string& config_path, const Flags& flags, bool require_sweep, const CLI::App& cmd)
{
    const bmo::ExperimentConfig cfg = bmo::load_config(config_path);
    if (require_sweep && !cfg.sweep)
        throw bmo::ConfigError(config_path, 0, "sweep requires a 'sweep' section in the config");

    bmo::RunOptions opts;
    if (!flags.out_dir.empty()) opts.out_dir = flags.out_dir;
    if (cmd.get_option("--seed-override")->count()) opts.seed_override = flags.seed_override;
    opts.quiet = flags.quiet;

    const auto result = bmo::run_experiment(cfg, opts);
    if (!flags.quiet)
        std::cerr << result.runs.size() << " runs, " << result.files.size() << " files ("
                  << bmo::simd::to_string(bmo::simd::active_backend()) << " kernels)\n";
    return kOk;
}

int analyze(const std::vector<std::string>& traces)
{
    std::vector<bmo::RunSummary> out;
    for (const auto& path : traces) {
        const bmo::Trace trace = bmo::read_trace_file(path);
        if (trace.config.empty())
            throw std::runtime_error(path + ": trace carries no embedded config; cannot reconstruct its scenario");
        const bmo::ExperimentConfig cfg = bmo::parse_config(trace.config, path + " (embedded config)");
        const bmo::Scenario scenario = cfg.scenario_for(cfg.seeds.front(), std::nullopt);
        bmo::RunSummary s = bmo::summarize(trace, scenario, cfg.analysis);
        s.trace_file = path;
        out.push_back(std::move(s));
    }
    std::cout << bmo::summaries_to_json(out);
    return kOk;
}

int render(const std::string& trace_path, const std::string& svg_path)
{
    const bmo::Trace trace = bmo::read_trace_file(trace_path);
    bmo::write_file_atomic(svg_path, bmo::render_svg(trace));
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Butterfly Mating Optimization experiment runner"};
    app.require_subcommand(1);

    Flags flags;
    std::string config_path;
    std::vector<std::string> traces;
    std::string render_trace, render_out;

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "experiment config (YAML)")->required();
        cmd->add_option("--out-dir", flags.out_dir, "output directory (overrides output.dir)");
        cmd->add_option("--seed-override", flags.seed_override, "run only this seed");
        cmd->add_flag("--quiet", flags.quiet, "suppress progress output");
    };
    CLI::App* run_cmd = app.add_subcommand("run", "run the configured ensemble");
    add_run_flags(run_cmd);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    add_run_flags(sweep_cmd);
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "summarize trace files as JSON");
    analyze_cmd->add_option("traces", traces, "trace files")->required();
    analyze_cmd->add_flag("--quiet", flags.quiet, "accepted for symmetry");
    CLI::App* render_cmd = app.add_subcommand("render", "render a trace as an SVG path plot");
    render_cmd->add_option("trace", render_trace, "trace file")->required();
    render_cmd->add_option("out", render_out, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*run_cmd) return execute(config_path, flags, false, *run_cmd);
        if (*sweep_cmd) return execute(config_path, flags, true, *sweep_cmd);
        if (*analyze_cmd) return analyze(traces);
        if (*render_cmd) return render(render_trace, render_out);
    } catch (const bmo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return kRuntimeFailure;
}
