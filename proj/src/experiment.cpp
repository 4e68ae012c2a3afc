#include "bmo/experiment.hpp"

#include <atomic>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "bmo/svg.hpp"

namespace bmo {

namespace {

using nlohmann::json;

template <class T>
json opt(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

json to_json(const RunSummary& s)
{
    json j;
    j["seed"] = s.seed;
    j["sweep"] = s.sweep_parameter ? json{{"parameter", *s.sweep_parameter}, {"value", *s.sweep_value}}
                                   : json(nullptr);
    j["trace"] = s.trace_file;
    if (s.capture) {
        json counts = json::array(), captured = json::array();
        for (std::size_t c : s.capture->counts) counts.push_back(c);
        for (bool c : s.capture->captured) captured.push_back(c);
        j["capture"] = {{"counts", counts}, {"captured", captured}, {"all_captured", s.capture->all_captured}};
    } else {
        j["capture"] = nullptr;
    }
    j["n_clusters"] = s.n_clusters;
    j["uv_final"] = {{"mean", s.uv_mean}, {"min", s.uv_min}, {"max", s.uv_max}, {"std", s.uv_std}};
    j["fitness_final"] = {
        {"mean", s.fitness_mean}, {"min", s.fitness_min}, {"max", s.fitness_max}, {"std", s.fitness_std}};
    j["smoothness"] = {{"mean_turning_angle", opt(s.mean_turning_angle)}, {"mean_path_ratio", opt(s.mean_path_ratio)}};
    j["lmate_switch_rate"] = s.mean_lmate_switch_rate;
    j["co_location_step"] = opt(s.co_location_step);
    return j;
}

struct Job {
    std::uint64_t seed;
    std::optional<std::size_t> sweep_index;
};

}  // namespace

std::optional<CoLocationTarget> resolve_co_location(const Scenario& scenario, const AnalysisSpec& analysis)
{
    switch (analysis.co_location) {
    case AnalysisSpec::Target::mutual:
        return CoLocationTarget{Mutual{}};
    case AnalysisSpec::Target::point:
        return CoLocationTarget{analysis.co_location_point};
    case AnalysisSpec::Target::source: {
        const auto peaks = scenario.field.known_peaks(scenario.params.max_iters);
        if (!peaks || peaks->size() != 1) return std::nullopt;
        return CoLocationTarget{peaks->front()};
    }
    }
    return std::nullopt;
}

RunSummary summarize(const Trace& trace, const Scenario& scenario, const AnalysisSpec& analysis)
{
    RunSummary s;
    s.seed = scenario.params.seed;
    if (trace.records.empty()) return s;

    const std::size_t last = trace.records.back().iter;
    if (const auto peaks = scenario.field.known_peaks(last))
        s.capture = peak_capture(trace, *peaks, scenario.capture_radius, analysis.min_count);

    std::vector<Vec> final_positions;
    for (const auto& a : trace.records.back().agents) final_positions.push_back(a.position);
    s.n_clusters = cluster_detect(final_positions, scenario.capture_radius).size();

    const ConvergenceSeries conv = uv_convergence(trace);
    s.uv_mean = conv.uv.mean.back();
    s.uv_min = conv.uv.min.back();
    s.uv_max = conv.uv.max.back();
    s.uv_std = conv.uv.stddev.back();
    s.fitness_mean = conv.fitness_meas.mean.back();
    s.fitness_min = conv.fitness_meas.min.back();
    s.fitness_max = conv.fitness_meas.max.back();
    s.fitness_std = conv.fitness_meas.stddev.back();

    if (trace.records.size() >= 3) {
        const auto smooth = path_smoothness(trace);
        double angle = 0.0, ratio = 0.0;
        std::size_t with_ratio = 0;
        for (const auto& p : smooth) {
            angle += p.mean_turning_angle;
            if (p.path_ratio) {
                ratio += *p.path_ratio;
                ++with_ratio;
            }
        }
        s.mean_turning_angle = angle / static_cast<double>(smooth.size());
        if (with_ratio) s.mean_path_ratio = ratio / static_cast<double>(with_ratio);
    }

    const auto rates = lmate_variation(trace);
    double rate_sum = 0.0;
    for (double r : rates) rate_sum += r;
    s.mean_lmate_switch_rate = rates.empty() ? 0.0 : rate_sum / static_cast<double>(rates.size());

    if (const auto target = resolve_co_location(scenario, analysis))
        s.co_location_step = co_location_time(trace, scenario.capture_radius, *target);
    return s;
}

std::string summaries_to_json(const std::vector<RunSummary>& runs)
{
    json doc;
    doc["runs"] = json::array();
    for (const auto& r : runs) doc["runs"].push_back(to_json(r));
    return doc.dump(2) + "\n";
}

std::string trace_file_name(const ExperimentConfig& config, std::uint64_t seed,
                            std::optional<std::size_t> sweep_index)
{
    std::string name = "trace_";
    if (sweep_index) name += config.sweep->parameter + "-" + std::to_string(*sweep_index) + "_";
    return name + "seed-" + std::to_string(seed) + ".csv";
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options)
{
    const std::filesystem::path dir = options.out_dir.value_or(config.output.dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw OutputError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));

    std::vector<std::uint64_t> seeds = config.seeds;
    if (options.seed_override) seeds = {*options.seed_override};

    std::vector<Job> jobs;
    const std::size_t n_sweep = config.sweep ? config.sweep->values.size() : 0;
    if (n_sweep == 0) {
        for (auto seed : seeds) jobs.push_back({seed, std::nullopt});
    } else {
        for (std::size_t v = 0; v < n_sweep; ++v)
            for (auto seed : seeds) jobs.push_back({seed, v});
    }

    std::vector<RunSummary> runs(jobs.size());
    std::vector<std::vector<std::filesystem::path>> files(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;

    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            try {
                const Job& job = jobs[j];
                const Scenario scenario = config.scenario_for(job.seed, job.sweep_index);
                Trace trace = simulate(scenario);
                trace.config = config.single_run_config(job.seed, job.sweep_index);

                const std::string name = trace_file_name(config, job.seed, job.sweep_index);
                RunSummary summary = summarize(trace, scenario, config.analysis);
                summary.trace_file = name;
                if (job.sweep_index) {
                    summary.sweep_parameter = config.sweep->parameter;
                    summary.sweep_value = config.sweep->values[*job.sweep_index];
                }
                if (config.output.trace) {
                    write_trace_file(dir / name, trace);
                    files[j].push_back(dir / name);
                }
                if (config.output.svg) {
                    std::filesystem::path svg = dir / name;
                    svg.replace_extension(".svg");
                    write_file_atomic(svg, render_svg(trace));
                    files[j].push_back(svg);
                }
                runs[j] = std::move(summary);
                if (!options.quiet) {
                    std::lock_guard lock(log_mutex);
                    std::cerr << "done " << name << '\n';
                }
            } catch (...) {
                errors[j] = std::current_exception();
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    ExperimentResult result;
    result.runs = std::move(runs);
    for (auto& f : files)
        for (auto& p : f) result.files.push_back(std::move(p));
    if (config.output.summary) {
        const auto path = dir / "summary.json";
        write_file_atomic(path, summaries_to_json(result.runs));
        result.files.push_back(path);
    }
    return result;
}

}  // namespace bmo
