#include "bmo/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace bmo {

namespace {

std::size_t line_of(const YAML::Node& node) { return node.Mark().is_null() ? 0 : node.Mark().line + 1; }

/// Typed, line-anchored access to a parsed YAML document.
class Reader {
public:
    explicit Reader(std::string origin) : origin_(std::move(origin)) {}

    [[noreturn]] void fail(const YAML::Node& at, const std::string& message) const
    {
        throw ConfigError(origin_, line_of(at), message);
    }

    void expect_map(const YAML::Node& node, const std::string& context) const
    {
        if (!node.IsMap()) fail(node, context + " must be a mapping");
    }

    void check_keys(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& context) const
    {
        expect_map(node, context);
        for (const auto& kv : node) {
            const std::string key = kv.first.as<std::string>();
            if (!allowed.count(key)) fail(kv.first, "unknown key '" + key + "' in " + context);
        }
    }

    YAML::Node require(const YAML::Node& parent, const std::string& key, const std::string& context) const
    {
        const YAML::Node child = parent[key];
        if (!child) fail(parent, "missing required key '" + key + "' in " + context);
        return child;
    }

    double real(const YAML::Node& node, const std::string& what) const
    {
        if (!node.IsScalar()) fail(node, what + " must be a number");
        try {
            return node.as<double>();
        } catch (const YAML::Exception&) {
            fail(node, what + " must be a number, got '" + node.Scalar() + "'");
        }
    }

    std::uint64_t count(const YAML::Node& node, const std::string& what) const
    {
        if (!node.IsScalar()) fail(node, what + " must be a non-negative integer");
        try {
            return node.as<std::uint64_t>();
        } catch (const YAML::Exception&) {
            fail(node, what + " must be a non-negative integer, got '" + node.Scalar() + "'");
        }
    }

    bool flag(const YAML::Node& node, const std::string& what) const
    {
        try {
            return node.as<bool>();
        } catch (const YAML::Exception&) {
            fail(node, what + " must be true or false");
        }
    }

    std::string text(const YAML::Node& node, const std::string& what) const
    {
        if (!node.IsScalar()) fail(node, what + " must be a string");
        return node.Scalar();
    }

    Vec vec(const YAML::Node& node, const std::string& what) const
    {
        if (!node.IsSequence() || (node.size() != 2 && node.size() != 3))
            fail(node, what + " must be a list of 2 or 3 numbers");
        Vec v(node.size());
        for (std::size_t k = 0; k < node.size(); ++k) v[k] = real(node[k], what);
        return v;
    }

    std::vector<Vec> vec_list(const YAML::Node& node, const std::string& what) const
    {
        if (!node.IsSequence()) fail(node, what + " must be a list of points");
        std::vector<Vec> out;
        for (const auto& item : node) out.push_back(vec(item, what));
        return out;
    }

    const std::string& origin() const { return origin_; }

private:
    std::string origin_;
};

Box parse_bounds(const Reader& rd, const YAML::Node& node)
{
    rd.check_keys(node, {"lower", "upper"}, "field.bounds");
    Box b{rd.vec(rd.require(node, "lower", "field.bounds"), "bounds.lower"),
          rd.vec(rd.require(node, "upper", "field.bounds"), "bounds.upper")};
    try {
        b.validate();
    } catch (const ContractViolation& e) {
        rd.fail(node, e.what());
    }
    return b;
}

SourceSpec parse_source(const Reader& rd, const YAML::Node& node)
{
    rd.check_keys(node, {"intensity", "position", "kappa", "motion"}, "field.sources entry");
    SourceSpec s;
    s.position = rd.vec(rd.require(node, "position", "source"), "source position");
    if (node["intensity"]) s.intensity = rd.real(node["intensity"], "intensity");
    if (node["kappa"]) s.kappa = rd.real(node["kappa"], "kappa");
    if (const YAML::Node m = node["motion"]) {
        rd.check_keys(m, {"type", "at", "to", "velocity"}, "source motion");
        const std::string type = rd.text(rd.require(m, "type", "source motion"), "motion type");
        if (type == "static") {
            s.motion = SourceMotion::fixed_in_place();
        } else if (type == "relocate") {
            s.motion = SourceMotion::relocate(rd.count(rd.require(m, "at", "relocate motion"), "at"),
                                              rd.vec(rd.require(m, "to", "relocate motion"), "to"));
        } else if (type == "linear") {
            s.motion = SourceMotion::linear(rd.vec(rd.require(m, "velocity", "linear motion"), "velocity"));
        } else {
            rd.fail(m["type"], "unknown motion type '" + type + "' (static, relocate, linear)");
        }
    }
    return s;
}

FitnessField parse_field(const Reader& rd, const YAML::Node& node)
{
    rd.expect_map(node, "field");
    const YAML::Node type_node = rd.require(node, "type", "field");
    const std::string type = rd.text(type_node, "field type");
    try {
        if (type == "gaussian_peaks") {
            rd.check_keys(node, {"type", "bounds", "centers", "amplitudes", "sigma"}, "field");
            const Box bounds = parse_bounds(rd, rd.require(node, "bounds", "field"));
            std::vector<Vec> centers = rd.vec_list(rd.require(node, "centers", "field"), "centers");
            std::vector<double> amps;
            if (const YAML::Node a = node["amplitudes"]) {
                if (!a.IsSequence()) rd.fail(a, "amplitudes must be a list of numbers");
                for (const auto& v : a) amps.push_back(rd.real(v, "amplitude"));
            } else {
                amps.assign(centers.size(), 1.0);
            }
            return FitnessField::gaussian_peaks(std::move(centers), std::move(amps),
                                                rd.real(rd.require(node, "sigma", "field"), "sigma"), bounds);
        }
        if (type == "himmelblau") {
            rd.check_keys(node, {"type", "bounds", "offset"}, "field");
            const Box bounds =
                node["bounds"] ? parse_bounds(rd, node["bounds"]) : FitnessField::default_himmelblau_bounds();
            const double offset =
                node["offset"] ? rd.real(node["offset"], "offset") : FitnessField::kHimmelblauOffset;
            return FitnessField::himmelblau(bounds, offset);
        }
        if (type == "point_sources") {
            rd.check_keys(node, {"type", "bounds", "sources"}, "field");
            const Box bounds = parse_bounds(rd, rd.require(node, "bounds", "field"));
            const YAML::Node list = rd.require(node, "sources", "field");
            if (!list.IsSequence()) rd.fail(list, "sources must be a list");
            std::vector<SourceSpec> sources;
            for (const auto& item : list) sources.push_back(parse_source(rd, item));
            return FitnessField::point_sources(std::move(sources), bounds);
        }
    } catch (const ContractViolation& e) {
        rd.fail(node, std::string("invalid field: ") + e.what());
    }
    rd.fail(type_node, "unknown field type '" + type + "' (gaussian_peaks, himmelblau, point_sources)");
}

const std::set<std::string> kParamKeys = {"rho",       "gamma",    "lambda_d",       "step_size",
                                          "n_agents",  "max_iters", "selection_mode", "fitness_eps"};

BmoParams parse_params(const Reader& rd, const YAML::Node& node, double bounds_diagonal)
{
    BmoParams p;
    p.lambda_d = default_lambda_d(bounds_diagonal);
    if (!node) return p;
    rd.check_keys(node, kParamKeys, "params");
    if (node["rho"]) p.rho = rd.real(node["rho"], "rho");
    if (node["gamma"]) p.gamma = rd.real(node["gamma"], "gamma");
    if (node["lambda_d"]) p.lambda_d = rd.real(node["lambda_d"], "lambda_d");
    if (node["step_size"]) p.step_size = rd.real(node["step_size"], "step_size");
    if (node["n_agents"]) p.n_agents = rd.count(node["n_agents"], "n_agents");
    if (node["max_iters"]) p.max_iters = rd.count(node["max_iters"], "max_iters");
    if (node["fitness_eps"]) p.fitness_eps = rd.real(node["fitness_eps"], "fitness_eps");
    if (const YAML::Node m = node["selection_mode"]) {
        const auto mode = parse_selection_mode(rd.text(m, "selection_mode"));
        if (!mode) rd.fail(m, "selection_mode must be 'deterministic' or 'stochastic'");
        p.selection_mode = *mode;
    }
    try {
        p.validate();
    } catch (const ContractViolation& e) {
        rd.fail(node, e.what());
    }
    return p;
}

InitSpec parse_init(const Reader& rd, const YAML::Node& node)
{
    if (!node) return UniformInit{};
    rd.check_keys(node, {"type", "positions"}, "init");
    const std::string type = rd.text(rd.require(node, "type", "init"), "init type");
    if (type == "uniform") return UniformInit{};
    if (type == "explicit") return ExplicitInit{rd.vec_list(rd.require(node, "positions", "init"), "init positions")};
    rd.fail(node["type"], "unknown init type '" + type + "' (uniform, explicit)");
}

AnalysisSpec parse_analysis(const Reader& rd, const YAML::Node& node)
{
    AnalysisSpec a;
    if (!node) return a;
    rd.check_keys(node, {"min_count", "co_location"}, "analysis");
    if (node["min_count"]) a.min_count = rd.count(node["min_count"], "min_count");
    if (const YAML::Node c = node["co_location"]) {
        if (c.IsSequence()) {
            a.co_location = AnalysisSpec::Target::point;
            a.co_location_point = rd.vec(c, "co_location");
        } else {
            const std::string t = rd.text(c, "co_location");
            if (t == "source") a.co_location = AnalysisSpec::Target::source;
            else if (t == "mutual") a.co_location = AnalysisSpec::Target::mutual;
            else rd.fail(c, "co_location must be 'source', 'mutual' or a point");
        }
    }
    return a;
}

std::vector<std::uint64_t> parse_seeds(const Reader& rd, const YAML::Node& node)
{
    if (!node) return {1};
    std::vector<std::uint64_t> seeds;
    if (node.IsScalar()) {
        const std::uint64_t n = rd.count(node, "seeds");
        for (std::uint64_t s = 1; s <= n; ++s) seeds.push_back(s);
    } else if (node.IsSequence()) {
        for (const auto& s : node) seeds.push_back(rd.count(s, "seed"));
    } else {
        rd.check_keys(node, {"count", "first"}, "seeds");
        const std::uint64_t n = rd.count(rd.require(node, "count", "seeds"), "seeds.count");
        const std::uint64_t first = node["first"] ? rd.count(node["first"], "seeds.first") : 1;
        for (std::uint64_t s = 0; s < n; ++s) seeds.push_back(first + s);
    }
    if (seeds.empty()) rd.fail(node, "at least one seed is required");
    return seeds;
}

OutputSpec parse_output(const Reader& rd, const YAML::Node& node)
{
    OutputSpec o;
    if (!node) return o;
    rd.check_keys(node, {"dir", "trace", "summary", "svg"}, "output");
    if (node["dir"]) o.dir = rd.text(node["dir"], "output.dir");
    if (node["trace"]) o.trace = rd.flag(node["trace"], "output.trace");
    if (node["summary"]) o.summary = rd.flag(node["summary"], "output.summary");
    if (node["svg"]) o.svg = rd.flag(node["svg"], "output.svg");
    return o;
}

bool is_param_key(const std::string& name) { return kParamKeys.count(name) > 0; }

}  // namespace

ConfigError::ConfigError(const std::string& origin, std::size_t line, const std::string& message)
    : std::runtime_error(origin + ":" + std::to_string(line) + ": " + message), line_(line)
{
}

const std::vector<std::string>& sweepable_parameters()
{
    static const std::vector<std::string> names = {"rho",         "gamma",      "lambda_d",     "step_size",
                                                   "n_agents",    "max_iters",  "fitness_eps", "sensor_sigma",
                                                   "capture_radius"};
    return names;
}

Scenario with_parameter(Scenario s, const std::string& name, double value)
{
    if (name == "rho") s.params.rho = value;
    else if (name == "gamma") s.params.gamma = value;
    else if (name == "lambda_d") s.params.lambda_d = value;
    else if (name == "step_size") s.params.step_size = value;
    else if (name == "n_agents") s.params.n_agents = static_cast<std::size_t>(value);
    else if (name == "max_iters") s.params.max_iters = static_cast<std::size_t>(value);
    else if (name == "fitness_eps") s.params.fitness_eps = value;
    else if (name == "sensor_sigma") s.sensor_sigma = value;
    else if (name == "capture_radius") s.capture_radius = value;
    else throw ContractViolation("not a sweepable parameter: " + name);
    return s;
}

ExperimentConfig parse_config(std::string_view text, std::string origin)
{
    const Reader rd(origin);
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError(origin, e.mark.line + 1, "syntax error: " + e.msg);
    }
    if (!root.IsMap()) throw ConfigError(origin, 1, "config must be a mapping");

    rd.check_keys(root,
                  {"schema_version", "name", "field", "params", "sensor_sigma", "capture_radius", "init",
                   "analysis", "seeds", "sweep", "output"},
                  "config");
    const YAML::Node version = rd.require(root, "schema_version", "config");
    if (rd.count(version, "schema_version") != ExperimentConfig::kSchemaVersion)
        rd.fail(version, "unsupported schema_version (expected " +
                             std::to_string(ExperimentConfig::kSchemaVersion) + ")");

    ExperimentConfig cfg{Scenario{.name = root["name"] ? rd.text(root["name"], "name") : "unnamed",
                                  .field = parse_field(rd, rd.require(root, "field", "config")),
                                  .params = {}}};
    cfg.source = std::string(text);
    cfg.origin = origin;

    cfg.scenario.params = parse_params(rd, root["params"], cfg.scenario.field.bounds().diagonal());
    if (root["sensor_sigma"]) cfg.scenario.sensor_sigma = rd.real(root["sensor_sigma"], "sensor_sigma");
    if (root["capture_radius"]) cfg.scenario.capture_radius = rd.real(root["capture_radius"], "capture_radius");
    cfg.scenario.init = parse_init(rd, root["init"]);
    try {
        cfg.scenario.validate();
    } catch (const ContractViolation& e) {
        rd.fail(root, e.what());
    }

    cfg.analysis = parse_analysis(rd, root["analysis"]);
    if (cfg.analysis.co_location == AnalysisSpec::Target::point &&
        cfg.analysis.co_location_point.size() != cfg.scenario.field.dimension())
        rd.fail(root["analysis"]["co_location"], "co_location point dimension does not match the field");
    cfg.seeds = parse_seeds(rd, root["seeds"]);
    cfg.output = parse_output(rd, root["output"]);

    if (const YAML::Node sw = root["sweep"]) {
        rd.check_keys(sw, {"parameter", "values"}, "sweep");
        SweepAxis axis;
        const YAML::Node pname = rd.require(sw, "parameter", "sweep");
        axis.parameter = rd.text(pname, "sweep.parameter");
        const auto& names = sweepable_parameters();
        if (std::find(names.begin(), names.end(), axis.parameter) == names.end())
            rd.fail(pname, "sweep parameter '" + axis.parameter + "' is not a BmoParams or Scenario field");
        const YAML::Node values = rd.require(sw, "values", "sweep");
        if (!values.IsSequence() || values.size() == 0) rd.fail(values, "sweep.values must be a non-empty list");
        for (const auto& v : values) {
            axis.values.push_back(rd.real(v, "sweep value"));
            try {
                with_parameter(cfg.scenario, axis.parameter, axis.values.back()).validate();
            } catch (const ContractViolation& e) {
                rd.fail(v, std::string("sweep value rejected: ") + e.what());
            }
        }
        cfg.sweep = std::move(axis);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string(), 0, "cannot read config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

Scenario ExperimentConfig::scenario_for(std::uint64_t seed, std::optional<std::size_t> sweep_index) const
{
    Scenario s = scenario;
    if (sweep_index) {
        if (!sweep || *sweep_index >= sweep->values.size()) throw ContractViolation("sweep index out of range");
        s = with_parameter(std::move(s), sweep->parameter, sweep->values[*sweep_index]);
    }
    s.params.seed = seed;
    return s;
}

std::string ExperimentConfig::single_run_config(std::uint64_t seed, std::optional<std::size_t> sweep_index) const
{
    YAML::Node root = YAML::Clone(YAML::Load(source));
    if (sweep_index) {
        if (!sweep || *sweep_index >= sweep->values.size()) throw ContractViolation("sweep index out of range");
        const YAML::Node value = YAML::Clone(root["sweep"]["values"][*sweep_index]);
        if (is_param_key(sweep->parameter)) root["params"][sweep->parameter] = value;
        else root[sweep->parameter] = value;
    }
    root.remove("sweep");
    YAML::Node seeds(YAML::NodeType::Sequence);
    seeds.push_back(seed);
    root["seeds"] = seeds;

    YAML::Emitter out;
    out << root;
    std::string text = out.c_str();
    if (text.empty() || text.back() != '\n') text += '\n';
    return text;
}

}  // namespace bmo
