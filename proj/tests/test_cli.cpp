#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = BMO_CONFIG_DIR;

struct Result {
    int code;
    std::string out, err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("bmo_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Result bmo(const std::string& args, const fs::path& work)
{
    const fs::path out = work / "stdout.txt", err = work / "stderr.txt";
    const std::string cmd =
        std::string("\"") + BMO_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::size_t count_files(const fs::path& dir, const std::string& ext)
{
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ext;
    return n;
}

const std::string kSmall = R"(schema_version: 1
name: small
field:
  type: point_sources
  bounds: {lower: [0, 0], upper: [10, 10]}
  sources:
    - {intensity: 1, position: [5, 5], kappa: 1}
params:
  n_agents: 5
  max_iters: 40
sensor_sigma: 0.01
init: {type: uniform}
seeds: [1, 2, 3]
)";

}  // namespace

TEST_CASE("run: three seeds give three traces and one summary")
{
    const fs::path work = scratch("run");
    write(work / "cfg.yaml", kSmall);
    const Result r = bmo("run \"" + (work / "cfg.yaml").string() + "\" --quiet --out-dir \"" + (work / "out").string() + "\"", work);
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    CHECK(count_files(work / "out", ".csv") == 3);
    CHECK(count_files(work / "out", ".json") == 1);
    for (int s = 1; s <= 3; ++s) CHECK(fs::exists(work / "out" / ("trace_seed-" + std::to_string(s) + ".csv")));

    const auto summary = nlohmann::json::parse(slurp(work / "out" / "summary.json"));
    REQUIRE(summary["runs"].size() == 3);
    CHECK(summary["runs"][1]["seed"] == 2);
    CHECK(summary["runs"][0]["capture"]["counts"].size() == 1);
}

TEST_CASE("run is byte-for-byte reproducible")
{
    const fs::path work = scratch("repro");
    write(work / "cfg.yaml", kSmall);
    const std::string cfg = "\"" + (work / "cfg.yaml").string() + "\" --quiet --out-dir ";
    REQUIRE(bmo("run " + cfg + "\"" + (work / "a").string() + "\"", work).code == 0);
    REQUIRE(bmo("run " + cfg + "\"" + (work / "b").string() + "\"", work).code == 0);
    const std::string first = slurp(work / "a" / "trace_seed-2.csv");
    REQUIRE(bmo("run " + cfg + "\"" + (work / "a").string() + "\"", work).code == 0);
    for (const auto& e : fs::directory_iterator(work / "a"))
        CHECK(slurp(e.path()) == slurp(work / "b" / e.path().filename()));
    CHECK(slurp(work / "a" / "trace_seed-2.csv") == first);
}

TEST_CASE("--seed-override runs a single seed")
{
    const fs::path work = scratch("override");
    write(work / "cfg.yaml", kSmall);
    const Result r = bmo("run \"" + (work / "cfg.yaml").string() + "\" --quiet --seed-override 99 --out-dir \"" +
                             (work / "out").string() + "\"",
                         work);
    REQUIRE(r.code == 0);
    CHECK(count_files(work / "out", ".csv") == 1);
    CHECK(fs::exists(work / "out" / "trace_seed-99.csv"));
}

TEST_CASE("sweep: five values by four seeds give twenty traces")
{
    const fs::path work = scratch("sweep");
    std::string text = kSmall;
    text.replace(text.find("seeds: [1, 2, 3]"), 16,
                 "seeds: 4\nsweep: {parameter: step_size, values: [0.05, 0.1, 0.2, 0.3, 0.5]}");
    write(work / "cfg.yaml", text);
    const Result r = bmo("sweep \"" + (work / "cfg.yaml").string() + "\" --quiet --out-dir \"" + (work / "out").string() + "\"", work);
    REQUIRE(r.code == 0);
    CHECK(count_files(work / "out", ".csv") == 20);
    const auto runs = nlohmann::json::parse(slurp(work / "out" / "summary.json"))["runs"];
    REQUIRE(runs.size() == 20);
    std::set<std::pair<double, int>> keys;
    for (const auto& run : runs) {
        CHECK(run["sweep"]["parameter"] == "step_size");
        keys.insert({run["sweep"]["value"].get<double>(), run["seed"].get<int>()});
    }
    CHECK(keys.size() == 20);
    CHECK(fs::exists(work / "out" / "trace_step_size-4_seed-3.csv"));

    // A config without a sweep section is rejected by `sweep`.
    write(work / "plain.yaml", kSmall);
    CHECK(bmo("sweep \"" + (work / "plain.yaml").string() + "\" --quiet", work).code == 2);
}

TEST_CASE("config errors exit with 2 and name the key")
{
    const fs::path work = scratch("bad");
    write(work / "cfg.yaml", kSmall + "colour: red\n");
    const Result r = bmo("run \"" + (work / "cfg.yaml").string() + "\" --out-dir \"" + (work / "out").string() + "\"", work);
    CHECK(r.code == 2);
    CHECK(r.err.find("colour") != std::string::npos);
    CHECK(r.err.find("cfg.yaml:14") != std::string::npos);
    CHECK_FALSE(fs::exists(work / "out"));

    CHECK(bmo("run \"" + (work / "missing.yaml").string() + "\"", work).code == 2);
    CHECK(bmo("run", work).code == 2);
    CHECK(bmo("frobnicate", work).code == 2);
}

TEST_CASE("unwritable output directory exits with 1")
{
    const fs::path work = scratch("unwritable");
    write(work / "cfg.yaml", kSmall);
    write(work / "blocker", "a file, not a directory");
    const Result r = bmo("run \"" + (work / "cfg.yaml").string() + "\" --quiet --out-dir \"" +
                             (work / "blocker" / "out").string() + "\"",
                         work);
    CHECK(r.code == 1);
    CHECK(r.err.find("output directory") != std::string::npos);
}

TEST_CASE("render and analyze")
{
    const fs::path work = scratch("render");
    write(work / "cfg.yaml", kSmall);
    REQUIRE(bmo("run \"" + (work / "cfg.yaml").string() + "\" --quiet --out-dir \"" + work.string() + "\"", work).code == 0);
    const fs::path trace = work / "trace_seed-1.csv";

    REQUIRE(bmo("render \"" + trace.string() + "\" \"" + (work / "a.svg").string() + "\"", work).code == 0);
    REQUIRE(bmo("render \"" + trace.string() + "\" \"" + (work / "b.svg").string() + "\"", work).code == 0);
    const std::string svg = slurp(work / "a.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg == slurp(work / "b.svg"));

    const Result a = bmo("analyze \"" + trace.string() + "\" \"" + (work / "trace_seed-3.csv").string() + "\"", work);
    REQUIRE(a.code == 0);
    const auto doc = nlohmann::json::parse(a.out);
    REQUIRE(doc["runs"].size() == 2);
    const auto stored = nlohmann::json::parse(slurp(work / "summary.json"))["runs"];
    CHECK(doc["runs"][0]["uv_final"] == stored[0]["uv_final"]);
    CHECK(doc["runs"][1]["co_location_step"] == stored[2]["co_location_step"]);

    CHECK(bmo("render \"" + (work / "nope.csv").string() + "\" \"" + (work / "c.svg").string() + "\"", work).code == 1);
    write(work / "junk.csv", "not a trace\n");
    CHECK(bmo("analyze \"" + (work / "junk.csv").string() + "\"", work).code == 1);
}
