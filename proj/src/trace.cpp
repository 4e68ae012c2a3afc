#include "bmo/trace.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bmo {

namespace {

constexpr const char* kMagic = "# bmo-trace 1";

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_real(std::string_view field, std::size_t line_no)
{
    const std::string s(field);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw std::runtime_error("trace line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

std::size_t parse_index(std::string_view field, std::size_t line_no)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw std::runtime_error("trace line " + std::to_string(line_no) + ": bad integer '" + std::string(field) +
                                 "'");
    return v;
}

}  // namespace

std::optional<std::string> Trace::meta(const std::string& key) const
{
    for (const auto& [k, v] : metadata)
        if (k == key) return v;
    return std::nullopt;
}

void Trace::set_meta(const std::string& key, std::string value)
{
    for (auto& [k, v] : metadata) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    metadata.emplace_back(key, std::move(value));
}

std::string format_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trace(std::ostream& os, const Trace& trace)
{
    os << kMagic << '\n';
    for (const auto& [k, v] : trace.metadata) os << "# " << k << ": " << v << '\n';
    if (!trace.config.empty()) {
        std::istringstream lines(trace.config);
        std::string line;
        while (std::getline(lines, line)) os << "#| " << line << '\n';
    }
    os << "iter,agent_id";
    for (std::size_t k = 0; k < trace.dim; ++k) os << ",x" << k;
    os << ",fitness_true,fitness_meas,uv,lmate\n";
    for (const auto& rec : trace.records) {
        for (std::size_t i = 0; i < rec.agents.size(); ++i) {
            const auto& a = rec.agents[i];
            os << rec.iter << ',' << i;
            for (std::size_t k = 0; k < trace.dim; ++k) os << ',' << format_real(a.position[k]);
            os << ',' << format_real(a.fitness_true) << ',' << format_real(a.fitness_meas) << ','
               << format_real(a.uv) << ',';
            if (a.lmate) os << *a.lmate;
            os << '\n';
        }
    }
}

Trace read_trace(std::istream& is)
{
    Trace trace;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(is, line) || line != kMagic) throw std::runtime_error("not a bmo trace (missing header)");
    ++line_no;

    bool have_header = false;
    std::string config;
    while (std::getline(is, line)) {
        ++line_no;
        if (!have_header) {
            if (line.rfind("#| ", 0) == 0) {
                config += line.substr(3);
                config += '\n';
                continue;
            }
            if (line.rfind("# ", 0) == 0) {
                const std::size_t colon = line.find(": ", 2);
                if (colon == std::string::npos)
                    throw std::runtime_error("trace line " + std::to_string(line_no) + ": malformed metadata");
                trace.metadata.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
                continue;
            }
            const auto cols = split(line, ',');
            if (cols.size() < 8 || cols[0] != "iter" || cols[1] != "agent_id")
                throw std::runtime_error("trace line " + std::to_string(line_no) + ": bad column header");
            trace.dim = cols.size() - 6;
            if (trace.dim != 2 && trace.dim != 3)
                throw std::runtime_error("trace line " + std::to_string(line_no) + ": unsupported dimension");
            have_header = true;
            continue;
        }
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != trace.dim + 6)
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": wrong column count");
        const std::size_t iter = parse_index(cols[0], line_no);
        const std::size_t agent = parse_index(cols[1], line_no);
        if (trace.records.empty() || trace.records.back().iter != iter) {
            if (!trace.records.empty() && iter <= trace.records.back().iter)
                throw std::runtime_error("trace line " + std::to_string(line_no) + ": iterations out of order");
            trace.records.push_back({iter, {}});
        }
        auto& rec = trace.records.back();
        if (agent != rec.agents.size())
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": agents out of order");
        AgentRecord a;
        a.position = Vec(trace.dim);
        for (std::size_t k = 0; k < trace.dim; ++k) a.position[k] = parse_real(cols[2 + k], line_no);
        a.fitness_true = parse_real(cols[2 + trace.dim], line_no);
        a.fitness_meas = parse_real(cols[3 + trace.dim], line_no);
        a.uv = parse_real(cols[4 + trace.dim], line_no);
        if (!cols[5 + trace.dim].empty()) a.lmate = parse_index(cols[5 + trace.dim], line_no);
        rec.agents.push_back(a);
    }
    if (!have_header) throw std::runtime_error("trace has no column header");
    trace.config = std::move(config);
    return trace;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("cannot move " + tmp.string() + " into place: " + ec.message());
}

void write_trace_file(const std::filesystem::path& path, const Trace& trace)
{
    std::ostringstream os;
    write_trace(os, trace);
    write_file_atomic(path, os.str());
}

Trace read_trace_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open trace " + path.string());
    return read_trace(in);
}

}  // namespace bmo
