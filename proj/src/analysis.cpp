#include "bmo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bmo {

namespace {

void append_stats(SeriesStats& s, const std::vector<double>& values)
{
    const double n = static_cast<double>(values.size());
    double sum = 0.0, lo = values.front(), hi = values.front();
    for (double v : values) {
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    s.mean.push_back(mean);
    s.min.push_back(lo);
    s.max.push_back(hi);
    s.stddev.push_back(std::sqrt(ss / n));
}

double norm(const Vec& v)
{
    double acc = 0.0;
    for (double c : v) acc += c * c;
    return std::sqrt(acc);
}

Vec diff(const Vec& a, const Vec& b)
{
    Vec d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
    return d;
}

double angle_between(const Vec& u, const Vec& v)
{
    double dot = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) dot += u[k] * v[k];
    double cross;
    if (u.size() == 2) {
        cross = std::abs(u[0] * v[1] - u[1] * v[0]);
    } else {
        const double cx = u[1] * v[2] - u[2] * v[1];
        const double cy = u[2] * v[0] - u[0] * v[2];
        const double cz = u[0] * v[1] - u[1] * v[0];
        cross = std::sqrt(cx * cx + cy * cy + cz * cz);
    }
    return std::atan2(cross, dot);
}

std::vector<double> average_ranks(std::span<const double> x)
{
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

CaptureReport peak_capture(const Trace& trace, std::span<const Vec> peaks, double radius, std::size_t min_count)
{
    if (peaks.empty()) throw ContractViolation("peak_capture: no peaks given");
    if (!(radius > 0.0)) throw ContractViolation("peak_capture: radius must be > 0");
    if (trace.records.empty()) throw ContractViolation("peak_capture: empty trace");

    CaptureReport report;
    report.counts.assign(peaks.size(), 0);
    for (const auto& a : trace.records.back().agents)
        for (std::size_t k = 0; k < peaks.size(); ++k)
            if (distance(a.position, peaks[k]) <= radius) ++report.counts[k];
    report.all_captured = true;
    for (std::size_t c : report.counts) {
        report.captured.push_back(c >= min_count);
        report.all_captured = report.all_captured && c >= min_count;
    }
    return report;
}

ConvergenceSeries uv_convergence(const Trace& trace)
{
    if (trace.records.empty() || trace.n_agents() == 0) throw ContractViolation("uv_convergence: empty trace");
    ConvergenceSeries out;
    std::vector<double> uv, fit;
    for (const auto& rec : trace.records) {
        uv.clear();
        fit.clear();
        for (const auto& a : rec.agents) {
            uv.push_back(a.uv);
            fit.push_back(a.fitness_meas);
        }
        append_stats(out.uv, uv);
        append_stats(out.fitness_meas, fit);
    }
    return out;
}

std::vector<PathSmoothness> path_smoothness(const Trace& trace)
{
    if (trace.records.size() < 3) throw ContractViolation("path_smoothness: need at least three records");
    const std::size_t n = trace.n_agents();
    std::vector<PathSmoothness> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Vec> segments;
        double length = 0.0;
        for (std::size_t r = 1; r < trace.records.size(); ++r) {
            const Vec d = diff(trace.records[r].agents[i].position, trace.records[r - 1].agents[i].position);
            const double len = norm(d);
            if (len == 0.0) continue;
            segments.push_back(d);
            length += len;
        }
        double turn_sum = 0.0;
        for (std::size_t s = 1; s < segments.size(); ++s) turn_sum += angle_between(segments[s - 1], segments[s]);
        if (segments.size() >= 2) out[i].mean_turning_angle = turn_sum / static_cast<double>(segments.size() - 1);

        const double net = distance(trace.records.back().agents[i].position, trace.records.front().agents[i].position);
        if (net > 0.0) out[i].path_ratio = length / net;
    }
    return out;
}

std::vector<double> lmate_variation(const Trace& trace)
{
    const std::size_t n = trace.n_agents();
    std::vector<double> rate(n, 0.0);
    const std::size_t iterations = trace.records.empty() ? 0 : trace.records.size() - 1;
    if (iterations < 2) return rate;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t switches = 0;
        for (std::size_t r = 2; r < trace.records.size(); ++r)
            if (trace.records[r].agents[i].lmate != trace.records[r - 1].agents[i].lmate) ++switches;
        rate[i] = static_cast<double>(switches) / static_cast<double>(iterations - 1);
    }
    return rate;
}

std::vector<std::vector<std::size_t>> cluster_detect(std::span<const Vec> positions, double radius)
{
    if (!(radius > 0.0)) throw ContractViolation("cluster_detect: radius must be > 0");
    const std::size_t n = positions.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (distance(positions[a], positions[b]) > radius) continue;
            const std::size_t ra = find(a), rb = find(b);
            if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
        }
    }
    std::vector<std::vector<std::size_t>> clusters;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (slot[root] == n) {
            slot[root] = clusters.size();
            clusters.emplace_back();
        }
        clusters[slot[root]].push_back(i);
    }
    return clusters;
}

double spearman(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) throw ContractViolation("spearman: need two equal-length samples");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace bmo
