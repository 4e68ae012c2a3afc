#include "naive_oracle.hpp"

#include <cmath>

namespace oracle {

State from(const bmo::SwarmState& s)
{
    State out;
    out.iter = s.iter;
    for (const auto& a : s.agents) out.agents.push_back({a.position.to_vector(), a.uv, a.fitness, a.lmate});
    return out;
}

bool same(const State& a, const bmo::SwarmState& b)
{
    if (a.iter != b.iter || a.agents.size() != b.agents.size()) return false;
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        const auto& x = a.agents[i];
        const auto& y = b.agents[i];
        if (x.x != y.position.to_vector() || x.uv != y.uv || x.fitness != y.fitness || x.lmate != y.lmate)
            return false;
    }
    return true;
}

State naive_step(const State& s, const bmo::FitnessField& field, bmo::Rng& rng, const bmo::BmoParams& p,
                 double sensor_sigma, bmo::Rng* sensor_rng)
{
    const std::size_t n = s.agents.size();
    const std::size_t dim = n ? s.agents[0].x.size() : 0;

    std::vector<double> fit(n);
    for (std::size_t i = 0; i < n; ++i) {
        double J = field.eval(bmo::Vec::from(s.agents[i].x), s.iter);
        if (sensor_sigma > 0.0) {
            J = J + sensor_sigma * sensor_rng->normal();
            if (J < 0.0) J = 0.0;
        }
        fit[i] = J;
    }

    std::vector<double> uv(n);
    for (std::size_t i = 0; i < n; ++i) {
        uv[i] = (1.0 - p.rho) * s.agents[i].uv + p.gamma * fit[i];
        if (uv[i] < 0.0) uv[i] = 0.0;
    }

    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    std::vector<std::vector<double>> r(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double diff = s.agents[i].x[k] - s.agents[j].x[k];
                acc += diff * diff;
            }
            d[i][j] = std::sqrt(acc);
            r[i][j] = uv[j] * std::exp(-(d[i][j] / p.lambda_d));
        }
    }

    std::vector<std::optional<std::size_t>> mate(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool stochastic = p.selection_mode == bmo::SelectionMode::stochastic;
        const double u = stochastic ? rng.uniform() : 0.0;
        std::vector<std::size_t> cand;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && fit[j] > fit[i] + p.fitness_eps) cand.push_back(j);
        if (cand.empty()) continue;
        if (!stochastic) {
            std::size_t best = cand[0];
            for (std::size_t c : cand)
                if (r[i][c] > r[i][best]) best = c;
            mate[i] = best;
            continue;
        }
        double total = 0.0;
        for (std::size_t c : cand) total += r[i][c];
        if (!(total > 0.0)) {
            mate[i] = cand[static_cast<std::size_t>(u * static_cast<double>(cand.size()))];
            continue;
        }
        double cum = 0.0;
        mate[i] = cand.back();
        for (std::size_t c : cand) {
            cum += r[i][c];
            if (u * total < cum) {
                mate[i] = c;
                break;
            }
        }
    }

    State out;
    out.iter = s.iter + 1;
    const bmo::Box& b = field.bounds();
    for (std::size_t i = 0; i < n; ++i) {
        Agent a;
        a.uv = uv[i];
        a.fitness = fit[i];
        a.lmate = mate[i];
        a.x = s.agents[i].x;
        if (mate[i]) {
            const auto& target = s.agents[*mate[i]].x;
            const double dist = d[i][*mate[i]];
            if (dist <= p.step_size) {
                a.x = target;
            } else {
                for (std::size_t k = 0; k < dim; ++k)
                    a.x[k] = s.agents[i].x[k] + p.step_size * ((target[k] - s.agents[i].x[k]) / dist);
            }
        }
        for (std::size_t k = 0; k < dim; ++k) {
            if (a.x[k] < b.lower[k]) a.x[k] = b.lower[k];
            if (a.x[k] > b.upper[k]) a.x[k] = b.upper[k];
        }
        out.agents.push_back(std::move(a));
    }
    return out;
}

}  // namespace oracle
