#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bmo/field.hpp"
#include "bmo/rng.hpp"

using namespace bmo;

namespace {

const Box kSquare4{Vec{-4.0, -4.0}, Vec{4.0, 4.0}};

FitnessField three_peaks()
{
    return FitnessField::gaussian_peaks({Vec{-2.0, -2.0}, Vec{2.0, -2.0}, Vec{0.0, 2.0}}, {1.0, 1.0, 1.0}, 0.8,
                                        kSquare4);
}

// Strict dominance over an 8-point ring of radius r around p.
bool dominates_ring(const FitnessField& f, const Vec& p, std::size_t t, double r)
{
    const double center = f.eval(p, t);
    for (int k = 0; k < 8; ++k) {
        const double a = k * std::numbers::pi / 4.0;
        Vec q = p;
        q[0] += r * std::cos(a);
        q[1] += r * std::sin(a);
        if (!(center > f.eval(q, t))) return false;
    }
    return true;
}

// Newton iteration on the Himmelblau root system
//   x^2 + y - 11 = 0,  x + y^2 - 7 = 0.
Vec newton_root(double x, double y)
{
    for (int it = 0; it < 50; ++it) {
        const double f1 = x * x + y - 11.0, f2 = x + y * y - 7.0;
        const double a = 2 * x, b = 1.0, c = 1.0, d = 2 * y;
        const double det = a * d - b * c;
        x -= (d * f1 - b * f2) / det;
        y -= (-c * f1 + a * f2) / det;
    }
    return Vec{x, y};
}

}  // namespace

TEST_CASE("gaussian peaks: closed-form values")
{
    const Vec c{0.5, -0.25};
    const auto f = FitnessField::gaussian_peaks({c}, {1.0}, 0.7, kSquare4);
    CHECK(f.eval(c, 0) == 1.0);
    CHECK(f.eval(Vec{0.5 + 0.7, -0.25}, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(std::exp(-1.0) == doctest::Approx(0.3679).epsilon(1e-4));
}

TEST_CASE("gaussian peaks: grid scan finds exactly the three centers")
{
    const auto f = three_peaks();
    constexpr int N = 401;
    const double cell = 8.0 / (N - 1);
    std::vector<double> g(N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) g[i * N + j] = f.eval(Vec{-4.0 + i * cell, -4.0 + j * cell}, 0);

    std::vector<Vec> maxima;
    for (int i = 1; i < N - 1; ++i) {
        for (int j = 1; j < N - 1; ++j) {
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di)
                for (int dj = -1; dj <= 1; ++dj)
                    if ((di || dj) && !(g[i * N + j] > g[(i + di) * N + (j + dj)])) is_max = false;
            if (is_max) maxima.push_back(Vec{-4.0 + i * cell, -4.0 + j * cell});
        }
    }
    REQUIRE(maxima.size() == 3);
    const auto peaks = f.known_peaks(0);
    REQUIRE(peaks);
    for (const Vec& p : *peaks) {
        bool matched = false;
        for (const Vec& m : maxima) matched |= std::abs(m[0] - p[0]) <= cell && std::abs(m[1] - p[1]) <= cell;
        CHECK(matched);
    }
}

TEST_CASE("gaussian peaks: known peaks only when separated by more than 3 sigma")
{
    const auto close = FitnessField::gaussian_peaks({Vec{0.0, 0.0}, Vec{2.0, 0.0}}, {1.0, 1.0}, 0.8, kSquare4);
    CHECK_FALSE(close.known_peaks(0));
    CHECK(three_peaks().known_peaks(0));
}

TEST_CASE("gaussian peaks: invalid definitions are rejected")
{
    CHECK_THROWS_AS(FitnessField::gaussian_peaks({Vec{0.0, 0.0}}, {1.0, 2.0}, 0.5, kSquare4), ContractViolation);
    CHECK_THROWS_AS(FitnessField::gaussian_peaks({Vec{5.0, 0.0}}, {1.0}, 0.5, kSquare4), ContractViolation);
    CHECK_THROWS_AS(FitnessField::gaussian_peaks({Vec{0.0, 0.0}}, {1.0}, 0.0, kSquare4), ContractViolation);
}

TEST_CASE("himmelblau: closed-form values and root dominance")
{
    const auto f = FitnessField::himmelblau();
    const double M = FitnessField::kHimmelblauOffset;
    CHECK(f.eval(Vec{3.0, 2.0}, 0) == M);
    CHECK(f.eval(Vec{0.0, 0.0}, 0) == M - 170.0);
    const auto peaks = f.known_peaks(0);
    REQUIRE(peaks);
    REQUIRE(peaks->size() == 4);
    for (const Vec& p : *peaks) {
        CHECK(dominates_ring(f, p, 0, 0.05));
        const Vec refined = newton_root(p[0], p[1]);
        CHECK(std::abs(refined[0] - p[0]) < 1e-12);
        CHECK(std::abs(refined[1] - p[1]) < 1e-12);
    }
    CHECK_THROWS_AS(FitnessField::himmelblau(Box{Vec{0.0, 0.0, 0.0}, Vec{1.0, 1.0, 1.0}}), ContractViolation);
}

TEST_CASE("point sources: closed-form values")
{
    const Box arena{Vec{0.0, 0.0}, Vec{10.0, 10.0}};
    SourceSpec s{1.0, Vec{5.0, 5.0}, 1.0, {}};
    const auto f = FitnessField::point_sources({s}, arena);
    CHECK(f.eval(Vec{5.0, 5.0}, 0) == 1.0);
    CHECK(f.eval(Vec{6.0, 5.0}, 0) == 0.5);
    CHECK(f.max_value() == 1.0);
}

TEST_CASE("point sources: relocation and linear motion schedules")
{
    const Box arena{Vec{0.0, 0.0}, Vec{10.0, 10.0}};
    SourceSpec s{1.0, Vec{2.5, 2.5}, 1.0, SourceMotion::relocate(300, Vec{7.5, 7.5})};
    const auto f = FitnessField::point_sources({s}, arena);
    CHECK_FALSE(f.is_static());
    CHECK(f.known_peaks(299)->front() == Vec{2.5, 2.5});
    CHECK(f.known_peaks(300)->front() == Vec{7.5, 7.5});
    CHECK(f.eval(Vec{7.5, 7.5}, 300) == 1.0);

    SourceSpec moving{1.0, Vec{1.0, 1.0}, 1.0, SourceMotion::linear(Vec{0.5, 0.0})};
    const auto g = FitnessField::point_sources({moving}, arena);
    CHECK(g.known_peaks(4)->front() == Vec{3.0, 1.0});
    CHECK(g.known_peaks(1000)->front() == Vec{10.0, 1.0});  // clamped to the arena

    SourceSpec outside{1.0, Vec{1.0, 1.0}, 1.0, SourceMotion::relocate(10, Vec{11.0, 1.0})};
    CHECK_THROWS_AS(FitnessField::point_sources({outside}, arena), ContractViolation);
    CHECK_THROWS_AS(FitnessField::point_sources({}, arena), ContractViolation);
}

TEST_CASE("known peaks dominate a probe ring at every time step")
{
    const Box arena{Vec{0.0, 0.0}, Vec{10.0, 10.0}};
    std::vector<SourceSpec> sources = {
        {1.0, Vec{2.0, 2.0}, 1.0, SourceMotion::relocate(20, Vec{8.0, 8.0})},
        {0.8, Vec{8.0, 2.0}, 2.0, SourceMotion::linear(Vec{0.0, 0.04})},
        {1.2, Vec{2.0, 8.0}, 1.5, {}},
    };
    const auto f = FitnessField::point_sources(sources, arena);
    int checked = 0;
    for (std::size_t t = 0; t <= 60; ++t) {
        const auto peaks = f.known_peaks(t);
        if (!peaks) continue;
        for (const Vec& p : *peaks) {
            CHECK(dominates_ring(f, p, t, 0.2));
            ++checked;
        }
    }
    CHECK(checked == 3 * 61);

    const auto g = three_peaks();
    const auto g_peaks = g.known_peaks(0);
    REQUIRE(g_peaks);
    for (const Vec& p : *g_peaks) CHECK(dominates_ring(g, p, 0, 0.05));
}

TEST_CASE("fields are non-negative, bounded by max_value, and static fields ignore time")
{
    Rng rng(5);
    const Box arena{Vec{0.0, 0.0}, Vec{10.0, 10.0}};
    const std::vector<FitnessField> fields = {
        three_peaks(),
        FitnessField::himmelblau(),
        FitnessField::point_sources({{1.0, Vec{5.0, 5.0}, 1.0, {}}, {2.0, Vec{1.0, 9.0}, 0.5, {}}}, arena),
    };
    for (const auto& f : fields) {
        CAPTURE(f.describe());
        CHECK(f.is_static());
        const Box& b = f.bounds();
        for (int i = 0; i < 2000; ++i) {
            Vec x{b.lower[0] + rng.uniform() * (b.upper[0] - b.lower[0]),
                  b.lower[1] + rng.uniform() * (b.upper[1] - b.lower[1])};
            const double v = f.eval(x, 0);
            REQUIRE(std::isfinite(v));
            CHECK(v >= 0.0);
            CHECK(v <= f.max_value());
            CHECK(v == f.eval(x, 17));
        }
    }
}

TEST_CASE("batch evaluation equals point evaluation")
{
    Rng rng(11);
    const auto f = three_peaks();
    const std::size_t n = 13;
    std::vector<double> coords(2 * n), out(n);
    for (double& c : coords) c = 8.0 * rng.uniform() - 4.0;
    f.eval_batch(coords, n, 0, out);
    for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == f.eval(Vec{coords[i], coords[n + i]}, 0));
}

TEST_CASE("3-D fields")
{
    const Box cube{Vec{0.0, 0.0, 0.0}, Vec{4.0, 4.0, 4.0}};
    const auto f = FitnessField::gaussian_peaks({Vec{1.0, 1.0, 1.0}, Vec{3.0, 3.0, 3.0}}, {1.0, 2.0}, 0.5, cube);
    CHECK(f.dimension() == 3);
    CHECK(f.eval(Vec{3.0, 3.0, 3.0}, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(f.eval(Vec{1.0, 1.0}, 0), ContractViolation);
}
