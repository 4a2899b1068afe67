#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sw/discrete_ot.hpp"
#include "sw/errors.hpp"
#include "sw/ot1d.hpp"
#include "sw/quadrature.hpp"
#include "sw/rng.hpp"
#include "sw/testgen.hpp"

using namespace sw;

namespace {

// Brute-force oracle for equally weighted equal-size samples: minimum over
// all n! assignments. Valid for any cost; the quantile coupling must match.
double perm_oracle_pow(std::vector<double> a, std::vector<double> b, double p) {
    std::vector<std::size_t> idx(b.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end());
    double best = 1e300;
    do {
        double c = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            c += std::pow(std::abs(a[i] - b[idx[i]]), p);
        best = std::min(best, c / static_cast<double>(a.size()));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

Projected1DMeasure random_1d(std::uint64_t key, std::size_t max_atoms, bool uniform_w) {
    const std::size_t n = 1 + rng::at(key, 0) % max_atoms;
    std::vector<double> v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = 4.0 * rng::uniform01(key, 2 * i + 1) - 2.0;
        w[i] = uniform_w ? 1.0 : 0.1 + rng::uniform01(key, 2 * i + 2);
    }
    return Projected1DMeasure(std::move(v), std::move(w));
}

} // namespace

TEST_CASE("projection validates and sorts") {
    DiscreteMeasure mu({{1.0, 0.0}, {0.0, 2.0}}, {0.5, 0.5});
    CHECK_THROWS_AS(project(mu, {1.0, 1.0}), InputError);
    auto pr = project(mu, {0.0, 1.0});
    CHECK(pr.values() == std::vector<double>{0.0, 2.0});
}

TEST_CASE("ties merge and weights renormalize") {
    Projected1DMeasure m({1.0, 1.0, 0.0}, {1.0, 1.0, 2.0});
    REQUIRE(m.size() == 2);
    CHECK(m.values()[0] == 0.0);
    CHECK(m.weights()[0] == doctest::Approx(0.5));
    CHECK(m.weights()[1] == doctest::Approx(0.5));
}

TEST_CASE("w1d hand example") {
    // Two atoms each, uniform weights: W_1 = (|0-1| + |2-3|)/2 = 1,
    // W_2^2 = (1 + 1)/2 = 1.
    auto a = Projected1DMeasure::uniform_sorted({0.0, 2.0});
    auto b = Projected1DMeasure::uniform_sorted({1.0, 3.0});
    CHECK(w1d(a, b, 1.0) == doctest::Approx(1.0));
    CHECK(w1d(a, b, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("w1d matches permutation oracle on uniform samples") {
    for (int t = 0; t < 60; ++t) {
        const std::uint64_t key = rng::derive(9001, t);
        const std::size_t n = 2 + rng::at(key, 100) % 4; // up to 5 atoms
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = 4.0 * rng::uniform01(key, 2 * i) - 2.0;
            b[i] = 4.0 * rng::uniform01(key, 2 * i + 1) - 2.0;
        }
        for (double p : {1.0, 2.0, 3.0}) {
            const double want = perm_oracle_pow(a, b, p);
            auto ma = Projected1DMeasure(a, std::vector<double>(n, 1.0));
            auto mb = Projected1DMeasure(b, std::vector<double>(n, 1.0));
            CHECK(std::pow(w1d(ma, mb, p), p) == doctest::Approx(want).epsilon(1e-10));
            auto sa = a, sb = b;
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            CHECK(w1d_pow_sorted_uniform(sa.data(), n, sb.data(), n, p) ==
                  doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("w1d matches exact flow solver on weighted measures") {
    for (int t = 0; t < 40; ++t) {
        const std::uint64_t key = rng::derive(4242, t);
        auto a = random_1d(rng::derive(key, 0), 5, false);
        auto b = random_1d(rng::derive(key, 1), 5, false);
        std::vector<Vector> pa, pb;
        for (double v : a.values()) pa.push_back({v});
        for (double v : b.values()) pb.push_back({v});
        DiscreteMeasure da(pa, a.weights());
        DiscreteMeasure db(pb, b.weights());
        for (double p : {1.0, 2.0}) {
            const double flow = wasserstein_exact(da, db, p).value;
            CHECK(w1d(a, b, p) == doctest::Approx(flow).epsilon(1e-8));
        }
    }
}

TEST_CASE("w1d_pow_sorted_uniform handles unequal sizes exactly") {
    // a = {0}, b = {0, 1}: plan moves mass 1/2 across distance 1.
    const double a0 = 0.0;
    const double b[] = {0.0, 1.0};
    CHECK(w1d_pow_sorted_uniform(&a0, 1, b, 2, 1.0) == doctest::Approx(0.5));
    CHECK(w1d_pow_sorted_uniform(&a0, 1, b, 2, 2.0) == doctest::Approx(0.5));

    // cross-check against w1d on random unequal sizes
    for (int t = 0; t < 30; ++t) {
        const std::uint64_t key = rng::derive(512, t);
        auto a = random_1d(rng::derive(key, 0), 7, true);
        auto bb = random_1d(rng::derive(key, 1), 9, true);
        if (a.size() == 0 || bb.size() == 0) continue;
        for (double p : {1.0, 2.0}) {
            const double fast = w1d_pow_sorted_uniform(a.values().data(), a.size(),
                                                       bb.values().data(), bb.size(), p);
            CHECK(fast == doctest::Approx(std::pow(w1d(a, bb, p), p)).epsilon(1e-10));
        }
    }
}

TEST_CASE("1D metric axioms over random measures") {
    for (int t = 0; t < 50; ++t) {
        const std::uint64_t key = rng::derive(31337, t);
        auto a = random_1d(rng::derive(key, 0), 6, false);
        auto b = random_1d(rng::derive(key, 1), 6, false);
        auto c = random_1d(rng::derive(key, 2), 6, false);
        for (double p : {1.0, 2.0}) {
            CHECK(w1d(a, a, p) == 0.0);
            CHECK(w1d(a, b, p) == doctest::Approx(w1d(b, a, p)).epsilon(1e-14));
            CHECK(w1d(a, c, p) <= w1d(a, b, p) + w1d(b, c, p) + 1e-10);
        }
    }
}

TEST_CASE("quantile and cdf are inverse") {
    auto g = DistributionSpec1D::gaussian(0.5, 2.0);
    for (double u : {0.001, 0.02425, 0.3, 0.5, 0.75, 0.999})
        CHECK(g.cdf(g.quantile(u)) == doctest::Approx(u).epsilon(1e-10));
    auto un = DistributionSpec1D::uniform(-1.0, 3.0);
    CHECK(un.quantile(0.25) == doctest::Approx(0.0));
    CHECK(un.cdf(1.0) == doctest::Approx(0.5));
}

TEST_CASE("gaussian absolute moments match closed form") {
    auto g = DistributionSpec1D::gaussian(0.0, 1.0);
    CHECK(g.abs_moment(1.0) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-10));
    CHECK(g.abs_moment(2.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g.abs_moment(4.0) == doctest::Approx(3.0).epsilon(1e-10));
    // off-center moment via quadrature agrees with E(xi+m)^2 = 1 + m^2
    auto g2 = DistributionSpec1D::gaussian(2.0, 1.0);
    CHECK(g2.abs_moment(2.0) == doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("J_1 of uniform(0,1) equals pi/8") {
    const double j1 = bobkov_integral(DistributionSpec1D::uniform(0.0, 1.0), 1.0);
    CHECK(j1 == doctest::Approx(M_PI / 8.0).epsilon(1e-8));
}

TEST_CASE("adaptive and Gauss-Legendre quadratures agree on J_1 (gaussian)") {
    auto g = DistributionSpec1D::gaussian(0.0, 1.0);
    const double adaptive = bobkov_integral(g, 1.0);
    auto f = [&g](double x) {
        const double F = g.cdf(x);
        return std::sqrt(std::max(F * (1.0 - F), 0.0));
    };
    const double gl = quad::gauss_legendre(f, -16.0, 16.0, 256);
    CHECK(adaptive == doctest::Approx(gl).epsilon(1e-8));
}

TEST_CASE("chebyshev envelope dominates F(1-F) on a grid") {
    for (auto dist : {DistributionSpec1D::uniform(0.0, 1.0),
                      DistributionSpec1D::gaussian(0.0, 1.0)}) {
        for (double s : {2.0, 4.0}) {
            auto env = chebyshev_envelope(dist, s);
            for (int i = 0; i <= 600; ++i) {
                const double x = -3.0 + 6.0 * i / 600.0;
                const double F = dist.cdf(x);
                CHECK(env(x) >= F * (1.0 - F));
            }
        }
    }
}

TEST_CASE("empirical 1D distance shrinks toward the law") {
    // 200 uniform(0,1) samples vs a fine quantile grid: W_1 should be well
    // under the n^{-1/2} envelope and above zero.
    auto dist = DistributionSpec1D::uniform(0.0, 1.0);
    auto grid = dist.quantile_discretization(20000);
    const std::size_t n = 200;
    const std::size_t reps = 50;
    std::vector<double> sample(n);
    double mean = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const std::uint64_t key = rng::derive(99, r);
        for (std::size_t i = 0; i < n; ++i) sample[i] = rng::uniform01(key, i);
        std::sort(sample.begin(), sample.end());
        mean += w1d_pow_sorted_uniform(sample.data(), n, grid.values().data(), grid.size(),
                                       1.0);
    }
    mean /= static_cast<double>(reps);
    CHECK(mean > 0.0);
    // the bound controls the expectation; 50 replicates leave ample slack
    CHECK(mean < bobkov_rhs(dist, 1.0) / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("quadrature throws when the interval ceiling is hit") {
    auto wild = [](double x) { return std::sin(1.0 / (x * x + 1e-12)); };
    CHECK_THROWS_AS(quad::integrate(wild, -1.0, 1.0, 1e-14, 64), DomainError);
}
