#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sw/discrete_ot.hpp"
#include "sw/errors.hpp"
#include "sw/hilbert.hpp"
#include "sw/rng.hpp"
#include "sw/testgen.hpp"

using namespace sw;

namespace {

// Assignment oracle: n equally weighted atoms on both sides, minimum over
// all n! permutations of the mean transport cost.
double assignment_oracle_pow(const DiscreteMeasure& a, const DiscreteMeasure& b, double p) {
    const std::size_t n = a.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    double best = 1e300;
    do {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Vector diff = a.points()[i];
            for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= b.points()[idx[i]][j];
            c += std::pow(norm(diff), p);
        }
        best = std::min(best, c / static_cast<double>(n));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

DiscreteMeasure uniform_random(std::size_t d, std::size_t n, std::uint64_t key) {
    std::vector<Vector> pts(n, Vector(d));
    std::uint64_t ctr = 0;
    for (auto& x : pts)
        for (double& v : x) v = 2.0 * rng::uniform01(key, ctr++) - 1.0;
    return DiscreteMeasure::uniform(std::move(pts));
}

} // namespace

TEST_CASE("hand example: two diracs") {
    auto a = DiscreteMeasure::dirac({0.0, 0.0});
    auto b = DiscreteMeasure::dirac({3.0, 4.0});
    for (double p : {1.0, 2.0, 3.0})
        CHECK(wasserstein_exact(a, b, p).value == doctest::Approx(5.0));
}

TEST_CASE("hand example: split mass") {
    // mu = delta_0, nu = (delta_{-1} + delta_{+1})/2: W_1 = 1, W_2 = 1.
    auto mu = DiscreteMeasure::dirac({0.0});
    DiscreteMeasure nu({{-1.0}, {1.0}}, {0.5, 0.5});
    CHECK(wasserstein_exact(mu, nu, 1.0).value == doctest::Approx(1.0));
    CHECK(wasserstein_exact(mu, nu, 2.0).value == doctest::Approx(1.0));
}

TEST_CASE("matches permutation oracle on 4-atom uniform measures") {
    for (int t = 0; t < 25; ++t) {
        const std::uint64_t key = rng::derive(777, t);
        auto a = uniform_random(3, 4, rng::derive(key, 0));
        auto b = uniform_random(3, 4, rng::derive(key, 1));
        for (double p : {1.0, 2.0}) {
            const double got = wasserstein_exact(a, b, p).value;
            const double want = std::pow(assignment_oracle_pow(a, b, p), 1.0 / p);
            CHECK(got == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("exact rational masses produce exact plans") {
    // weights 1/3, 2/3 vs 1/2, 1/2 on a line: optimal plan is the monotone
    // one; W_1 = |0-0|*1/3 + |1-0|*1/6 + |1-1|*1/2 = 1/6.
    DiscreteMeasure mu({{0.0}, {1.0}}, {1.0 / 3.0, 2.0 / 3.0});
    DiscreteMeasure nu({{0.0}, {1.0}}, {0.5, 0.5});
    auto res = wasserstein_exact(mu, nu, 1.0);
    CHECK(res.value == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    // marginals of the plan reproduce the inputs exactly up to rounding
    auto rs = res.plan.row_sums();
    auto cs = res.plan.col_sums();
    CHECK(rs[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(rs[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(cs[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(cs[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("plan marginals always match inputs") {
    for (int t = 0; t < 20; ++t) {
        const std::uint64_t key = rng::derive(555, t);
        auto a = testgen::random_measure(4, 6, rng::derive(key, 0));
        auto b = testgen::random_measure(4, 6, rng::derive(key, 1));
        auto res = wasserstein_exact(a, b, 2.0);
        auto rs = res.plan.row_sums();
        auto cs = res.plan.col_sums();
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(rs[i] == doctest::Approx(a.weights()[i]).epsilon(1e-6));
        for (std::size_t j = 0; j < b.size(); ++j)
            CHECK(cs[j] == doctest::Approx(b.weights()[j]).epsilon(1e-6));
    }
}

TEST_CASE("metric axioms for the exact solver") {
    for (int t = 0; t < 15; ++t) {
        const std::uint64_t key = rng::derive(2024, t);
        auto a = testgen::random_measure(3, 5, rng::derive(key, 0));
        auto b = testgen::random_measure(3, 5, rng::derive(key, 1));
        auto c = testgen::random_measure(3, 5, rng::derive(key, 2));
        for (double p : {1.0, 2.0}) {
            CHECK(wasserstein_exact(a, a, p).value <= 1e-12);
            const double ab = wasserstein_exact(a, b, p).value;
            const double ba = wasserstein_exact(b, a, p).value;
            CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
            const double ac = wasserstein_exact(a, c, p).value;
            const double bc = wasserstein_exact(b, c, p).value;
            CHECK(ac <= ab + bc + 1e-9);
        }
    }
}

TEST_CASE("support cap is enforced") {
    auto a = uniform_random(2, 8, 1);
    auto b = uniform_random(2, 8, 2);
    CHECK_THROWS_AS(wasserstein_exact(a, b, 2.0, 4), ResourceError);
}
