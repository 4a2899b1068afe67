#include <doctest.h>

#include <cmath>

#include "sw/errors.hpp"
#include "sw/quadrature.hpp"
#include "sw/surface.hpp"

using namespace sw;

TEST_CASE("reference families are normalized and validated") {
    CHECK(GaussianReference::isotropic(16).sum_sq() == doctest::Approx(1.0));
    CHECK(GaussianReference::poly(32, 1.5).sum_sq() == doctest::Approx(1.0));
    CHECK(GaussianReference::geom(32, 0.8).sum_sq() == doctest::Approx(1.0));
    CHECK_THROWS_AS(GaussianReference::from_eigenvalues({1.0, -1.0}), InputError);
    CHECK_THROWS_AS(GaussianReference::geom(4, 1.5), InputError);
}

TEST_CASE("sampled directions are unit vectors") {
    auto dirs = sample_directions(GaussianReference::poly(6, 1.0), 500, 0.1, 11);
    REQUIRE(dirs.size() == 500);
    for (const auto& t : dirs.directions) CHECK(std::abs(norm(t) - 1.0) <= 1e-12);
    auto u = sample_directions_uniform(5, 300, 12);
    for (const auto& t : u.directions) CHECK(std::abs(norm(t) - 1.0) <= 1e-12);
}

TEST_CASE("thread count never changes the sampled set") {
    auto ref = GaussianReference::geom(8, 0.75);
    auto a = sample_directions(ref, 777, 0.08, 99, 100000000ull, 1);
    auto b = sample_directions(ref, 777, 0.08, 99, 100000000ull, 3);
    auto c = sample_directions(ref, 777, 0.08, 99, 100000000ull, 8);
    CHECK(a.directions == b.directions);
    CHECK(a.directions == c.directions);
    auto ua = sample_directions_uniform(6, 500, 5, 1);
    auto ub = sample_directions_uniform(6, 500, 5, 7);
    CHECK(ua.directions == ub.directions);
}

TEST_CASE("coordinate second moments satisfy Parseval and isotropy") {
    auto dirs = sample_directions(GaussianReference::isotropic(3), 40000, 0.1, 21);
    auto c = direction_second_moments(dirs);
    double total = 0.0;
    for (double v : c) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // isotropic in d=3: each coordinate share is 1/3
    for (double v : c) CHECK(std::abs(v - 1.0 / 3.0) < 0.01);
}

TEST_CASE("sign symmetry of the surface measure") {
    auto dirs = sample_directions(GaussianReference::poly(4, 1.0), 40000, 0.1, 33);
    auto [mean, se] = surface_expectation(dirs, [](const Vector& t) { return t[0]; });
    CHECK(std::abs(mean) <= 5.0 * se + 1e-12);
}

TEST_CASE("shell sampler converges to the analytic small-eps limit (d=2)") {
    // lambda = (1, 0.1) normalized: the eps -> 0 surface density on the
    // circle is proportional to exp(-q(phi)/2) with
    // q(phi) = cos^2/l1^2 + sin^2/l2^2; E theta_1^2 via quadrature.
    const double l1 = 1.0 / std::sqrt(1.01), l2 = 0.1 / std::sqrt(1.01);
    auto ref = GaussianReference::from_eigenvalues({l1, l2});
    auto dens = [&](double phi) {
        const double c = std::cos(phi), s = std::sin(phi);
        return std::exp(-0.5 * (c * c / (l1 * l1) + s * s / (l2 * l2)));
    };
    const double z = quad::integrate(dens, 0.0, 2.0 * M_PI, 1e-10).value;
    const double want = quad::integrate(
                            [&](double phi) {
                                const double c = std::cos(phi);
                                return c * c * dens(phi);
                            },
                            0.0, 2.0 * M_PI, 1e-10)
                            .value /
                        z;
    for (double eps : {0.04, 0.02}) {
        auto dirs = sample_directions(ref, 60000, eps, 7, 2000000000ull);
        auto [mean, se] =
            surface_expectation(dirs, [](const Vector& t) { return t[0] * t[0]; });
        CHECK(std::abs(mean - want) <= 4.0 * se + 0.5 * eps * eps);
    }
}

TEST_CASE("budget exhaustion raises a resource error") {
    auto ref = GaussianReference::from_eigenvalues({1e-3, 1e-3});
    CHECK_THROWS_AS(sample_directions(ref, 10, 0.01, 1, 2000), ResourceError);
}

TEST_CASE("input validation") {
    auto ref = GaussianReference::isotropic(3);
    CHECK_THROWS_AS(sample_directions(ref, 0, 0.05, 1), InputError);
    CHECK_THROWS_AS(sample_directions(ref, 10, 0.0, 1), InputError);
    CHECK_THROWS_AS(sample_directions(ref, 10, 0.9, 1), InputError);
    CHECK_THROWS_AS(sample_directions_uniform(1, 10, 1), InputError);
}
