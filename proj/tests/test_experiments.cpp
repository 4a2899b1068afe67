#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sw/errors.hpp"
#include "sw/experiments.hpp"
#include "sw/rng.hpp"

using namespace sw;

TEST_CASE("fit_loglog recovers exact power laws") {
    std::vector<double> x, y;
    for (double v : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        x.push_back(v);
        y.push_back(3.0 * std::pow(v, -0.5));
    }
    auto fit = fit_loglog(x, y);
    REQUIRE(fit.valid);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK_FALSE(fit_loglog({1.0, 2.0}, {0.0, 1.0}).valid);
    CHECK_FALSE(fit_loglog({1.0}, {1.0}).valid);
}

TEST_CASE("rate bound constant: corrected positive tail factor") {
    // p=1, s=4, M_s=0: C = 1*2*sqrt(1)*(1 + 1/(2-1)) = 4.
    CHECK(rate_bound_constant(1.0, 4.0, 0.0) == doctest::Approx(4.0));
    // p=2, s=8, M_s=3: C = (2*4*2*(1+1/2))^{1/2} = sqrt(24).
    CHECK(rate_bound_constant(2.0, 8.0, 3.0) == doctest::Approx(std::sqrt(24.0)));
    CHECK_THROWS_AS(rate_bound_constant(2.0, 4.0, 1.0), InputError);
}

TEST_CASE("rate experiment on a point mass is degenerate") {
    auto ref = GaussianReference::isotropic(4);
    auto spec = MeasureSpec::point_mass(Vector(4, 0.0));
    RateOptions opts;
    opts.reference_atoms = 500;
    auto rep = rate_experiment(spec, 2.0, 8.0, {10, 32, 100}, 3, ref, 64, 0.1, 5, opts);
    CHECK(rep.degenerate);
    CHECK_FALSE(rep.fit.valid);
    for (const auto& row : rep.rows) CHECK(row.estimate == 0.0);
}

TEST_CASE("rate experiment smoke run stays under its own bound") {
    auto ref = GaussianReference::isotropic(4);
    auto spec = MeasureSpec::gaussian_kl(ref.eigenvalues);
    RateOptions opts;
    opts.reference_atoms = 4000;
    opts.compress_atoms = 512;
    auto rep = rate_experiment(spec, 1.0, 4.0, {20, 63, 200}, 5, ref, 128, 0.1, 7, opts);
    REQUIRE(rep.rows.size() == 15);
    CHECK_FALSE(rep.degenerate);
    for (std::size_t a = 0; a < rep.n_grid.size(); ++a) {
        const double bound = rep.rows[a * rep.replicates].bound;
        CHECK(rep.mean_estimates[a] <= bound);
    }
    // deterministic reruns
    auto rep2 = rate_experiment(spec, 1.0, 4.0, {20, 63, 200}, 5, ref, 128, 0.1, 7, opts);
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        CHECK(rep.rows[i].estimate == rep2.rows[i].estimate);
    // thread count does not change results
    RateOptions opts4 = opts;
    opts4.threads = 4;
    auto rep4 = rate_experiment(spec, 1.0, 4.0, {20, 63, 200}, 5, ref, 128, 0.1, 7, opts4);
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        CHECK(rep.rows[i].estimate == rep4.rows[i].estimate);
}

TEST_CASE("counterexample rows carry the exact second moment") {
    auto ref = GaussianReference::isotropic(32);
    auto rep = counterexample_run(ref, {1, 2, 5, 10, 20}, 2048, 0.1, 3);
    REQUIRE(rep.rows.size() == 5);
    for (const auto& row : rep.rows) {
        CHECK(row.m2_exact == std::pow(static_cast<double>(row.n), 2.0 / 3.0));
        CHECK(row.sw2 == doctest::Approx(std::sqrt(row.sw2_squared)));
        CHECK(row.sw2 > 0.0);
    }
    CHECK_THROWS_AS(counterexample_run(ref, {40}, 64, 0.1, 3), InputError);
}

TEST_CASE("counterexample: decaying reference sends SW down while M_2 grows") {
    auto ref = GaussianReference::poly(64, 1.0);
    std::vector<std::size_t> ns;
    for (std::size_t n = 4; n <= 64; n += 4) ns.push_back(n);
    auto rep = counterexample_run(ref, ns, 4096, 0.1, 9);
    REQUIRE(rep.fit.valid);
    CHECK(rep.fit.slope < 0.0);
    CHECK(rep.rows.back().m2_exact > rep.rows.front().m2_exact);
}

TEST_CASE("narrow demo: both series head to zero") {
    auto rep = narrow_convergence_demo(GaussianReference::isotropic(6), 11, 2.0, 512, 0.1);
    double first_ps = -1.0, last_ps = -1.0, first_be = -1.0, last_be = -1.0;
    for (const auto& row : rep.rows) {
        if (row.series == "point-shrink") {
            if (first_ps < 0) first_ps = row.sw;
            last_ps = row.sw;
            CHECK(row.sw <= row.w_upper + 1e-12);
        } else {
            if (first_be < 0) first_be = row.sw;
            last_be = row.sw;
        }
    }
    CHECK(last_ps < first_ps);
    CHECK(last_be < first_be);
}

TEST_CASE("dimension sweep: SW bounded by W, CSV stable") {
    auto rep = w_vs_sw_dimension_sweep(2.0, 24, 3, {2, 4, 8}, 256, 0.1, 13);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) CHECK(row.mean_sw <= row.mean_w + 1e-10);
    std::ostringstream a, b;
    rep.write_csv(a);
    auto rep2 = w_vs_sw_dimension_sweep(2.0, 24, 3, {2, 4, 8}, 256, 0.1, 13);
    rep2.write_csv(b);
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, a.str().find('\r')) == "d,mean_w,mean_sw");
}

TEST_CASE("csv rows use CRLF and headers are stable") {
    auto ref = GaussianReference::isotropic(8);
    auto rep = counterexample_run(ref, {1, 2}, 64, 0.1, 1);
    std::ostringstream out;
    rep.write_csv(out);
    const std::string s = out.str();
    CHECK(s.rfind("n,sw2_estimate,sw2_squared,std_error,m2_exact\r\n", 0) == 0);
    CHECK(s.find('\n') != std::string::npos);
}
