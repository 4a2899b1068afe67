#include "sw/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "sw/csv.hpp"
#include "sw/discrete_ot.hpp"
#include "sw/errors.hpp"
#include "sw/ot1d.hpp"
#include "sw/parallel.hpp"
#include "sw/rng.hpp"
#include "sw/sw_metric.hpp"

namespace sw {

namespace {

// Projects every golden atom onto every direction, sorts, and keeps an
// m-atom quantile compression per direction. The compression error is far
// below the golden sample's own statistical error.
std::vector<std::vector<double>> compressed_projections(const DiscreteMeasure& golden,
                                                        const DirectionSet& dirs,
                                                        std::size_t m, unsigned threads) {
    const std::size_t k = dirs.size();
    const std::size_t big = golden.size();
    const std::size_t keep = std::min(m, big);
    std::vector<std::vector<double>> out(k);
    parallel_for(k, threads, [&](std::size_t j) {
        const Vector& theta = dirs.directions[j];
        std::vector<double> proj(big);
        for (std::size_t i = 0; i < big; ++i) proj[i] = inner(theta, golden.points()[i]);
        std::sort(proj.begin(), proj.end());
        std::vector<double> q(keep);
        for (std::size_t i = 0; i < keep; ++i) {
            const std::size_t idx = static_cast<std::size_t>(
                (static_cast<double>(i) + 0.5) * static_cast<double>(big) /
                static_cast<double>(keep));
            q[i] = proj[std::min(idx, big - 1)];
        }
        out[j] = std::move(q);
    });
    return out;
}

struct PowStats {
    double mean = 0.0;
    double std_error = 0.0;
};

// Mean and SE over directions of W_p^p(projected sample, reference).
PowStats sw_pow_vs_reference(const DiscreteMeasure& sample, const DirectionSet& dirs,
                             const std::vector<std::vector<double>>& ref_q, double p) {
    const std::size_t k = dirs.size();
    const std::size_t n = sample.size();
    std::vector<double> proj(n);
    double mean = 0.0, sq = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const Vector& theta = dirs.directions[j];
        for (std::size_t i = 0; i < n; ++i) proj[i] = inner(theta, sample.points()[i]);
        std::sort(proj.begin(), proj.end());
        const double v =
            w1d_pow_sorted_uniform(proj.data(), n, ref_q[j].data(), ref_q[j].size(), p);
        mean += v;
        sq += v * v;
    }
    mean /= static_cast<double>(k);
    const double var =
        k > 1 ? std::max(0.0, (sq - static_cast<double>(k) * mean * mean) /
                                  static_cast<double>(k - 1))
              : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(k))};
}

std::vector<std::string> header_to_row(std::initializer_list<const char*> names) {
    return {names.begin(), names.end()};
}

} // namespace

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    SlopeFit fit;
    if (x.size() != y.size() || x.size() < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) return fit;
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(x.size());
    const double den = n * sxx - sx * sx;
    if (den <= 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.valid = true;
    return fit;
}

double rate_bound_constant(double p, double s, double m_s) {
    if (!(s > 2.0 * p)) throw InputError("rate bound: requires s > 2p");
    // The positive value 1/(s/2 - p) of the tail integral is used here;
    // see the report manifests for the sign note.
    const double inner = p * std::pow(2.0, p) * std::sqrt(1.0 + m_s) *
                         (1.0 + 1.0 / (0.5 * s - p));
    return std::pow(inner, 1.0 / p);
}

void RateReport::write_csv(std::ostream& out) const {
    csv::Writer w(out);
    w.row(header_to_row({"n", "replicate", "estimate", "std_error", "bound"}));
    for (const RateRow& r : rows)
        w.row({csv::format(r.n), csv::format(r.replicate), csv::format(r.estimate),
               csv::format(r.std_error), csv::format(r.bound)});
}

RateReport rate_experiment(const MeasureSpec& spec, double p, double s,
                           const std::vector<std::size_t>& n_grid, std::size_t replicates,
                           const GaussianReference& ref, std::size_t directions, double eps,
                           std::uint64_t seed, const RateOptions& opts) {
    if (!(p >= 1.0)) throw InputError("rate_experiment: p must be >= 1");
    if (!(s > 2.0 * p)) throw InputError("rate_experiment: requires s > 2p");
    if (n_grid.empty() || replicates == 0)
        throw InputError("rate_experiment: empty n grid or zero replicates");
    spec.validate();
    if (spec.dimension != ref.dimension())
        throw InputError("rate_experiment: spec/reference dimension mismatch");

    const double m_s = spec.analytic_moment(s);
    const double constant = rate_bound_constant(p, s, m_s);

    const DirectionSet dirs = sample_directions(ref, directions, eps, rng::derive(seed, 1),
                                                100000000ull, opts.threads);
    const DiscreteMeasure golden =
        sample_measure(spec, opts.reference_atoms, rng::derive(seed, 2));
    const auto ref_q = compressed_projections(golden, dirs, opts.compress_atoms, opts.threads);

    RateReport rep;
    rep.n_grid = n_grid;
    rep.p = p;
    rep.s = s;
    rep.bound_constant = constant;
    rep.dimension = spec.dimension;
    rep.replicates = replicates;
    rep.directions = directions;
    rep.seed = seed;
    rep.rows.resize(n_grid.size() * replicates);

    const std::uint64_t sample_key = rng::derive(seed, 3);
    parallel_for(rep.rows.size(), opts.threads, [&](std::size_t idx) {
        const std::size_t a = idx / replicates;
        const std::size_t r = idx % replicates;
        const std::size_t n = n_grid[a];
        const std::uint64_t key = rng::derive(rng::derive(sample_key, a), r);
        const DiscreteMeasure emp = sample_measure(spec, n, key);
        const PowStats st = sw_pow_vs_reference(emp, dirs, ref_q, p);
        RateRow& row = rep.rows[idx];
        row.n = n;
        row.replicate = r;
        row.estimate = std::pow(st.mean, 1.0 / p);
        row.std_error = st.std_error;
        row.bound = constant * std::pow(static_cast<double>(n), -1.0 / (2.0 * p));
    });

    rep.mean_estimates.assign(n_grid.size(), 0.0);
    for (std::size_t a = 0; a < n_grid.size(); ++a) {
        double m = 0.0;
        for (std::size_t r = 0; r < replicates; ++r)
            m += rep.rows[a * replicates + r].estimate;
        rep.mean_estimates[a] = m / static_cast<double>(replicates);
    }
    rep.degenerate = std::all_of(rep.mean_estimates.begin(), rep.mean_estimates.end(),
                                 [](double v) { return v == 0.0; });

    // Smallest n sits in the transient regime; excluded from the fit.
    if (!rep.degenerate && n_grid.size() >= 3) {
        std::vector<double> xs, ys;
        for (std::size_t a = 1; a < n_grid.size(); ++a) {
            xs.push_back(static_cast<double>(n_grid[a]));
            ys.push_back(rep.mean_estimates[a]);
        }
        rep.fit = fit_loglog(xs, ys);
    }
    return rep;
}

void TwoSampleReport::write_csv(std::ostream& out) const {
    csv::Writer w(out);
    w.row(header_to_row({"n", "m", "mean_abs_error", "std_error", "bound"}));
    for (const TwoSampleRow& r : rows)
        w.row({csv::format(r.n), csv::format(r.m), csv::format(r.mean_abs_error),
               csv::format(r.std_error), csv::format(r.bound)});
}

TwoSampleReport two_sample_experiment(const MeasureSpec& spec_mu, const MeasureSpec& spec_nu,
                                      double p, double s,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& grid,
                                      std::size_t replicates, const GaussianReference& ref,
                                      std::size_t directions, double eps, std::uint64_t seed,
                                      const RateOptions& opts) {
    if (!(s > 2.0 * p)) throw InputError("two_sample_experiment: requires s > 2p");
    if (grid.empty() || replicates == 0)
        throw InputError("two_sample_experiment: empty grid or zero replicates");
    spec_mu.validate();
    spec_nu.validate();
    if (spec_mu.dimension != spec_nu.dimension || spec_mu.dimension != ref.dimension())
        throw InputError("two_sample_experiment: dimension mismatch");

    const double c_mu = rate_bound_constant(p, s, spec_mu.analytic_moment(s));
    const double c_nu = rate_bound_constant(p, s, spec_nu.analytic_moment(s));

    const DirectionSet dirs = sample_directions(ref, directions, eps, rng::derive(seed, 1),
                                                100000000ull, opts.threads);
    const DiscreteMeasure golden_mu =
        sample_measure(spec_mu, opts.reference_atoms, rng::derive(seed, 2));
    const DiscreteMeasure golden_nu =
        sample_measure(spec_nu, opts.reference_atoms, rng::derive(seed, 4));
    const auto qmu = compressed_projections(golden_mu, dirs, opts.compress_atoms, opts.threads);
    const auto qnu = compressed_projections(golden_nu, dirs, opts.compress_atoms, opts.threads);

    double ref_pow = 0.0;
    for (std::size_t j = 0; j < dirs.size(); ++j)
        ref_pow += w1d_pow_sorted_uniform(qmu[j].data(), qmu[j].size(), qnu[j].data(),
                                          qnu[j].size(), p);
    ref_pow /= static_cast<double>(dirs.size());
    const double sw_ref = std::pow(ref_pow, 1.0 / p);

    TwoSampleReport rep;
    rep.sw_reference = sw_ref;
    rep.p = p;
    rep.s = s;
    rep.seed = seed;
    rep.rows.resize(grid.size());

    const std::uint64_t sample_key = rng::derive(seed, 3);
    parallel_for(grid.size(), opts.threads, [&](std::size_t g) {
        const auto [n, m] = grid[g];
        double mean = 0.0, sq = 0.0;
        std::vector<double> proj_mu, proj_nu;
        for (std::size_t r = 0; r < replicates; ++r) {
            const std::uint64_t key = rng::derive(rng::derive(sample_key, g), r);
            const DiscreteMeasure emp_mu = sample_measure(spec_mu, n, rng::derive(key, 0));
            const DiscreteMeasure emp_nu = sample_measure(spec_nu, m, rng::derive(key, 1));
            proj_mu.resize(n);
            proj_nu.resize(m);
            double pow_sum = 0.0;
            for (std::size_t j = 0; j < dirs.size(); ++j) {
                const Vector& theta = dirs.directions[j];
                for (std::size_t i = 0; i < n; ++i) proj_mu[i] = inner(theta, emp_mu.points()[i]);
                for (std::size_t i = 0; i < m; ++i) proj_nu[i] = inner(theta, emp_nu.points()[i]);
                std::sort(proj_mu.begin(), proj_mu.end());
                std::sort(proj_nu.begin(), proj_nu.end());
                pow_sum += w1d_pow_sorted_uniform(proj_mu.data(), n, proj_nu.data(), m, p);
            }
            const double est = std::pow(pow_sum / static_cast<double>(dirs.size()), 1.0 / p);
            const double err = std::abs(est - sw_ref);
            mean += err;
            sq += err * err;
        }
        mean /= static_cast<double>(replicates);
        const double var = replicates > 1
                               ? std::max(0.0, (sq - static_cast<double>(replicates) * mean * mean) /
                                                   static_cast<double>(replicates - 1))
                               : 0.0;
        TwoSampleRow& row = rep.rows[g];
        row.n = n;
        row.m = m;
        row.mean_abs_error = mean;
        row.std_error = std::sqrt(var / static_cast<double>(replicates));
        row.bound = c_mu * std::pow(static_cast<double>(n), -1.0 / (2.0 * p)) +
                    c_nu * std::pow(static_cast<double>(m), -1.0 / (2.0 * p));
    });
    return rep;
}

void CounterexampleReport::write_csv(std::ostream& out) const {
    csv::Writer w(out);
    w.row(header_to_row({"n", "sw2_estimate", "sw2_squared", "std_error", "m2_exact"}));
    for (const CounterexampleRow& r : rows)
        w.row({csv::format(r.n), csv::format(r.sw2), csv::format(r.sw2_squared),
               csv::format(r.std_error), csv::format(r.m2_exact)});
}

CounterexampleReport counterexample_run(const GaussianReference& ref,
                                        const std::vector<std::size_t>& n_list,
                                        std::size_t directions, double eps, std::uint64_t seed,
                                        unsigned threads) {
    if (n_list.empty()) throw InputError("counterexample_run: empty n list");
    const std::size_t d = ref.dimension();
    for (std::size_t n : n_list)
        if (n == 0 || n > d)
            throw InputError("counterexample_run: requires 1 <= n <= truncation dimension");

    const DirectionSet dirs =
        sample_directions(ref, directions, eps, rng::derive(seed, 1), 100000000ull, threads);

    CounterexampleReport rep;
    rep.dimension = d;
    rep.directions = directions;
    rep.seed = seed;
    rep.rows.resize(n_list.size());
    const std::size_t k = dirs.size();

    for (std::size_t a = 0; a < n_list.size(); ++a) {
        const std::size_t n = n_list[a];
        // Per direction: W_2^2(delta_{n^{1/3} e_n}, delta_0) = n^{2/3} theta_n^2.
        const double scale = std::pow(static_cast<double>(n), 2.0 / 3.0);
        double mean = 0.0, sq = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double t = dirs.directions[j][n - 1];
            const double v = scale * t * t;
            mean += v;
            sq += v * v;
        }
        mean /= static_cast<double>(k);
        const double var =
            k > 1 ? std::max(0.0, (sq - static_cast<double>(k) * mean * mean) /
                                      static_cast<double>(k - 1))
                  : 0.0;
        CounterexampleRow& row = rep.rows[a];
        row.n = n;
        row.sw2_squared = mean;
        row.sw2 = std::sqrt(mean);
        row.std_error = std::sqrt(var / static_cast<double>(k));
        row.m2_exact = scale;
    }

    std::vector<double> xs, ys;
    for (const CounterexampleRow& r : rep.rows) {
        xs.push_back(static_cast<double>(r.n));
        ys.push_back(r.sw2);
    }
    rep.fit = fit_loglog(xs, ys);
    return rep;
}

void NarrowDemoReport::write_csv(std::ostream& out) const {
    csv::Writer w(out);
    w.row(header_to_row(
        {"series", "n", "sw_estimate", "std_error", "moment_p", "w_upper", "cdf_gap"}));
    for (const NarrowDemoRow& r : rows)
        w.row({csv::escape(r.series), csv::format(r.n), csv::format(r.sw),
               csv::format(r.std_error), csv::format(r.moment_p), csv::format(r.w_upper),
               csv::format(r.cdf_gap)});
}

NarrowDemoReport narrow_convergence_demo(const GaussianReference& ref, std::uint64_t seed,
                                         double p, std::size_t directions, double eps,
                                         unsigned threads) {
    const std::size_t d = ref.dimension();
    const DirectionSet dirs =
        sample_directions(ref, directions, eps, rng::derive(seed, 1), 100000000ull, threads);

    NarrowDemoReport rep;
    rep.p = p;
    rep.seed = seed;

    // Point masses shrinking to the origin: narrow convergence plus
    // converging moments, and SW_p <= W_p = 1/n.
    const DiscreteMeasure origin = DiscreteMeasure::dirac(Vector(d, 0.0));
    for (std::size_t n = 1; n <= 256; n *= 2) {
        Vector x(d, 0.0);
        x[0] = 1.0 / static_cast<double>(n);
        const SWEstimate est = sw_estimate(DiscreteMeasure::dirac(x), origin, p, dirs);
        NarrowDemoRow row;
        row.series = "point-shrink";
        row.n = n;
        row.sw = est.value;
        row.std_error = est.std_error;
        row.moment_p = std::pow(1.0 / static_cast<double>(n), p);
        row.w_upper = 1.0 / static_cast<double>(n);
        row.cdf_gap = 0.0;
        rep.rows.push_back(row);
    }

    // Bounded domain: empirical measures of the unit ball; SW -> 0 iff the
    // projected CDFs converge on a grid.
    const MeasureSpec ball = MeasureSpec::uniform_ball(d, 1.0);
    const DiscreteMeasure golden = sample_measure(ball, 20000, rng::derive(seed, 2));
    const std::size_t cdf_dirs = std::min<std::size_t>(8, dirs.size());
    for (std::size_t n : {16u, 64u, 256u, 1024u, 4096u}) {
        const DiscreteMeasure emp = sample_measure(ball, n, rng::derive(seed, 100 + n));
        const SWEstimate est = sw_estimate(emp, golden, p, dirs);
        double gap = 0.0;
        for (std::size_t j = 0; j < cdf_dirs; ++j) {
            const Projected1DMeasure pe = project(emp, dirs.directions[j]);
            const Projected1DMeasure pg = project(golden, dirs.directions[j]);
            for (int g = 0; g <= 100; ++g) {
                const double x = -1.05 + 2.1 * static_cast<double>(g) / 100.0;
                double fe = 0.0, fg = 0.0;
                for (std::size_t i = 0; i < pe.size() && pe.values()[i] <= x; ++i)
                    fe += pe.weights()[i];
                for (std::size_t i = 0; i < pg.size() && pg.values()[i] <= x; ++i)
                    fg += pg.weights()[i];
                gap = std::max(gap, std::abs(fe - fg));
            }
        }
        NarrowDemoRow row;
        row.series = "ball-empirical";
        row.n = n;
        row.sw = est.value;
        row.std_error = est.std_error;
        row.moment_p = moment_p(emp, p);
        row.w_upper = 0.0;
        row.cdf_gap = gap;
        rep.rows.push_back(row);
    }
    return rep;
}

void DimSweepReport::write_csv(std::ostream& out) const {
    csv::Writer w(out);
    w.row(header_to_row({"d", "mean_w", "mean_sw"}));
    for (const DimSweepRow& r : rows)
        w.row({csv::format(r.d), csv::format(r.mean_w), csv::format(r.mean_sw)});
}

void DimSweepReport::write_timing_csv(std::ostream& out) const {
    csv::Writer w(out);
    w.row(header_to_row({"d", "seconds_per_w", "seconds_per_sw"}));
    for (const DimSweepTiming& r : timings)
        w.row({csv::format(r.d), csv::format(r.seconds_per_w), csv::format(r.seconds_per_sw)});
}

DimSweepReport w_vs_sw_dimension_sweep(double p, std::size_t n, std::size_t replicates,
                                       const std::vector<std::size_t>& d_list,
                                       std::size_t directions, double eps, std::uint64_t seed,
                                       unsigned threads) {
    if (n > 512) throw InputError("w_vs_sw_dimension_sweep: n exceeds the exact-OT cap");
    DimSweepReport rep;
    rep.p = p;
    rep.n = n;
    rep.replicates = replicates;
    rep.seed = seed;

    using clock = std::chrono::steady_clock;
    for (std::size_t idx = 0; idx < d_list.size(); ++idx) {
        const std::size_t d = d_list[idx];
        const GaussianReference ref = GaussianReference::isotropic(d);
        const MeasureSpec spec = MeasureSpec::gaussian_kl(ref.eigenvalues);
        const std::uint64_t key_d = rng::derive(seed, 10 + idx);
        const DirectionSet dirs = sample_directions(ref, directions, eps,
                                                    rng::derive(key_d, 1), 100000000ull, threads);
        double sum_w = 0.0, sum_sw = 0.0, t_w = 0.0, t_sw = 0.0;
        for (std::size_t r = 0; r < replicates; ++r) {
            const std::uint64_t key = rng::derive(key_d, 100 + r);
            const DiscreteMeasure a = sample_measure(spec, n, rng::derive(key, 0));
            const DiscreteMeasure b = sample_measure(spec, n, rng::derive(key, 1));

            const auto t0 = clock::now();
            sum_w += wasserstein_exact(a, b, p).value;
            const auto t1 = clock::now();
            sum_sw += sw_estimate(a, b, p, dirs).value;
            const auto t2 = clock::now();
            t_w += std::chrono::duration<double>(t1 - t0).count();
            t_sw += std::chrono::duration<double>(t2 - t1).count();
        }
        const double inv = 1.0 / static_cast<double>(replicates);
        rep.rows.push_back({d, sum_w * inv, sum_sw * inv});
        rep.timings.push_back({d, t_w * inv, t_sw * inv});
    }
    return rep;
}

} // namespace sw
