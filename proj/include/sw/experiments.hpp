#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "sw/hilbert.hpp"
#include "sw/surface.hpp"

// Empirical-rate, two-sample, counterexample, narrow-convergence and
// W-vs-SW dimension-sweep experiments, all deterministic in their full
// parameter set (seed included) and serialized as CSV.

namespace sw {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    bool valid = false;
};

// Least squares on (log x, log y); entries with y <= 0 invalidate the fit.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Corrected constant for the empirical-rate bound C n^{-1/(2p)}:
// C = (p 2^p (1+M_s)^{1/2} (1 + 1/(s/2 - p)))^{1/p}.
double rate_bound_constant(double p, double s, double m_s);

struct RateRow {
    std::size_t n = 0;
    std::size_t replicate = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    double bound = 0.0;
};

struct RateReport {
    std::vector<RateRow> rows;
    std::vector<std::size_t> n_grid;
    std::vector<double> mean_estimates; // per n, over replicates
    SlopeFit fit;                       // smallest n excluded (transient)
    double p = 1.0;
    double s = 0.0;
    double bound_constant = 0.0;
    std::size_t dimension = 0;
    std::size_t replicates = 0;
    std::size_t directions = 0;
    std::uint64_t seed = 0;
    bool degenerate = false; // all estimates zero; slope undefined

    void write_csv(std::ostream& out) const;
};

struct RateOptions {
    std::size_t reference_atoms = 100000; // golden empirical stand-in for mu
    std::size_t compress_atoms = 2048;    // per-direction quantile compression
    unsigned threads = 1;
};

RateReport rate_experiment(const MeasureSpec& spec, double p, double s,
                           const std::vector<std::size_t>& n_grid, std::size_t replicates,
                           const GaussianReference& ref, std::size_t directions, double eps,
                           std::uint64_t seed, const RateOptions& opts = {});

struct TwoSampleRow {
    std::size_t n = 0;
    std::size_t m = 0;
    double mean_abs_error = 0.0; // E|SW(mu^n,nu^m) - SW(mu,nu)|
    double std_error = 0.0;
    double bound = 0.0;
};

struct TwoSampleReport {
    std::vector<TwoSampleRow> rows;
    double sw_reference = 0.0; // SW between the golden discretizations
    double p = 1.0, s = 0.0;
    std::uint64_t seed = 0;

    void write_csv(std::ostream& out) const;
};

TwoSampleReport two_sample_experiment(const MeasureSpec& spec_mu, const MeasureSpec& spec_nu,
                                      double p, double s,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& grid,
                                      std::size_t replicates, const GaussianReference& ref,
                                      std::size_t directions, double eps, std::uint64_t seed,
                                      const RateOptions& opts = {});

struct CounterexampleRow {
    std::size_t n = 0;
    double sw2 = 0.0;          // SW_2(mu^n, delta_0) estimate
    double sw2_squared = 0.0;  // mean per-direction W_2^2
    double std_error = 0.0;    // SE of the squared mean
    double m2_exact = 0.0;     // n^{2/3}
};

struct CounterexampleReport {
    std::vector<CounterexampleRow> rows;
    SlopeFit fit; // log sw2 vs log n
    std::size_t dimension = 0;
    std::size_t directions = 0;
    std::uint64_t seed = 0;

    void write_csv(std::ostream& out) const;
};

// mu^n = delta_{n^{1/3} e_n} against delta_0; requires max n <= dimension.
CounterexampleReport counterexample_run(const GaussianReference& ref,
                                        const std::vector<std::size_t>& n_list,
                                        std::size_t directions, double eps, std::uint64_t seed,
                                        unsigned threads = 1);

struct NarrowDemoRow {
    std::string series; // "point-shrink" or "ball-empirical"
    std::size_t n = 0;
    double sw = 0.0;
    double std_error = 0.0;
    double moment_p = 0.0;
    double w_upper = 0.0;  // point-shrink only: W_p = 1/n
    double cdf_gap = 0.0;  // ball-empirical only: sup grid CDF gap
};

struct NarrowDemoReport {
    std::vector<NarrowDemoRow> rows;
    double p = 2.0;
    std::uint64_t seed = 0;

    void write_csv(std::ostream& out) const;
};

NarrowDemoReport narrow_convergence_demo(const GaussianReference& ref, std::uint64_t seed,
                                         double p = 2.0, std::size_t directions = 2048,
                                         double eps = 0.05, unsigned threads = 1);

struct DimSweepRow {
    std::size_t d = 0;
    double mean_w = 0.0;
    double mean_sw = 0.0;
};

struct DimSweepTiming {
    std::size_t d = 0;
    double seconds_per_w = 0.0;
    double seconds_per_sw = 0.0;
};

struct DimSweepReport {
    std::vector<DimSweepRow> rows;
    std::vector<DimSweepTiming> timings; // wall clock; kept out of the main CSV
    double p = 1.0;
    std::size_t n = 0;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;

    void write_csv(std::ostream& out) const;
    void write_timing_csv(std::ostream& out) const;
};

// E W_p vs E SW_p between independent empirical pairs of the isotropic
// Gaussian family, across dimensions.
DimSweepReport w_vs_sw_dimension_sweep(double p, std::size_t n, std::size_t replicates,
                                       const std::vector<std::size_t>& d_list,
                                       std::size_t directions, double eps, std::uint64_t seed,
                                       unsigned threads = 1);

} // namespace sw
