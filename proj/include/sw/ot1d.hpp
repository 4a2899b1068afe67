#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sw/hilbert.hpp"

// Exact one-dimensional Wasserstein distances via the monotone quantile
// coupling, plus the 1D empirical-rate machinery (Bobkov-Ledoux bound and
// the Chebyshev tail envelope).

namespace sw {

// Sorted atoms with matching weights summing to 1; equal values merged.
class Projected1DMeasure {
public:
    Projected1DMeasure(std::vector<double> values, std::vector<double> weights);

    static Projected1DMeasure uniform_sorted(std::vector<double> sorted_values);

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return values_.size(); }

private:
    std::vector<double> values_;
    std::vector<double> weights_;
};

// Pushforward of mu under x -> <theta, x>; requires ||theta|| = 1 within 1e-9.
Projected1DMeasure project(const DiscreteMeasure& mu, const Vector& theta);

// W_p between discrete 1D measures, exact by merging weight partitions.
double w1d(const Projected1DMeasure& a, const Projected1DMeasure& b, double p);

// W_p^p for two sorted equally weighted samples (fast path; n, m atoms).
double w1d_pow_sorted_uniform(const double* a, std::size_t n,
                              const double* b, std::size_t m, double p);

struct DistributionSpec1D {
    enum class Kind { Uniform, Gaussian, Point };

    Kind kind = Kind::Point;
    double a = 0.0, b = 1.0; // Uniform(a,b)
    double mean = 0.0, sd = 1.0;
    double location = 0.0; // Point

    static DistributionSpec1D uniform(double a, double b);
    static DistributionSpec1D gaussian(double mean, double sd);
    static DistributionSpec1D point(double location);

    double cdf(double x) const;
    double quantile(double u) const;
    double abs_moment(double s) const; // E|xi|^s

    // m equally weighted atoms at quantiles (i+0.5)/m.
    Projected1DMeasure quantile_discretization(std::size_t m) const;

    std::string kind_name() const;
};

// J_p = int |x|^{p-1} sqrt(F(1-F)) dx, by adaptive quadrature.
double bobkov_integral(const DistributionSpec1D& dist, double p);

// p 2^{p-1} J_p; multiply by n^{-1/2} for the empirical bound.
double bobkov_rhs(const DistributionSpec1D& dist, double p);

// x -> (1 + E|xi|^s)/(1 + |x|^s), dominating F(x)(1-F(x)).
std::function<double(double)> chebyshev_envelope(const DistributionSpec1D& dist, double s);

} // namespace sw
