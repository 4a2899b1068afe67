#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sw/hilbert.hpp"

// Gaussian reference measure gamma (Karhunen-Loeve eigenvalues) and the
// thin-shell rejection sampler for the normalized surface measure on the
// unit sphere.

namespace sw {

struct GaussianReference {
    std::vector<double> eigenvalues; // all > 0

    static GaussianReference from_eigenvalues(std::vector<double> lambda);
    // Named decay families, normalized so that sum lambda_i^2 = 1.
    static GaussianReference isotropic(std::size_t d);
    static GaussianReference poly(std::size_t d, double a);
    static GaussianReference geom(std::size_t d, double r);

    std::size_t dimension() const { return eigenvalues.size(); }
    double sum_sq() const;
    void validate() const;
};

struct DirectionSet {
    std::vector<Vector> directions; // unit vectors
    double shell_width = 0.0;       // 0 means direct normalization (uniform baseline)
    std::uint64_t proposals_used = 0;
    double acceptance_rate = 1.0;
    std::uint64_t seed = 0;

    std::size_t size() const { return directions.size(); }
    std::size_t dimension() const { return directions[0].size(); }
};

// Draws x ~ gamma, accepts 1-eps <= ||x|| <= 1+eps, emits x/||x||.
// Deterministic in all inputs; thread count never changes the output.
DirectionSet sample_directions(const GaussianReference& ref, std::size_t k, double eps,
                               std::uint64_t seed,
                               std::uint64_t max_proposals = 100000000ull,
                               unsigned threads = 1);

// Directions uniform on the Euclidean sphere (isotropic Gaussian, direct
// normalization; the finite-dimensional baseline).
DirectionSet sample_directions_uniform(std::size_t d, std::size_t k, std::uint64_t seed,
                                       unsigned threads = 1);

struct SurfaceExpectation {
    double estimate = 0.0;
    double std_error = 0.0;
};

SurfaceExpectation surface_expectation(const DirectionSet& dirs,
                                       const std::function<double(const Vector&)>& phi);
SurfaceExpectation surface_expectation(const GaussianReference& ref,
                                       const std::function<double(const Vector&)>& phi,
                                       double eps, std::size_t k, std::uint64_t seed);

// c_i = mean over directions of <theta, e_i>^2; sums to 1 per draw.
std::vector<double> direction_second_moments(const DirectionSet& dirs);
std::vector<double> direction_second_moments(const GaussianReference& ref, double eps,
                                             std::size_t k, std::uint64_t seed);

} // namespace sw
