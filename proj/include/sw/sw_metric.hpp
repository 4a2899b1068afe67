#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sw/hilbert.hpp"
#include "sw/surface.hpp"

// Monte Carlo estimator of the sliced Wasserstein distance over a
// direction set, the finite-dimensional uniform-sphere baseline, and the
// Lipschitz / boundedness / SW<=W inequality checks.

namespace sw {

struct SWEstimate {
    double value = 0.0; // (mean per_direction)^{1/p}
    double p = 1.0;
    std::vector<double> per_direction; // W_p^p values
    double std_error = 0.0;            // SE of the mean of per_direction
    std::size_t direction_count = 0;

    double mean_pow() const; // mean of per_direction (= value^p)
};

// Reusing one DirectionSet across pairs gives a coupled comparison; the
// per-direction inequalities then hold without Monte Carlo slack.
SWEstimate sw_estimate(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                       const DirectionSet& dirs);

// Baseline with directions uniform on the Euclidean sphere.
SWEstimate sw_finite_uniform(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                             std::size_t k, std::uint64_t seed);

struct LipschitzReport {
    std::size_t pairs_checked = 0;
    std::size_t w_violations = 0;   // Lipschitz bound on W_p
    std::size_t wp_violations = 0;  // Lipschitz bound on W_p^p
    std::size_t bound_violations = 0; // uniform bound 2^p(M_p+M_p)
    double worst_w_slack = 0.0;   // max of |dW| - L ||dtheta|| (negative when tight)
    double worst_wp_slack = 0.0;
};

LipschitzReport check_theta_lipschitz(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                      double p,
                                      const std::vector<std::pair<Vector, Vector>>& dir_pairs,
                                      double tol = 1e-10);

struct SwLeqWReport {
    double sw_value = 0.0;
    double sw_std_error = 0.0;
    double w_value = 0.0;
    std::size_t per_direction_violations = 0;
    double worst_excess = 0.0; // max per_direction - W_p^p
    bool value_ok = false;     // sw_value <= w_value + 3 se
};

SwLeqWReport check_sw_leq_w(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                            const DirectionSet& dirs, double tol = 1e-10,
                            std::size_t support_cap = 512);

} // namespace sw
