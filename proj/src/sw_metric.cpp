#include "sw/sw_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sw/discrete_ot.hpp"
#include "sw/errors.hpp"
#include "sw/ot1d.hpp"

namespace sw {

double SWEstimate::mean_pow() const {
    double s = 0.0;
    for (double v : per_direction) s += v;
    return per_direction.empty() ? 0.0 : s / static_cast<double>(per_direction.size());
}

SWEstimate sw_estimate(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                       const DirectionSet& dirs) {
    if (!(p >= 1.0)) throw InputError("sw_estimate: p must be >= 1");
    if (mu.dimension() != nu.dimension() || mu.dimension() != dirs.dimension())
        throw InputError("sw_estimate: dimension mismatch");

    const std::size_t k = dirs.size();
    SWEstimate est;
    est.p = p;
    est.direction_count = k;
    est.per_direction.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const Vector& theta = dirs.directions[j];
        const double w = w1d(project(mu, theta), project(nu, theta), p);
        est.per_direction[j] = std::pow(w, p);
    }
    const double mean = est.mean_pow();
    est.value = std::pow(mean, 1.0 / p);
    double var = 0.0;
    for (double v : est.per_direction) var += (v - mean) * (v - mean);
    var = k > 1 ? var / static_cast<double>(k - 1) : 0.0;
    est.std_error = std::sqrt(var / static_cast<double>(k));
    return est;
}

SWEstimate sw_finite_uniform(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                             std::size_t k, std::uint64_t seed) {
    if (mu.dimension() < 2) throw InputError("sw_finite_uniform: dimension must be >= 2");
    return sw_estimate(mu, nu, p, sample_directions_uniform(mu.dimension(), k, seed));
}

LipschitzReport check_theta_lipschitz(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                      double p,
                                      const std::vector<std::pair<Vector, Vector>>& dir_pairs,
                                      double tol) {
    const double mp_mu = moment_p(mu, p);
    const double mp_nu = moment_p(nu, p);
    const double lip_w = std::pow(mp_mu, 1.0 / p) + std::pow(mp_nu, 1.0 / p);
    const double lip_wp =
        p * std::pow(2.0, p - 1.0) * std::pow(std::max(mp_mu, mp_nu), (p - 1.0) / p) * lip_w;
    const double bound = std::pow(2.0, p) * (mp_mu + mp_nu);

    LipschitzReport rep;
    rep.worst_w_slack = -std::numeric_limits<double>::infinity();
    rep.worst_wp_slack = -std::numeric_limits<double>::infinity();
    for (const auto& [theta, gamma] : dir_pairs) {
        const double w_theta = w1d(project(mu, theta), project(nu, theta), p);
        const double w_gamma = w1d(project(mu, gamma), project(nu, gamma), p);
        Vector diff(theta.size());
        for (std::size_t i = 0; i < theta.size(); ++i) diff[i] = theta[i] - gamma[i];
        const double dist = norm(diff);

        const double w_excess = std::abs(w_theta - w_gamma) - lip_w * dist;
        const double wp_excess =
            std::abs(std::pow(w_theta, p) - std::pow(w_gamma, p)) - lip_wp * dist;
        rep.worst_w_slack = std::max(rep.worst_w_slack, w_excess);
        rep.worst_wp_slack = std::max(rep.worst_wp_slack, wp_excess);
        if (w_excess > tol) ++rep.w_violations;
        if (wp_excess > tol) ++rep.wp_violations;
        if (std::pow(w_theta, p) > bound + tol || std::pow(w_gamma, p) > bound + tol)
            ++rep.bound_violations;
        ++rep.pairs_checked;
    }
    return rep;
}

SwLeqWReport check_sw_leq_w(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                            const DirectionSet& dirs, double tol, std::size_t support_cap) {
    const SWEstimate est = sw_estimate(mu, nu, p, dirs);
    const ExactOtResult exact = wasserstein_exact(mu, nu, p, support_cap);
    const double wp = std::pow(exact.value, p);

    SwLeqWReport rep;
    rep.sw_value = est.value;
    rep.sw_std_error = est.std_error;
    rep.w_value = exact.value;
    rep.worst_excess = -std::numeric_limits<double>::infinity();
    for (double v : est.per_direction) {
        const double excess = v - wp;
        rep.worst_excess = std::max(rep.worst_excess, excess);
        if (excess > tol) ++rep.per_direction_violations;
    }
    rep.value_ok = est.value <= exact.value + 3.0 * est.std_error + tol;
    return rep;
}

} // namespace sw
