#include "sw/discrete_ot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <tuple>

#include "sw/errors.hpp"

namespace sw {

namespace {

constexpr std::int64_t kFallbackScale = 1000000000LL;
constexpr std::int64_t kMaxDenominator = 1000000LL;

// Best rational approximation w ~ num/den with den <= kMaxDenominator,
// by continued fractions.
std::int64_t rational_denominator(double w) {
    double x = w;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(x);
        const std::int64_t ai = static_cast<std::int64_t>(fl);
        const std::int64_t p2 = ai * p1 + p0;
        const std::int64_t q2 = ai * q1 + q0;
        if (q2 > kMaxDenominator || q2 <= 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (std::abs(w - static_cast<double>(p1) / static_cast<double>(q1)) < 1e-12) break;
        const double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    return q1 > 0 ? q1 : 1;
}

std::int64_t lcm_capped(std::int64_t a, std::int64_t b, std::int64_t cap) {
    const std::int64_t g = std::gcd(a, b);
    const std::int64_t q = a / g;
    if (q > cap / b) return cap + 1;
    return q * b;
}

// Integer masses summing exactly to scale; rounding residue goes to the
// largest atom.
std::vector<std::int64_t> integer_masses(const std::vector<double>& w, std::int64_t scale) {
    std::vector<std::int64_t> m(w.size());
    std::int64_t total = 0;
    std::size_t largest = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        m[k] = std::llround(w[k] * static_cast<double>(scale));
        total += m[k];
        if (w[k] > w[largest]) largest = k;
    }
    m[largest] += scale - total;
    if (m[largest] < 0) throw InputError("wasserstein_exact: weight rationalization failed");
    return m;
}

} // namespace

std::vector<double> TransportPlan::row_sums() const {
    std::vector<double> r(n_source, 0.0);
    for (const auto& [i, j, m] : entries) r[i] += m;
    return r;
}

std::vector<double> TransportPlan::col_sums() const {
    std::vector<double> c(n_target, 0.0);
    for (const auto& [i, j, m] : entries) c[j] += m;
    return c;
}

ExactOtResult wasserstein_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                double p, std::size_t support_cap) {
    if (!(p >= 1.0)) throw InputError("wasserstein_exact: p must be >= 1");
    if (mu.dimension() != nu.dimension())
        throw InputError("wasserstein_exact: dimension mismatch");
    const std::size_t n = mu.size();
    const std::size_t m = nu.size();
    if (n > support_cap || m > support_cap)
        throw ResourceError("wasserstein_exact: support cap exceeded");

    // Cost matrix ||x_i - y_j||^p.
    std::vector<double> cost(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            const Vector& x = mu.points()[i];
            const Vector& y = nu.points()[j];
            for (std::size_t c = 0; c < x.size(); ++c) {
                const double d = x[c] - y[c];
                s += d * d;
            }
            cost[i * m + j] = p == 2.0 ? s : std::pow(std::sqrt(s), p);
        }
    }

    // Scale = lcm of weight denominators, capped; fallback to 1e9 rounding.
    std::int64_t scale = 1;
    for (const auto& ws : {mu.weights(), nu.weights()}) {
        for (double w : ws) {
            scale = lcm_capped(scale, rational_denominator(w), kFallbackScale);
            if (scale > kFallbackScale) break;
        }
    }
    if (scale > kFallbackScale) scale = kFallbackScale;
    std::vector<std::int64_t> supply = integer_masses(mu.weights(), scale);
    std::vector<std::int64_t> demand = integer_masses(nu.weights(), scale);

    // Successive shortest paths with Johnson potentials; dense Dijkstra on
    // the bipartite residual graph (sources 0..n-1, sinks n..n+m-1).
    std::vector<std::int64_t> flow(n * m, 0);
    std::vector<long double> pot(n + m, 0.0L);
    std::int64_t remaining = scale;

    const long double INF = std::numeric_limits<long double>::infinity();
    std::vector<long double> dist(n + m);
    std::vector<std::int32_t> prev(n + m);
    std::vector<char> done(n + m);

    while (remaining > 0) {
        std::fill(dist.begin(), dist.end(), INF);
        std::fill(prev.begin(), prev.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        for (std::size_t i = 0; i < n; ++i)
            if (supply[i] > 0) dist[i] = 0.0L;

        for (std::size_t iter = 0; iter < n + m; ++iter) {
            std::size_t u = n + m;
            long double best = INF;
            for (std::size_t v = 0; v < n + m; ++v)
                if (!done[v] && dist[v] < best) { best = dist[v]; u = v; }
            if (u == n + m) break;
            done[u] = 1;
            if (u < n) {
                for (std::size_t j = 0; j < m; ++j) {
                    const long double rc = std::max<long double>(
                        0.0L, cost[u * m + j] + pot[u] - pot[n + j]);
                    if (dist[u] + rc < dist[n + j]) {
                        dist[n + j] = dist[u] + rc;
                        prev[n + j] = static_cast<std::int32_t>(u);
                    }
                }
            } else {
                const std::size_t j = u - n;
                for (std::size_t i = 0; i < n; ++i) {
                    if (flow[i * m + j] <= 0) continue;
                    const long double rc = std::max<long double>(
                        0.0L, -cost[i * m + j] + pot[u] - pot[i]);
                    if (dist[u] + rc < dist[i]) {
                        dist[i] = dist[u] + rc;
                        prev[i] = static_cast<std::int32_t>(u);
                    }
                }
            }
        }

        // Nearest sink with free demand.
        std::size_t tgt = n + m;
        long double best = INF;
        for (std::size_t j = 0; j < m; ++j)
            if (demand[j] > 0 && dist[n + j] < best) { best = dist[n + j]; tgt = n + j; }
        if (tgt == n + m)
            throw InputError("wasserstein_exact: internal infeasibility");

        // Bottleneck along the augmenting path.
        std::int64_t push = demand[tgt - n];
        for (std::size_t v = tgt; prev[v] != -1; v = static_cast<std::size_t>(prev[v])) {
            const std::size_t u = static_cast<std::size_t>(prev[v]);
            if (u >= n) { // backward arc v(source) <- u(sink)
                push = std::min(push, flow[v * m + (u - n)]);
            }
        }
        {
            std::size_t v = tgt;
            while (prev[v] != -1) v = static_cast<std::size_t>(prev[v]);
            push = std::min(push, supply[v]);
        }

        for (std::size_t v = tgt; prev[v] != -1; v = static_cast<std::size_t>(prev[v])) {
            const std::size_t u = static_cast<std::size_t>(prev[v]);
            if (u < n) flow[u * m + (v - n)] += push;
            else flow[v * m + (u - n)] -= push;
        }
        {
            std::size_t v = tgt;
            while (prev[v] != -1) v = static_cast<std::size_t>(prev[v]);
            supply[v] -= push;
        }
        demand[tgt - n] -= push;
        remaining -= push;

        for (std::size_t v = 0; v < n + m; ++v)
            if (dist[v] < INF) pot[v] += dist[v];
    }

    long double total = 0.0L;
    TransportPlan plan;
    plan.n_source = n;
    plan.n_target = m;
    const double inv_scale = 1.0 / static_cast<double>(scale);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (flow[i * m + j] <= 0) continue;
            const double mass = static_cast<double>(flow[i * m + j]) * inv_scale;
            total += static_cast<long double>(mass) * cost[i * m + j];
            plan.entries.emplace_back(i, j, mass);
        }
    }
    ExactOtResult out;
    out.value = std::pow(static_cast<double>(total), 1.0 / p);
    out.plan = std::move(plan);
    return out;
}

} // namespace sw
