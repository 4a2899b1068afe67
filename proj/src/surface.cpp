#include "sw/surface.hpp"

#include <algorithm>
#include <cmath>

#include "sw/errors.hpp"
#include "sw/parallel.hpp"
#include "sw/rng.hpp"

namespace sw {

namespace {

void fill_gaussian(std::uint64_t key, std::size_t d, double* out) {
    for (std::size_t j = 0; j + 1 < d; j += 2) rng::gaussian_pair(key, j / 2, out[j], out[j + 1]);
    if (d % 2 == 1) out[d - 1] = rng::gaussian(key, d / 2);
}

} // namespace

GaussianReference GaussianReference::from_eigenvalues(std::vector<double> lambda) {
    GaussianReference ref{std::move(lambda)};
    ref.validate();
    return ref;
}

GaussianReference GaussianReference::isotropic(std::size_t d) {
    if (d == 0) throw InputError("GaussianReference: dimension must be >= 1");
    return {std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d)))};
}

GaussianReference GaussianReference::poly(std::size_t d, double a) {
    if (d == 0) throw InputError("GaussianReference: dimension must be >= 1");
    if (!(a > 0.0)) throw InputError("GaussianReference::poly: exponent must be > 0");
    std::vector<double> l(d);
    double ss = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        l[i] = std::pow(static_cast<double>(i + 1), -a);
        ss += l[i] * l[i];
    }
    const double c = 1.0 / std::sqrt(ss);
    for (double& v : l) v *= c;
    return {std::move(l)};
}

GaussianReference GaussianReference::geom(std::size_t d, double r) {
    if (d == 0) throw InputError("GaussianReference: dimension must be >= 1");
    if (!(r > 0.0 && r < 1.0)) throw InputError("GaussianReference::geom: ratio must lie in (0,1)");
    std::vector<double> l(d);
    double ss = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        l[i] = std::pow(r, static_cast<double>(i + 1));
        ss += l[i] * l[i];
    }
    const double c = 1.0 / std::sqrt(ss);
    for (double& v : l) v *= c;
    return {std::move(l)};
}

double GaussianReference::sum_sq() const {
    double s = 0.0;
    for (double l : eigenvalues) s += l * l;
    return s;
}

void GaussianReference::validate() const {
    if (eigenvalues.empty()) throw InputError("GaussianReference: needs at least one eigenvalue");
    for (double l : eigenvalues) {
        if (!(l > 0.0) || !std::isfinite(l))
            throw InputError("GaussianReference: eigenvalues must be positive and finite");
    }
}

DirectionSet sample_directions(const GaussianReference& ref, std::size_t k, double eps,
                               std::uint64_t seed, std::uint64_t max_proposals,
                               unsigned threads) {
    ref.validate();
    if (k == 0) throw InputError("sample_directions: k must be >= 1");
    if (!(eps > 0.0 && eps <= 0.5)) throw InputError("sample_directions: eps must lie in (0, 0.5]");

    const std::size_t d = ref.dimension();
    const std::uint64_t key = rng::derive(seed, 0xD19EC7);
    const double lo = 1.0 - eps;
    const double hi = 1.0 + eps;

    DirectionSet out;
    out.shell_width = eps;
    out.seed = seed;
    out.directions.reserve(k);

    const std::size_t block = 4096;
    std::vector<Vector> accepted(block);
    std::vector<char> ok(block);
    std::uint64_t proposal = 0;

    while (out.directions.size() < k) {
        if (proposal >= max_proposals) break;
        const std::size_t count = static_cast<std::size_t>(
            std::min<std::uint64_t>(block, max_proposals - proposal));
        parallel_for(count, threads, [&](std::size_t b) {
            const std::uint64_t idx = proposal + b;
            Vector x(d);
            fill_gaussian(rng::derive(key, idx), d, x.data());
            for (std::size_t j = 0; j < d; ++j) x[j] *= ref.eigenvalues[j];
            const double r = norm(x);
            if (r >= lo && r <= hi && r > 1e-12) {
                const double inv = 1.0 / r;
                for (double& v : x) v *= inv;
                accepted[b] = std::move(x);
                ok[b] = 1;
            } else {
                ok[b] = 0;
            }
        });
        // Collect in proposal order; determinism does not depend on threads.
        for (std::size_t b = 0; b < count && out.directions.size() < k; ++b) {
            ++proposal;
            if (ok[b]) out.directions.push_back(std::move(accepted[b]));
        }
    }

    out.proposals_used = proposal;
    out.acceptance_rate =
        proposal > 0 ? static_cast<double>(out.directions.size()) / static_cast<double>(proposal)
                     : 0.0;
    if (out.directions.size() < k)
        throw ResourceError("sample_directions: proposal budget exhausted (acceptance rate " +
                            std::to_string(out.acceptance_rate) +
                            "); check eigenvalue scaling");
    return out;
}

DirectionSet sample_directions_uniform(std::size_t d, std::size_t k, std::uint64_t seed,
                                       unsigned threads) {
    if (d < 2) throw InputError("sample_directions_uniform: dimension must be >= 2");
    if (k == 0) throw InputError("sample_directions_uniform: k must be >= 1");
    const std::uint64_t key = rng::derive(seed, 0x5B4E7E);
    DirectionSet out;
    out.shell_width = 0.0;
    out.seed = seed;
    out.directions.assign(k, Vector());
    parallel_for(k, threads, [&](std::size_t i) {
        Vector x(d);
        // Norm of a d-variate standard normal vanishes with probability 0;
        // redraw from shifted counters if it underflows.
        for (std::uint64_t attempt = 0;; ++attempt) {
            fill_gaussian(rng::derive(key, i + attempt * 0x10000000ull), d, x.data());
            const double r = norm(x);
            if (r > 1e-12) {
                const double inv = 1.0 / r;
                for (double& v : x) v *= inv;
                break;
            }
        }
        out.directions[i] = std::move(x);
    });
    out.proposals_used = k;
    out.acceptance_rate = 1.0;
    return out;
}

SurfaceExpectation surface_expectation(const DirectionSet& dirs,
                                       const std::function<double(const Vector&)>& phi) {
    const std::size_t k = dirs.size();
    double mean = 0.0;
    std::vector<double> vals(k);
    for (std::size_t i = 0; i < k; ++i) {
        vals[i] = phi(dirs.directions[i]);
        mean += vals[i];
    }
    mean /= static_cast<double>(k);
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var = k > 1 ? var / static_cast<double>(k - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(k))};
}

SurfaceExpectation surface_expectation(const GaussianReference& ref,
                                       const std::function<double(const Vector&)>& phi,
                                       double eps, std::size_t k, std::uint64_t seed) {
    return surface_expectation(sample_directions(ref, k, eps, seed), phi);
}

std::vector<double> direction_second_moments(const DirectionSet& dirs) {
    const std::size_t d = dirs.dimension();
    std::vector<double> c(d, 0.0);
    for (const Vector& theta : dirs.directions)
        for (std::size_t i = 0; i < d; ++i) c[i] += theta[i] * theta[i];
    const double inv = 1.0 / static_cast<double>(dirs.size());
    for (double& v : c) v *= inv;
    return c;
}

std::vector<double> direction_second_moments(const GaussianReference& ref, double eps,
                                             std::size_t k, std::uint64_t seed) {
    return direction_second_moments(sample_directions(ref, k, eps, seed));
}

} // namespace sw
