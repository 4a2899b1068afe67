#include "sw/testgen.hpp"

#include <cmath>

#include "sw/errors.hpp"
#include "sw/rng.hpp"

namespace sw::testgen {

DiscreteMeasure random_measure(std::size_t d, std::size_t max_atoms, std::uint64_t key,
                               bool uniform_weights) {
    if (d == 0 || max_atoms == 0) throw InputError("random_measure: bad parameters");
    const std::size_t n = 1 + static_cast<std::size_t>(rng::at(key, 0) % max_atoms);
    std::vector<Vector> pts(n, Vector(d));
    std::vector<double> wts(n);
    std::uint64_t ctr = 1;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < d; ++j)
            pts[k][j] = 2.0 * rng::uniform01(key, ctr++) - 1.0;
        wts[k] = uniform_weights ? 1.0 : 0.05 + rng::uniform01(key, ctr++);
    }
    return DiscreteMeasure(std::move(pts), std::move(wts));
}

Vector random_direction(std::size_t d, std::uint64_t key) {
    Vector x(d);
    for (std::size_t j = 0; j + 1 < d; j += 2) rng::gaussian_pair(key, j / 2, x[j], x[j + 1]);
    if (d % 2 == 1) x[d - 1] = rng::gaussian(key, d / 2);
    const double r = norm(x);
    if (r < 1e-12) return random_direction(d, rng::derive(key, 1));
    for (double& v : x) v /= r;
    return x;
}

} // namespace sw::testgen
