#pragma once

#include <cstddef>
#include <vector>

#include "sw/hilbert.hpp"

// Exact W_p between small-support discrete measures via minimum-cost flow
// on the bipartite support graph with cost ||x_i - y_j||^p.

namespace sw {

struct TransportPlan {
    std::size_t n_source = 0;
    std::size_t n_target = 0;
    // (source atom, target atom, mass); masses nonnegative, marginals match.
    std::vector<std::tuple<std::size_t, std::size_t, double>> entries;

    std::vector<double> row_sums() const;
    std::vector<double> col_sums() const;
};

struct ExactOtResult {
    double value = 0.0; // W_p
    TransportPlan plan;
};

ExactOtResult wasserstein_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                double p, std::size_t support_cap = 512);

} // namespace sw
