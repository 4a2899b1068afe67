#pragma once

#include <cstddef>
#include <functional>

namespace sw::quad {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t intervals = 0;
};

// Adaptive Simpson with an explicit interval-count ceiling. Throws
// sw::DomainError if the ceiling is hit before the tolerance is met.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-8, std::size_t max_intervals = 1 << 22);

// Composite Gauss-Legendre (7-point panels); independent rule used as a
// cross-check oracle in tests.
double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                      std::size_t panels);

} // namespace sw::quad
