#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sw/hilbert.hpp"

// Deterministic generators for randomized property suites (selftest,
// unit tests, acceptance runs).

namespace sw::testgen {

// Random measure with 1..max_atoms atoms, coordinates uniform in [-1,1].
// uniform_weights=false draws random weights (renormalized).
DiscreteMeasure random_measure(std::size_t d, std::size_t max_atoms, std::uint64_t key,
                               bool uniform_weights = false);

// Random unit vector.
Vector random_direction(std::size_t d, std::uint64_t key);

} // namespace sw::testgen
