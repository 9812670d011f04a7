#pragma once

#include <cstdint>
#include <string>

#include "gradss/dga.hpp"

namespace oracle {

/// A bigraded DGA with one derivation of shift (-r, r-1). Cycle generators have
/// d = 0; each source generator maps into the subalgebra on the cycle generators,
/// so d^2 = 0 and Leibniz hold by construction.
struct RandomDga {
    std::uint64_t seed = 0;
    int r = 2;
    int n = 0; ///< box
    gradss::dga::PresentationPtr presentation;
    gradss::dga::Derivation d;
    std::string description;
};

RandomDga random_dga(std::uint64_t seed);

} // namespace oracle
