#pragma once

#include <cstdint>
#include <map>
#include <utility>

namespace oracle {

/// HH_{s,t} of F_p[u]/(u^height) with |u| = degree (even), from the
/// unnormalized Hochschild complex A^{(x) s+1} and dense ranks.
/// height 0 means the polynomial ring. Nonzero entries only.
std::map<std::pair<int, int>, std::size_t> dense_hochschild(std::int64_t p, int height, int degree, int s_max,
                                                            int t_max);

} // namespace oracle
