#pragma once

// Small dense linear algebra over F_p, written separately from the library's
// linfp so oracle results do not share code with the engine under test.

#include <cstdint>
#include <vector>

namespace oracle {

using Row = std::vector<std::int64_t>;
using Dense = std::vector<Row>; // list of row vectors

std::int64_t mod(std::int64_t a, std::int64_t p);
std::int64_t inverse(std::int64_t a, std::int64_t p);

/// Rank of the span of the given vectors (all of length n).
std::size_t rank(Dense vectors, std::int64_t p);

/// Basis of {x in F_p^n : sum_j x_j * columns[j] = 0}, where columns[j] has length m.
Dense null_space(const Dense& columns, std::size_t n, std::int64_t p);

/// Dimension of span(a) + span(b).
std::size_t sum_dim(const Dense& a, const Dense& b, std::int64_t p);

} // namespace oracle
