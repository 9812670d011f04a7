#include "dense_fp.hpp"

#include <utility>

namespace oracle {

std::int64_t mod(std::int64_t a, std::int64_t p)
{
    a %= p;
    return a < 0 ? a + p : a;
}

std::int64_t inverse(std::int64_t a, std::int64_t p)
{
    // Fermat
    std::int64_t result = 1;
    std::int64_t base = mod(a, p);
    for (std::int64_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
    }
    return result;
}

namespace {

/// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> eliminate(Dense& rows, std::int64_t p)
{
    std::vector<std::size_t> pivots;
    if (rows.empty())
        return pivots;
    const std::size_t n = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && mod(rows[pivot][c], p) == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[r], rows[pivot]);
        const std::int64_t inv = inverse(rows[r][c], p);
        for (auto& x : rows[r])
            x = mod(x * inv, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r)
                continue;
            const std::int64_t f = mod(rows[i][c], p);
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                rows[i][j] = mod(rows[i][j] - f * rows[r][j], p);
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

} // namespace

std::size_t rank(Dense vectors, std::int64_t p) { return eliminate(vectors, p).size(); }

Dense null_space(const Dense& columns, std::size_t n, std::int64_t p)
{
    // system matrix: rows indexed by the m coordinates, columns by the n unknowns
    const std::size_t m = columns.empty() ? 0 : columns.front().size();
    Dense a(m, Row(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i)
            a[i][j] = mod(columns[j][i], p);
    const auto pivots = eliminate(a, p);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    Dense out;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        Row x(n, 0);
        x[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            x[pivots[r]] = mod(-a[r][f], p);
        out.push_back(std::move(x));
    }
    return out;
}

std::size_t sum_dim(const Dense& a, const Dense& b, std::int64_t p)
{
    Dense all = a;
    all.insert(all.end(), b.begin(), b.end());
    return rank(std::move(all), p);
}

} // namespace oracle
