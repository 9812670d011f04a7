#include "gradss/linfp.hpp"

#include <algorithm>
#include <string>

namespace gradss::linfp {

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), field_(p), rows_(rows), cols_(cols), entries_(rows * cols, 0)
{
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n)
{
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows)
{
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    FpMatrix m(p, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw InvalidArgument("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, rows[r][c]);
    }
    return m;
}

FpMatrix FpMatrix::from_columns(std::uint32_t p, std::size_t rows, std::span<const Vec> columns)
{
    FpMatrix m(p, rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw InvalidArgument("column length " + std::to_string(columns[c].size()) + " != " +
                                  std::to_string(rows));
        for (std::size_t r = 0; r < rows; ++r)
            m.at(r, c) = columns[c][r] % p;
    }
    return m;
}

Vec FpMatrix::column(std::size_t c) const
{
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = at(r, c);
    return v;
}

Vec FpMatrix::row(std::size_t r) const
{
    return Vec(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RrefResult rref(const FpMatrix& m)
{
    FpMatrix a = m;
    const Fp& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < a.cols() && lead_row < a.rows(); ++c) {
        std::size_t pr = lead_row;
        while (pr < a.rows() && a.at(pr, c) == 0)
            ++pr;
        if (pr == a.rows())
            continue;
        if (pr != lead_row)
            for (std::size_t k = 0; k < a.cols(); ++k)
                std::swap(a.at(pr, k), a.at(lead_row, k));
        Residue scale = f.inv(a.at(lead_row, c));
        for (std::size_t k = c; k < a.cols(); ++k)
            a.at(lead_row, k) = f.mul(a.at(lead_row, k), scale);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead_row || a.at(r, c) == 0)
                continue;
            Residue factor = a.at(r, c);
            for (std::size_t k = c; k < a.cols(); ++k)
                a.at(r, k) = f.sub(a.at(r, k), f.mul(factor, a.at(lead_row, k)));
        }
        pivots.push_back(c);
        ++lead_row;
    }
    return {std::move(a), std::move(pivots)};
}

std::size_t rank(const FpMatrix& m) { return rref(m).pivots.size(); }

std::vector<Vec> kernel_basis(const FpMatrix& m)
{
    auto [reduced, pivots] = rref(m);
    const Fp& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col])
            continue;
        Vec v(m.cols(), 0);
        v[free_col] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = f.neg(reduced.at(i, free_col));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> subquotient_basis(std::uint32_t p, std::size_t ambient_dim, std::span<const Vec> cycles,
                                   std::span<const Vec> boundaries)
{
    Subspace z(p, ambient_dim, cycles);
    Subspace b(p, ambient_dim, boundaries);
    if (!z.contains(b))
        throw InconsistentSubquotient("boundaries are not contained in the cycles");
    std::vector<Vec> reduced;
    reduced.reserve(z.dim());
    for (const auto& v : z.basis())
        reduced.push_back(b.reduce(v));
    Subspace q(p, ambient_dim, reduced);
    return q.basis();
}

Vec apply(const FpMatrix& m, const Vec& v)
{
    if (v.size() != m.cols())
        throw InvalidArgument("vector length does not match matrix columns");
    const Fp& f = m.field();
    Vec out(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < m.cols(); ++c)
            acc = (acc + static_cast<std::uint64_t>(m.at(r, c)) * v[c]) % f.p();
        out[r] = static_cast<Residue>(acc);
    }
    return out;
}

FpMatrix multiply(const FpMatrix& a, const FpMatrix& b)
{
    if (a.cols() != b.rows() || a.p() != b.p())
        throw InvalidArgument("incompatible matrix product");
    FpMatrix out(a.p(), a.rows(), b.cols());
    const Fp& f = a.field();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Residue aik = a.at(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out.at(i, j) = f.add(out.at(i, j), f.mul(aik, b.at(k, j)));
        }
    return out;
}

std::optional<Vec> solve(std::uint32_t p, std::size_t ambient_dim, std::span<const Vec> columns, const Vec& v)
{
    std::vector<Vec> aug(columns.begin(), columns.end());
    aug.push_back(v);
    auto [reduced, pivots] = rref(FpMatrix::from_columns(p, ambient_dim, aug));
    const std::size_t n = columns.size();
    if (!pivots.empty() && pivots.back() == n)
        return std::nullopt;
    Vec coeffs(n, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        coeffs[pivots[i]] = reduced.at(i, n);
    return coeffs;
}

bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

Subspace::Subspace(std::uint32_t p, std::size_t ambient_dim) : field_(p), dim_(ambient_dim) {}

Subspace::Subspace(std::uint32_t p, std::size_t ambient_dim, std::span<const Vec> spanning)
    : field_(p), dim_(ambient_dim)
{
    add_all(spanning);
}

Vec Subspace::reduce(Vec v) const
{
    if (v.size() != dim_)
        throw InvalidArgument("vector length does not match subspace ambient dimension");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        Residue coeff = v[pivots_[i]] % field_.p();
        if (coeff == 0)
            continue;
        const Vec& row = basis_[i];
        for (std::size_t k = pivots_[i]; k < dim_; ++k)
            if (row[k] != 0)
                v[k] = field_.sub(v[k] % field_.p(), field_.mul(coeff, row[k]));
    }
    return v;
}

bool Subspace::add(const Vec& v)
{
    Vec r = reduce(v);
    auto lead = std::find_if(r.begin(), r.end(), [](Residue x) { return x != 0; });
    if (lead == r.end())
        return false;
    std::size_t pc = static_cast<std::size_t>(lead - r.begin());
    Residue scale = field_.inv(r[pc]);
    for (auto& x : r)
        x = field_.mul(x, scale);
    for (auto& row : basis_) {
        Residue coeff = row[pc];
        if (coeff == 0)
            continue;
        for (std::size_t k = pc; k < dim_; ++k)
            if (r[k] != 0)
                row[k] = field_.sub(row[k], field_.mul(coeff, r[k]));
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pc);
    auto idx = pos - pivots_.begin();
    pivots_.insert(pos, pc);
    basis_.insert(basis_.begin() + idx, std::move(r));
    return true;
}

void Subspace::add_all(std::span<const Vec> vs)
{
    for (const auto& v : vs)
        add(v);
}

bool Subspace::contains(const Subspace& other) const
{
    return std::all_of(other.basis_.begin(), other.basis_.end(), [this](const Vec& v) { return contains(v); });
}

Subspace Subspace::sum(const Subspace& a, const Subspace& b)
{
    Subspace s = a;
    s.add_all(b.basis_);
    return s;
}

Subspace Subspace::intersect(const Subspace& a, const Subspace& b)
{
    if (a.dim_ != b.dim_ || a.p() != b.p())
        throw InvalidArgument("intersecting subspaces of different spaces");
    const Fp& f = a.field_;
    std::vector<Vec> cols;
    cols.insert(cols.end(), a.basis_.begin(), a.basis_.end());
    for (const auto& v : b.basis_) {
        Vec neg(v.size());
        for (std::size_t k = 0; k < v.size(); ++k)
            neg[k] = f.neg(v[k]);
        cols.push_back(std::move(neg));
    }
    Subspace out(a.p(), a.dim_);
    if (cols.empty())
        return out;
    for (const auto& k : kernel_basis(FpMatrix::from_columns(a.p(), a.dim_, cols))) {
        Vec x(a.dim_, 0);
        for (std::size_t i = 0; i < a.basis_.size(); ++i)
            if (k[i] != 0)
                for (std::size_t j = 0; j < a.dim_; ++j)
                    x[j] = f.add(x[j], f.mul(k[i], a.basis_[i][j]));
        out.add(x);
    }
    return out;
}

} // namespace gradss::linfp
