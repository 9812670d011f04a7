#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gradss/fp.hpp"

/// Dense exact linear algebra over F_p.
///
/// Vectors are plain residue arrays; subspaces are lists of vectors. All
/// routines pivot deterministically (leftmost nonzero column, topmost row) so
/// every basis they return is reproducible bit-for-bit.
namespace gradss::linfp {

using Vec = std::vector<Residue>;

/// Raised when boundaries do not lie inside the cycles they are quotiented from.
class InconsistentSubquotient : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FpMatrix {
public:
    FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);

    static FpMatrix identity(std::uint32_t p, std::size_t n);
    static FpMatrix from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows);
    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    static FpMatrix from_columns(std::uint32_t p, std::size_t rows, std::span<const Vec> columns);

    std::uint32_t p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Fp& field() const { return field_; }

    Residue at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    Residue& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t v) { at(r, c) = field_.reduce(v); }

    Vec column(std::size_t c) const;
    Vec row(std::size_t r) const;
    const std::vector<Residue>& entries() const { return entries_; }

    bool operator==(const FpMatrix& other) const
    {
        return p_ == other.p_ && rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
    }

private:
    std::uint32_t p_;
    Fp field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> entries_;
};

struct RrefResult {
    FpMatrix reduced;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);

/// Columns spanning ker(m); one per free column of the rref, so the count is cols - rank.
std::vector<Vec> kernel_basis(const FpMatrix& m);

/// Representatives of span(cycles) / span(boundaries), reduced modulo the boundaries.
/// The result depends only on the two subspaces, not on the spanning lists.
std::vector<Vec> subquotient_basis(std::uint32_t p, std::size_t ambient_dim, std::span<const Vec> cycles,
                                   std::span<const Vec> boundaries);

Vec apply(const FpMatrix& m, const Vec& v);
FpMatrix multiply(const FpMatrix& a, const FpMatrix& b);

/// Coefficients c with sum c_i * columns[i] = v, or nullopt if v is outside the span.
/// When the columns are dependent the solution with zero free coefficients is returned.
std::optional<Vec> solve(std::uint32_t p, std::size_t ambient_dim, std::span<const Vec> columns, const Vec& v);

bool is_zero(const Vec& v);

/// A subspace of F_p^n kept as its reduced row-echelon basis.
class Subspace {
public:
    Subspace(std::uint32_t p, std::size_t ambient_dim);
    Subspace(std::uint32_t p, std::size_t ambient_dim, std::span<const Vec> spanning);

    std::size_t ambient_dim() const { return dim_; }
    std::size_t dim() const { return basis_.size(); }
    std::uint32_t p() const { return field_.p(); }

    /// Canonical basis: rows of the rref, sorted by pivot.
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Adds v to the span; returns false if it was already contained.
    bool add(const Vec& v);
    void add_all(std::span<const Vec> vs);

    /// v with all pivot coordinates cleared; zero iff v lies in the subspace.
    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const { return is_zero(reduce(v)); }
    bool contains(const Subspace& other) const;

    static Subspace intersect(const Subspace& a, const Subspace& b);
    static Subspace sum(const Subspace& a, const Subspace& b);

private:
    Fp field_;
    std::size_t dim_;
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
};

} // namespace gradss::linfp
