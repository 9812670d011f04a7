#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradss/algebra.hpp"
#include "gradss/linfp.hpp"

namespace gradss::dga {

using algebra::Bidegree;
using algebra::Element;
using algebra::Monomial;
using algebra::Presentation;
using PresentationPtr = std::shared_ptr<const Presentation>;

/// A degree -1 derivation of bidegree (-r, r-1), fixed by its values on generators
/// and extended by d(xy) = d(x)y + (-1)^{|x|} x d(y).
class Derivation {
public:
    Derivation(PresentationPtr base, int r, std::vector<Element> images);

    const Presentation& base() const { return *base_; }
    const PresentationPtr& base_ptr() const { return base_; }
    int r() const { return r_; }
    Bidegree shift() const { return {-r_, r_ - 1}; }
    const std::vector<Element>& images() const { return images_; }
    const Element& image(std::size_t generator) const { return images_.at(generator); }

    bool is_zero() const;
    /// True when every generator image has the generator's weight.
    bool preserves_weight() const;

    Element apply(const Monomial& m) const;
    Element apply(const Element& e) const;

private:
    PresentationPtr base_;
    int r_;
    std::vector<Element> images_;
};

/// Validates the images (bidegree, homogeneity, truncation compatibility) and
/// builds the derivation; unnamed generators map to zero.
Derivation extend_derivation(PresentationPtr pres, int r, const std::map<std::string, Element>& gen_images);

struct DSquaredViolation {
    Monomial source;
    Element d_squared;
};

/// d(d(x)) for every basis monomial of total degree <= n; empty iff d^2 = 0 there.
std::vector<DSquaredViolation> check_d_squared(const Derivation& d, int n);

class DSquaredError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One subquotient cell: a bidegree, optionally split further by weight.
/// Vectors are in the coordinates of the bidegree's monomial basis.
struct Cell {
    static constexpr int kMixedWeight = -1;

    Bidegree bidegree;
    int weight = kMixedWeight;
    std::vector<linfp::Vec> boundaries;      ///< canonical basis of B
    std::vector<linfp::Vec> representatives; ///< basis of Z / B, reduced modulo B
};

struct CellKey {
    Bidegree bidegree;
    int weight;
    auto operator<=>(const CellKey&) const = default;
};

/// Per-cell subquotients of a presented algebra: the shape shared by DGA homology
/// and spectral-sequence pages. Classes are represented by elements of the
/// underlying monomial algebra.
class ClassTable {
public:
    ClassTable(PresentationPtr pres, bool weight_split, int certified_degree);

    const Presentation& presentation() const { return *pres_; }
    const PresentationPtr& presentation_ptr() const { return pres_; }
    bool weight_split() const { return weight_split_; }
    int certified_degree() const { return certified_; }
    void set_certified_degree(int d) { certified_ = d; }

    const std::map<CellKey, Cell>& cells() const { return cells_; }
    void insert(Cell cell);
    const Cell* find(const CellKey& key) const;

    CellKey key_for(Bidegree b, int weight) const
    {
        return {b, weight_split_ ? weight : Cell::kMixedWeight};
    }

    std::size_t dimension(Bidegree b) const;
    /// Dimensions per total degree 0..n.
    std::vector<std::size_t> dimensions_by_total_degree(int n) const;
    /// Nonzero bidegrees with their dimensions.
    std::map<Bidegree, std::size_t> dimension_table() const;

    /// Class representatives at a bidegree, cells in key order.
    std::vector<Element> representatives(Bidegree b) const;

    /// Coordinates of a cycle on the representatives of its bidegree (cells
    /// concatenated in key order), or nullopt if it is not a cycle.
    std::optional<linfp::Vec> reduce(const Element& e) const;
    bool is_cycle(const Element& e) const { return reduce(e).has_value(); }
    /// True iff e is a boundary (its class is zero).
    bool is_boundary(const Element& e) const;

    /// Element of a bidegree from full-bidegree coordinates.
    Element to_element(Bidegree b, const linfp::Vec& v) const;
    linfp::Vec to_vector(const Element& e) const;

private:
    PresentationPtr pres_;
    bool weight_split_;
    int certified_;
    std::map<CellKey, Cell> cells_;
};

/// Homology of (pres, d) in total degrees <= n, trustworthy through certified_degree().
using HomologyResult = ClassTable;

HomologyResult homology(PresentationPtr pres, const Derivation& d, int n);

struct Relation {
    std::string label;
    Element lhs;
    Element rhs;
    Element difference() const
    {
        Element out = lhs;
        out -= rhs;
        return out;
    }
};

struct DegreeCheck {
    int total_degree = 0;
    std::size_t candidate_dimension = 0; ///< dim of the free algebra modulo the relation ideal
    std::size_t homology_dimension = 0;
    std::size_t image_rank = 0; ///< rank of the induced map into homology
    bool ok() const { return candidate_dimension == homology_dimension && image_rank == homology_dimension; }
};

struct RelationCheck {
    std::string label;
    int total_degree = 0;
    bool checked = false; ///< false when beyond the verified range
    bool holds = false;
};

struct IsoReport {
    int verified_through = 0;
    bool ok = false;
    std::vector<DegreeCheck> degrees;
    std::vector<RelationCheck> relations;
    std::vector<std::string> failures;
};

/// Checks that candidate (free graded-commutative on its generators, modulo the
/// relations) maps isomorphically onto h through total degree n via gen_reps.
IsoReport verify_presentation_iso(const HomologyResult& h, const Presentation& candidate,
                                  const std::map<std::string, Element>& gen_reps,
                                  std::span<const Relation> relations, int n);

} // namespace gradss::dga
