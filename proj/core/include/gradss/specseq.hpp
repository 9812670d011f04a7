#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gradss/dga.hpp"
#include "gradss/linfp.hpp"

namespace gradss::specseq {

using algebra::Bidegree;
using algebra::Element;
using algebra::Presentation;
using dga::ClassTable;
using dga::Derivation;
using dga::PresentationPtr;
using dga::Relation;

/// d_r on one E^2 algebra generator. Specs on anything else are rejected.
struct DifferentialSpec {
    int r = 2;
    Element source;
    Element image;
    std::string provenance;
};

/// E^r as a table of classes whose representatives live in the E^2 monomial basis.
/// Pages are immutable; turn_page returns a new one.
struct Page {
    int r = 2;
    ClassTable classes;

    const Presentation& e2() const { return classes.presentation(); }
    int box() const { return e2().max_degree(); }
    /// Classes of total degree <= this are exact.
    int certified_degree() const { return classes.certified_degree(); }
};

/// E^2 with each monomial of total degree <= n as its own class, split by weight.
Page init_page(const Presentation& e2, int n);

/// Leibniz extension of generator-level specs for page.r (generators without a spec map to zero).
Derivation derivation_from_specs(const Page& page, std::span<const DifferentialSpec> specs);

/// Thrown when a differential is not well defined on the page or squares to a nonzero class.
class PageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Page turn_page(const Page& page, std::span<const DifferentialSpec> specs);
/// Same with the differential given directly; d.r() must equal page.r.
Page turn_page(const Page& page, const Derivation& d);

struct LeibnizViolation {
    std::string x;
    std::string y;
    std::string defect;
};

/// Checks d(xy) = d(x)y + (-1)^{|x|} x d(y) for all pairs of class representatives
/// with |x| + |y| <= n, comparing the two sides as elements.
std::vector<LeibnizViolation> leibniz_violations(const Page& page, const Derivation& d, int n);

enum class Justification {
    TargetVanishes,   ///< every target bidegree is empty on this page
    SourceVanishes,   ///< every source bidegree is empty on this page
    LeavesQuadrant,   ///< every candidate differential starts or ends outside the first quadrant
    BeyondTruncation, ///< a candidate source lies beyond the computed box
    Refused,          ///< a nonzero class sits at a target or source bidegree
};

std::string to_string(Justification j);

struct ClassCertificate {
    Bidegree bidegree;
    std::string representative;
    Justification outgoing = Justification::Refused;
    Justification incoming = Justification::Refused;
    int refused_at = 0; ///< first page of a possible differential, when refused
    std::string detail;

    bool certified() const
    {
        return outgoing != Justification::Refused && incoming != Justification::Refused &&
               incoming != Justification::BeyondTruncation;
    }
};

struct CollapseCertificate {
    int r0 = 2;
    int certified_through = 0;
    bool collapsed = false;
    std::vector<ClassCertificate> classes;
    std::vector<ClassCertificate> uncertified; ///< near the truncation boundary
    std::vector<ClassCertificate> refused;
};

/// Bidegree-level collapse test for every class of total degree <= n on all pages r >= page.r.
CollapseCertificate certify_collapse(const Page& page, int n);

struct ForcedCandidate {
    int r = 0;
    Bidegree source;
    std::vector<Element> sources; ///< page classes at the source that could support d_r
};

/// Every (r, source) with r >= page.r whose d_r could hit must_die. Classes in the span of
/// a permanent cycle neither support differentials nor get hit, so a permanent must_die
/// yields no candidates. On weight-split pages only sources of must_die's weight count.
std::vector<ForcedCandidate> infer_forced_differentials(const Page& page, const Element& must_die,
                                                        std::span<const Element> permanent_cycles);

enum class RelationKind {
    FreeCommutative,
    StrictLift,
    WeightObstruction,
    Unresolved,
    FailsOnPage, ///< the relation does not even hold in E-infinity
    BeyondBox,
};

std::string to_string(RelationKind k);

struct PageClass {
    Bidegree bidegree;
    int weight = dga::Cell::kMixedWeight;
    std::string representative;
};

struct RelationJustification {
    std::string label;
    Bidegree bidegree;
    int weight = 0;
    RelationKind kind = RelationKind::Unresolved;
    std::vector<PageClass> lower_filtration; ///< the enumerated classes the verdict rests on
};

struct LiftedGenerator {
    std::string name;
    Bidegree bidegree;
    int weight = 0;
    std::string representative;
    bool unique = false;                  ///< no lower-filtration class of equal weight in that degree
    std::vector<PageClass> competitors;   ///< lower-filtration classes of equal weight
};

struct AbutmentReport {
    int verified_through = 0;
    std::map<Bidegree, std::size_t> einf;
    bool free_commutative = false;
    std::vector<LiftedGenerator> generators;
    std::vector<RelationJustification> relations;
    std::vector<std::string> unresolved;

    bool ok() const { return unresolved.empty(); }
};

/// Lifts the candidate's generators and relations from E-infinity to the abutment.
AbutmentReport assemble_abutment(const Page& einf, const Presentation& candidate,
                                 const std::map<std::string, Element>& lifts,
                                 std::span<const Relation> relations, int n);

/// Finite chain complex over F_p with a filtration adapted to its basis:
/// F_s C_t is spanned by the basis vectors of degree t with level <= s.
struct FilteredComplex {
    std::uint32_t p = 5;
    std::vector<std::vector<int>> levels;  ///< levels[t][i] >= 0
    std::vector<linfp::FpMatrix> boundary; ///< boundary[t] : C_t -> C_{t-1}; boundary[0] has no rows

    int top_degree() const { return static_cast<int>(levels.size()) - 1; }
    std::size_t dim(int t) const { return levels.at(static_cast<std::size_t>(t)).size(); }
    int max_level() const;

    /// Shapes, d^2 = 0 and filtration preservation; throws InvalidArgument otherwise.
    void validate() const;
};

/// Total homology dimensions per degree.
std::vector<std::size_t> total_homology(const FilteredComplex& fc);

struct ExactCoupleRun {
    std::vector<std::map<Bidegree, std::size_t>> pages; ///< pages[k] is E^{k+1}
    std::map<Bidegree, std::size_t> einf;
    std::vector<std::string> consistency_failures;      ///< E^{r+1} != H(E^r, d^r) anywhere
};

/// Pages of the spectral sequence of the filtration, read off the unrolled exact couple
/// D = H(F_s), E^1 = H(F_s / F_{s-1}) as k^{-1}(im i^{r-1}) / j(ker i^{r-1}).
/// d^r carries the sign (-1)^m on E^r_{n,m}.
ExactCoupleRun exact_couple_run(const FilteredComplex& fc);

struct DegreeComparison {
    int degree = 0;
    std::size_t einf_total = 0;
    std::size_t homology = 0;
    bool ok() const { return einf_total == homology; }
};

struct ConvergenceCheck {
    std::vector<DegreeComparison> degrees;
    bool ok() const;
};

ConvergenceCheck compare_with_total_homology(const FilteredComplex& fc, const ExactCoupleRun& run);

/// Chain complex underlying a bigraded DGA, filtered by column, through total degree n.
FilteredComplex filtered_complex_from(const Derivation& d, int n);

/// Random filtered complex: at most max_levels filtration steps and max_dim basis vectors,
/// built from cycles and matched pairs under a random filtration-preserving change of basis.
FilteredComplex random_filtered_complex(std::uint64_t seed, std::uint32_t p = 5, int max_levels = 5,
                                        int max_dim = 40);

} // namespace gradss::specseq
