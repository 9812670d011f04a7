#include "gradss/specseq.hpp"

#include <algorithm>
#include <climits>
#include <random>
#include <set>

#include "gradss/parallel.hpp"

namespace gradss::specseq {

using algebra::Monomial;
using dga::Cell;
using dga::CellKey;

Page init_page(const Presentation& e2, int n)
{
    auto pres = std::make_shared<const Presentation>(e2.with_max_degree(n));
    ClassTable table(pres, true, n);
    for (const auto& b : pres->occupied_bidegrees()) {
        const auto& basis = pres->basis_in_bidegree(b);
        std::map<int, Cell> by_weight;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            int w = pres->weight_of(basis[i]);
            Cell& cell = by_weight[w];
            cell.bidegree = b;
            cell.weight = w;
            linfp::Vec v(basis.size(), 0);
            v[i] = 1;
            cell.representatives.push_back(std::move(v));
        }
        for (auto& [w, cell] : by_weight)
            table.insert(std::move(cell));
    }
    return Page{2, std::move(table)};
}

Derivation derivation_from_specs(const Page& page, std::span<const DifferentialSpec> specs)
{
    const Presentation& pres = page.e2();
    const Fp& f = pres.field();
    std::map<std::string, Element> images;
    for (const auto& spec : specs) {
        if (spec.r != page.r)
            throw InvalidArgument("differential d_" + std::to_string(spec.r) + " supplied on page " +
                                  std::to_string(page.r));
        const auto& terms = spec.source.terms();
        if (terms.size() != 1)
            throw InvalidArgument("differential source " + pres.to_string(spec.source) +
                                  " is not a single generator");
        const auto& [mono, coeff] = *terms.begin();
        std::optional<std::size_t> gen;
        int degree = 0;
        for (std::size_t i = 0; i < mono.size(); ++i) {
            degree += mono[i];
            if (mono[i] == 1)
                gen = i;
        }
        if (!gen || degree != 1)
            throw InvalidArgument("differential source " + pres.to_string(spec.source) +
                                  " is not a generator; only generator-level differentials are accepted");
        const std::string& name = pres.generator(*gen).name;
        if (images.contains(name))
            throw InvalidArgument("two differentials given on generator " + name);
        auto coords = page.classes.reduce(spec.source);
        if (!coords || linfp::is_zero(*coords))
            throw InvalidArgument("generator " + name + " does not survive to page " + std::to_string(page.r));
        images.emplace(name, spec.image.scaled(f.lift(f.inv(coeff))));
    }
    return dga::extend_derivation(page.classes.presentation_ptr(), page.r, images);
}

namespace {

bool in_quadrant(Bidegree b) { return b.n >= 0 && b.m >= 0; }

struct Spaces {
    std::vector<linfp::Vec> cycles;     ///< B plus representatives
    std::vector<linfp::Vec> boundaries; ///< B
};

Spaces spaces_at(const ClassTable& t, Bidegree b)
{
    Spaces out;
    for (auto it = t.cells().lower_bound({b, INT_MIN}); it != t.cells().end() && it->first.bidegree == b; ++it) {
        out.boundaries.insert(out.boundaries.end(), it->second.boundaries.begin(), it->second.boundaries.end());
        out.cycles.insert(out.cycles.end(), it->second.boundaries.begin(), it->second.boundaries.end());
        out.cycles.insert(out.cycles.end(), it->second.representatives.begin(), it->second.representatives.end());
    }
    return out;
}

linfp::Vec project_to_weight(const Presentation& pres, Bidegree b, linfp::Vec v, int w)
{
    const auto& basis = pres.basis_in_bidegree(b);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (pres.weight_of(basis[i]) != w)
            v[i] = 0;
    return v;
}

} // namespace

Page turn_page(const Page& page, std::span<const DifferentialSpec> specs)
{
    return turn_page(page, derivation_from_specs(page, specs));
}

Page turn_page(const Page& page, const Derivation& d)
{
    if (d.r() != page.r)
        throw InvalidArgument("d_" + std::to_string(d.r()) + " applied to page " + std::to_string(page.r));
    const ClassTable& table = page.classes;
    const Presentation& pres = table.presentation();
    if (&d.base() != &pres && (d.base().p() != pres.p() || d.base().generators().size() != pres.size()))
        throw InvalidArgument("differential is defined on a different algebra");
    if (d.is_zero())
        return Page{page.r + 1, table};

    const std::uint32_t p = pres.p();
    const bool split = table.weight_split() && d.preserves_weight();
    const int box = pres.max_degree();
    const Bidegree shift = d.shift();

    std::vector<Bidegree> bidegrees;
    for (const auto& [key, cell] : table.cells())
        if (bidegrees.empty() || bidegrees.back() != key.bidegree)
            bidegrees.push_back(key.bidegree);

    auto apply_vec = [&](Bidegree b, const linfp::Vec& v) {
        return table.to_vector(d.apply(table.to_element(b, v)));
    };

    std::vector<std::vector<Cell>> results(bidegrees.size());
    parallel_for(bidegrees.size(), [&](std::size_t idx) {
        const Bidegree b = bidegrees[idx];
        const std::size_t dim = pres.basis_in_bidegree(b).size();
        Spaces here = spaces_at(table, b);

        // cycles of d_r: z in Z_r(b) with d(z) in B_r(target)
        std::vector<linfp::Vec> new_cycles;
        const Bidegree target = b + shift;
        if (!in_quadrant(target) || pres.basis_in_bidegree(target).empty()) {
            new_cycles = here.cycles;
        } else {
            const std::size_t tdim = pres.basis_in_bidegree(target).size();
            Spaces there = spaces_at(table, target);
            linfp::Subspace z_target(p, tdim, there.cycles);
            linfp::Subspace b_target(p, tdim, there.boundaries);
            const Bidegree second = target + shift;
            const bool check_square = in_quadrant(second) && !pres.basis_in_bidegree(second).empty();
            linfp::Subspace b_far(p, check_square ? pres.basis_in_bidegree(second).size() : 0);
            if (check_square)
                b_far.add_all(spaces_at(table, second).boundaries);
            std::vector<linfp::Vec> images;
            for (std::size_t i = 0; i < here.cycles.size(); ++i) {
                linfp::Vec img = apply_vec(b, here.cycles[i]);
                const bool is_boundary_input = i < here.boundaries.size();
                if (is_boundary_input && !b_target.contains(img))
                    throw PageError("d_" + std::to_string(page.r) + " does not preserve boundaries at " +
                                    algebra::to_string(b));
                if (!z_target.contains(img))
                    throw PageError("d_" + std::to_string(page.r) + " of " +
                                    pres.to_string(table.to_element(b, here.cycles[i])) +
                                    " is not a class on page " + std::to_string(page.r));
                if (check_square && !b_far.contains(apply_vec(target, img)))
                    throw PageError("d_" + std::to_string(page.r) + " squares to a nonzero class on " +
                                    pres.to_string(table.to_element(b, here.cycles[i])));
                images.push_back(std::move(img));
            }
            std::vector<linfp::Vec> cols = images;
            cols.insert(cols.end(), there.boundaries.begin(), there.boundaries.end());
            if (!cols.empty()) {
                auto m = linfp::FpMatrix::from_columns(p, tdim, cols);
                for (const auto& k : linfp::kernel_basis(m)) {
                    linfp::Vec z(dim, 0);
                    for (std::size_t i = 0; i < here.cycles.size(); ++i)
                        for (std::size_t c = 0; c < dim; ++c)
                            z[c] = (z[c] + static_cast<std::uint64_t>(k[i]) * here.cycles[i][c]) % p;
                    if (!linfp::is_zero(z))
                        new_cycles.push_back(std::move(z));
                }
            }
        }

        // boundaries: B_r(b) + d(Z_r(source))
        std::vector<linfp::Vec> new_boundaries = here.boundaries;
        const Bidegree source = b - shift;
        if (in_quadrant(source) && source.total() <= box && !pres.basis_in_bidegree(source).empty()) {
            Spaces from = spaces_at(table, source);
            for (std::size_t i = from.boundaries.size(); i < from.cycles.size(); ++i)
                new_boundaries.push_back(apply_vec(source, from.cycles[i]));
        }

        std::set<int> weights;
        if (split) {
            for (const auto& m : pres.basis_in_bidegree(b))
                weights.insert(pres.weight_of(m));
        } else {
            weights.insert(Cell::kMixedWeight);
        }
        for (int w : weights) {
            std::vector<linfp::Vec> zc = new_cycles;
            std::vector<linfp::Vec> bc = new_boundaries;
            if (split) {
                for (auto& v : zc)
                    v = project_to_weight(pres, b, v, w);
                for (auto& v : bc)
                    v = project_to_weight(pres, b, v, w);
            }
            Cell cell;
            cell.bidegree = b;
            cell.weight = w;
            cell.boundaries = linfp::Subspace(p, dim, bc).basis();
            cell.representatives = linfp::subquotient_basis(p, dim, zc, bc);
            results[idx].push_back(std::move(cell));
        }
    });

    ClassTable next(table.presentation_ptr(), split, std::min(table.certified_degree(), box - page.r));
    for (auto& cells : results)
        for (auto& cell : cells)
            next.insert(std::move(cell));
    return Page{page.r + 1, std::move(next)};
}

std::vector<LeibnizViolation> leibniz_violations(const Page& page, const Derivation& d, int n)
{
    const Presentation& pres = page.e2();
    n = std::min(n, pres.max_degree());
    std::vector<Element> reps;
    for (const auto& [key, cell] : page.classes.cells())
        if (key.bidegree.total() <= n)
            for (const auto& v : cell.representatives)
                reps.push_back(page.classes.to_element(key.bidegree, v));
    std::vector<Element> dreps;
    dreps.reserve(reps.size());
    for (const auto& x : reps)
        dreps.push_back(d.apply(x));

    std::vector<std::vector<LeibnizViolation>> found(reps.size());
    parallel_for(reps.size(), [&](std::size_t i) {
        const Element& x = reps[i];
        const int xdeg = x.bidegree().total();
        for (std::size_t j = 0; j < reps.size(); ++j) {
            const Element& y = reps[j];
            if (xdeg + y.bidegree().total() > n)
                continue;
            Element lhs = d.apply(pres.multiply(x, y));
            Element rhs = pres.multiply(dreps[i], y);
            rhs += pres.multiply(x, dreps[j]).scaled(xdeg % 2 == 0 ? 1 : -1);
            lhs -= rhs;
            if (!lhs.is_zero())
                found[i].push_back({pres.to_string(x), pres.to_string(y), pres.to_string(lhs)});
        }
    });
    std::vector<LeibnizViolation> out;
    for (auto& f : found)
        out.insert(out.end(), f.begin(), f.end());
    return out;
}

std::string to_string(Justification j)
{
    switch (j) {
    case Justification::TargetVanishes:
        return "target-vanishes";
    case Justification::SourceVanishes:
        return "source-vanishes";
    case Justification::LeavesQuadrant:
        return "leaves-quadrant";
    case Justification::BeyondTruncation:
        return "beyond-truncation";
    case Justification::Refused:
        return "refused";
    }
    return "?";
}

CollapseCertificate certify_collapse(const Page& page, int n)
{
    const ClassTable& t = page.classes;
    const Presentation& pres = t.presentation();
    CollapseCertificate cert;
    cert.r0 = page.r;
    cert.certified_through = std::min(n, t.certified_degree() - 1);

    for (const auto& [key, cell] : t.cells()) {
        const Bidegree b = key.bidegree;
        if (b.total() > n)
            continue;
        for (const auto& v : cell.representatives) {
            ClassCertificate c;
            c.bidegree = b;
            c.representative = pres.to_string(t.to_element(b, v));

            // outgoing d_r lands in (n - r, m + r - 1), total degree one lower
            c.outgoing = Justification::LeavesQuadrant;
            for (int r = page.r; b.n - r >= 0; ++r) {
                Bidegree target{b.n - r, b.m + r - 1};
                if (t.dimension(target) > 0) {
                    c.outgoing = Justification::Refused;
                    c.refused_at = r;
                    c.detail = "d_" + std::to_string(r) + " may hit " + algebra::to_string(target);
                    break;
                }
                c.outgoing = Justification::TargetVanishes;
            }

            // incoming d_r starts at (n + r, m - r + 1), total degree one higher
            c.incoming = Justification::LeavesQuadrant;
            if (b.m - page.r + 1 >= 0) {
                if (b.total() + 1 > t.certified_degree()) {
                    c.incoming = Justification::BeyondTruncation;
                    c.detail = "sources in total degree " + std::to_string(b.total() + 1) + " are beyond the box";
                } else {
                    c.incoming = Justification::SourceVanishes;
                    for (int r = page.r; b.m - r + 1 >= 0; ++r) {
                        Bidegree source{b.n + r, b.m - r + 1};
                        if (t.dimension(source) > 0) {
                            c.incoming = Justification::Refused;
                            if (c.refused_at == 0 || r < c.refused_at)
                                c.refused_at = r;
                            c.detail += (c.detail.empty() ? "" : "; ") + std::string("may be hit by d_") +
                                        std::to_string(r) + " from " + algebra::to_string(source);
                            break;
                        }
                    }
                }
            }
            if (c.outgoing == Justification::TargetVanishes || c.outgoing == Justification::LeavesQuadrant) {
                if (c.detail.empty() && c.outgoing == Justification::TargetVanishes)
                    c.detail = "page is empty in the target bidegrees of total degree " +
                               std::to_string(b.total() - 1);
            }
            if (c.outgoing == Justification::Refused || c.incoming == Justification::Refused)
                cert.refused.push_back(c);
            else if (c.incoming == Justification::BeyondTruncation)
                cert.uncertified.push_back(c);
            cert.classes.push_back(std::move(c));
        }
    }
    cert.collapsed = cert.refused.empty();
    return cert;
}

std::vector<ForcedCandidate> infer_forced_differentials(const Page& page, const Element& must_die,
                                                        std::span<const Element> permanent_cycles)
{
    const ClassTable& t = page.classes;
    const Presentation& pres = t.presentation();
    const std::uint32_t p = pres.p();
    const Bidegree b = must_die.bidegree();
    auto coords = t.reduce(must_die);
    if (!coords || linfp::is_zero(*coords))
        throw InvalidArgument("class " + pres.to_string(must_die) + " does not survive to page " +
                              std::to_string(page.r));

    auto permanent_span = [&](Bidegree at) {
        const std::size_t dim = pres.basis_in_bidegree(at).size();
        linfp::Subspace s(p, dim, spaces_at(t, at).boundaries);
        for (const auto& e : permanent_cycles)
            if (e.bidegree() == at && !e.is_zero())
                s.add(t.to_vector(e));
        return s;
    };
    if (permanent_span(b).contains(t.to_vector(must_die)))
        return {};

    std::optional<int> weight;
    if (t.weight_split()) {
        for (const auto& [m, c] : must_die.terms()) {
            int w = pres.weight_of(m);
            if (weight && *weight != w)
                throw InvalidArgument("class " + pres.to_string(must_die) + " is not weight-homogeneous");
            weight = w;
        }
    }
    if (b.total() + 1 > t.certified_degree())
        throw InvalidArgument("sources of " + pres.to_string(must_die) + " lie beyond the computed box");

    std::vector<ForcedCandidate> out;
    for (int r = page.r; b.m - r + 1 >= 0; ++r) {
        Bidegree source{b.n + r, b.m - r + 1};
        if (t.dimension(source) == 0)
            continue;
        linfp::Subspace excluded = permanent_span(source);
        ForcedCandidate cand{r, source, {}};
        for (auto it = t.cells().lower_bound({source, INT_MIN}); it != t.cells().end() && it->first.bidegree == source;
             ++it) {
            if (weight && it->second.weight != Cell::kMixedWeight && it->second.weight != *weight)
                continue;
            for (const auto& v : it->second.representatives)
                if (excluded.add(v))
                    cand.sources.push_back(t.to_element(source, v));
        }
        if (!cand.sources.empty())
            out.push_back(std::move(cand));
    }
    return out;
}

std::string to_string(RelationKind k)
{
    switch (k) {
    case RelationKind::FreeCommutative:
        return "free-commutative";
    case RelationKind::StrictLift:
        return "strict-lift";
    case RelationKind::WeightObstruction:
        return "weight-obstruction";
    case RelationKind::Unresolved:
        return "unresolved";
    case RelationKind::FailsOnPage:
        return "fails-on-page";
    case RelationKind::BeyondBox:
        return "beyond-box";
    }
    return "?";
}

namespace {

/// Evaluates candidate-presentation elements on E^2 lifts of the candidate generators.
class LiftEvaluator {
public:
    LiftEvaluator(const Presentation& target, std::vector<Element> lifts) : target_(target), lifts_(std::move(lifts))
    {
    }

    Element operator()(const Element& e) const
    {
        Element out = target_.zero(e.bidegree());
        for (const auto& [m, c] : e.terms()) {
            Element term = target_.unit();
            for (std::size_t i = 0; i < m.size(); ++i)
                for (int k = 0; k < m[i]; ++k)
                    term = target_.multiply(term, lifts_[i]);
            out += term.scaled(c);
        }
        return out;
    }

private:
    const Presentation& target_;
    std::vector<Element> lifts_;
};

std::vector<PageClass> lower_filtration_classes(const ClassTable& t, Bidegree b)
{
    std::vector<PageClass> out;
    for (const auto& [key, cell] : t.cells()) {
        if (key.bidegree.total() != b.total() || key.bidegree.n >= b.n)
            continue;
        for (const auto& v : cell.representatives)
            out.push_back({key.bidegree, cell.weight, t.presentation().to_string(t.to_element(key.bidegree, v))});
    }
    return out;
}

} // namespace

AbutmentReport assemble_abutment(const Page& einf, const Presentation& candidate,
                                 const std::map<std::string, Element>& lifts, std::span<const Relation> relations,
                                 int n)
{
    const ClassTable& t = einf.classes;
    const Presentation& e2 = t.presentation();
    AbutmentReport report;
    report.verified_through = std::min(n, t.certified_degree());
    for (const auto& [b, dim] : t.dimension_table())
        if (b.total() <= report.verified_through)
            report.einf[b] = dim;

    std::vector<Element> lift_list;
    for (const auto& g : candidate.generators()) {
        LiftedGenerator lg{g.name, g.bidegree, g.weight, "", false, {}};
        auto it = lifts.find(g.name);
        if (it == lifts.end()) {
            report.unresolved.push_back("no lift for generator " + g.name);
            lift_list.push_back(e2.zero(g.bidegree));
            report.generators.push_back(std::move(lg));
            continue;
        }
        const Element& lift = it->second;
        lift_list.push_back(lift);
        lg.representative = e2.to_string(lift);
        if (g.bidegree.total() > report.verified_through) {
            report.generators.push_back(std::move(lg));
            continue;
        }
        auto coords = lift.bidegree() == g.bidegree ? t.reduce(lift) : std::nullopt;
        if (!coords || linfp::is_zero(*coords))
            report.unresolved.push_back("lift of " + g.name + " is not a nonzero class on E-infinity");
        for (const auto& [m, c] : lift.terms())
            if (e2.weight_of(m) != g.weight)
                report.unresolved.push_back("lift of " + g.name + " does not have weight " + std::to_string(g.weight));
        for (auto& pc : lower_filtration_classes(t, g.bidegree))
            if (pc.weight == Cell::kMixedWeight || pc.weight == g.weight)
                lg.competitors.push_back(std::move(pc));
        lg.unique = lg.competitors.empty();
        if (!lg.unique)
            report.unresolved.push_back("generator " + g.name + " has " + std::to_string(lg.competitors.size()) +
                                        " lower-filtration classes of equal weight");
        report.generators.push_back(std::move(lg));
    }
    LiftEvaluator f(e2, lift_list);

    if (relations.empty()) {
        auto iso = dga::verify_presentation_iso(t, candidate, lifts, {}, report.verified_through);
        RelationJustification rj{"free", {0, 0}, 0, RelationKind::FreeCommutative, {}};
        if (iso.ok) {
            report.free_commutative = true;
        } else {
            rj.kind = RelationKind::Unresolved;
            report.unresolved.push_back("E-infinity is not free on the lifts: " + iso.failures.front());
        }
        report.relations.push_back(std::move(rj));
        return report;
    }

    for (const auto& rel : relations) {
        Element diff = rel.difference();
        RelationJustification rj;
        rj.label = rel.label;
        rj.bidegree = rel.lhs.bidegree();
        std::optional<int> weight;
        for (const auto* side : {&rel.lhs, &rel.rhs})
            for (const auto& [m, c] : side->terms()) {
                int w = candidate.weight_of(m);
                if (weight && *weight != w)
                    throw InvalidArgument("relation " + rel.label + " is not weight-homogeneous");
                weight = w;
            }
        rj.weight = weight.value_or(0);
        if (rj.bidegree.total() > report.verified_through) {
            rj.kind = RelationKind::BeyondBox;
            report.relations.push_back(std::move(rj));
            continue;
        }
        if (!t.is_boundary(f(diff))) {
            rj.kind = RelationKind::FailsOnPage;
            report.unresolved.push_back("relation " + rel.label + " does not hold on E-infinity");
            report.relations.push_back(std::move(rj));
            continue;
        }
        rj.lower_filtration = lower_filtration_classes(t, rj.bidegree);
        if (rj.lower_filtration.empty()) {
            rj.kind = RelationKind::StrictLift;
        } else if (std::all_of(rj.lower_filtration.begin(), rj.lower_filtration.end(), [&](const PageClass& c) {
                       return c.weight != Cell::kMixedWeight && c.weight != rj.weight;
                   })) {
            rj.kind = RelationKind::WeightObstruction;
        } else {
            rj.kind = RelationKind::Unresolved;
            report.unresolved.push_back("relation " + rel.label + " has lower-filtration classes of equal weight");
        }
        report.relations.push_back(std::move(rj));
    }
    return report;
}

int FilteredComplex::max_level() const
{
    int top = 0;
    for (const auto& lv : levels)
        for (int l : lv)
            top = std::max(top, l);
    return top;
}

void FilteredComplex::validate() const
{
    if (!is_prime(p))
        throw InvalidArgument("filtered complex over non-prime " + std::to_string(p));
    if (boundary.size() != levels.size())
        throw InvalidArgument("filtered complex needs one boundary matrix per degree");
    for (int t = 0; t <= top_degree(); ++t) {
        const auto& d = boundary[static_cast<std::size_t>(t)];
        std::size_t rows = t == 0 ? 0 : dim(t - 1);
        if (d.rows() != rows || d.cols() != dim(t) || d.p() != p)
            throw InvalidArgument("boundary matrix in degree " + std::to_string(t) + " has the wrong shape");
        for (int l : levels[static_cast<std::size_t>(t)])
            if (l < 0)
                throw InvalidArgument("negative filtration level in degree " + std::to_string(t));
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j)
                if (d.at(i, j) != 0 &&
                    levels[static_cast<std::size_t>(t - 1)][i] > levels[static_cast<std::size_t>(t)][j])
                    throw InvalidArgument("boundary raises filtration in degree " + std::to_string(t));
        if (t >= 1) {
            auto dd = linfp::multiply(boundary[static_cast<std::size_t>(t - 1)], d);
            if (std::any_of(dd.entries().begin(), dd.entries().end(), [](Residue r) { return r != 0; }))
                throw InvalidArgument("boundary does not square to zero in degree " + std::to_string(t));
        }
    }
}

std::vector<std::size_t> total_homology(const FilteredComplex& fc)
{
    fc.validate();
    std::vector<std::size_t> out;
    for (int t = 0; t <= fc.top_degree(); ++t) {
        std::size_t r_out = linfp::rank(fc.boundary[static_cast<std::size_t>(t)]);
        std::size_t r_in = t < fc.top_degree() ? linfp::rank(fc.boundary[static_cast<std::size_t>(t + 1)]) : 0;
        out.push_back(fc.dim(t) - r_out - r_in);
    }
    return out;
}

namespace {

/// Chain-level subspaces of one filtered complex, in basis coordinates.
class CoupleSpaces {
public:
    explicit CoupleSpaces(const FilteredComplex& fc) : fc_(fc) {}

    std::size_t dim(int t) const { return t < 0 || t > fc_.top_degree() ? 0 : fc_.dim(t); }

    /// F_s C_t
    linfp::Subspace filtered(int s, int t) const
    {
        linfp::Subspace out(fc_.p, dim(t));
        if (dim(t) == 0)
            return out;
        const auto& lv = fc_.levels[static_cast<std::size_t>(t)];
        for (std::size_t i = 0; i < lv.size(); ++i)
            if (lv[i] <= s) {
                linfp::Vec v(lv.size(), 0);
                v[i] = 1;
                out.add(v);
            }
        return out;
    }

    /// boundary of F_s C_{t+1}, inside C_t
    linfp::Subspace boundary_of(int s, int t) const
    {
        linfp::Subspace out(fc_.p, dim(t));
        if (t + 1 > fc_.top_degree() || dim(t) == 0)
            return out;
        const auto& d = fc_.boundary[static_cast<std::size_t>(t + 1)];
        const auto& lv = fc_.levels[static_cast<std::size_t>(t + 1)];
        for (std::size_t j = 0; j < lv.size(); ++j)
            if (lv[j] <= s)
                out.add(d.column(j));
        return out;
    }

    /// Image of v in C_t under the boundary, inside C_{t-1}.
    linfp::Vec boundary(int t, const linfp::Vec& v) const
    {
        if (t == 0)
            return {};
        return linfp::apply(fc_.boundary[static_cast<std::size_t>(t)], v);
    }

    /// Denominator F_{s-1} + (F_s intersect boundary of F_{s+r-1}).
    linfp::Subspace denominator(int r, int s, int t) const
    {
        auto inter = linfp::Subspace::intersect(filtered(s, t), boundary_of(s + r - 1, t));
        return linfp::Subspace::sum(filtered(s - 1, t), inter);
    }

    struct Numerator {
        linfp::Subspace space;
        std::vector<linfp::Vec> d_images; ///< (-1)^m y with d x = y + d w, y in F_{s-r}
    };

    /// {x in F_s : d x in F_{s-r} + d F_{s-1}} together with the d^r images of its spanning vectors.
    Numerator numerator(int r, int s, int t) const
    {
        const std::uint32_t p = fc_.p;
        Numerator out{linfp::Subspace(p, dim(t)), {}};
        auto fs = filtered(s, t).basis();
        if (fs.empty())
            return out;
        if (t == 0 || dim(t - 1) == 0) {
            out.space.add_all(fs);
            return out;
        }
        const std::size_t tdim = dim(t - 1);
        auto low = filtered(s - r, t - 1).basis();
        auto bnd = boundary_of(s - 1, t - 1).basis();
        std::vector<linfp::Vec> cols;
        for (const auto& x : fs)
            cols.push_back(boundary(t, x));
        for (const auto* group : {&low, &bnd})
            for (const auto& w : *group) {
                linfp::Vec neg(w.size());
                for (std::size_t i = 0; i < w.size(); ++i)
                    neg[i] = w[i] == 0 ? 0 : p - w[i];
                cols.push_back(std::move(neg));
            }
        Fp f(p);
        const Residue sign = f.sign((t - s) % 2);
        auto m = linfp::FpMatrix::from_columns(p, tdim, cols);
        for (const auto& k : linfp::kernel_basis(m)) {
            linfp::Vec x(dim(t), 0);
            for (std::size_t i = 0; i < fs.size(); ++i)
                for (std::size_t c = 0; c < x.size(); ++c)
                    x[c] = f.add(x[c], f.mul(k[i], fs[i][c]));
            linfp::Vec y(tdim, 0);
            for (std::size_t j = 0; j < low.size(); ++j)
                for (std::size_t c = 0; c < tdim; ++c)
                    y[c] = f.add(y[c], f.mul(k[fs.size() + j], low[j][c]));
            for (auto& c : y)
                c = f.mul(c, sign);
            out.space.add(x);
            out.d_images.push_back(std::move(y));
        }
        return out;
    }

private:
    const FilteredComplex& fc_;
};

} // namespace

ExactCoupleRun exact_couple_run(const FilteredComplex& fc)
{
    fc.validate();
    CoupleSpaces sp(fc);
    const int top = fc.top_degree();
    const int levels = fc.max_level();
    const int last = levels + 1; // E^{levels+1} = E-infinity

    struct Entry {
        std::size_t dim = 0;
        std::size_t rank_out = 0; ///< rank of d^r leaving (s, t)
    };
    // entries[r][t][s]
    std::vector<std::vector<std::vector<Entry>>> entries(
        static_cast<std::size_t>(last) + 2,
        std::vector<std::vector<Entry>>(static_cast<std::size_t>(top) + 1,
                                        std::vector<Entry>(static_cast<std::size_t>(levels) + 1)));
    ExactCoupleRun run;
    for (int r = 1; r <= last + 1; ++r) {
        for (int t = 0; t <= top; ++t)
            for (int s = 0; s <= levels; ++s) {
                auto num = sp.numerator(r, s, t);
                auto den = sp.denominator(r, s, t);
                if (!num.space.contains(den)) {
                    run.consistency_failures.push_back("denominator escapes numerator at E^" + std::to_string(r) +
                                                       "_{" + std::to_string(s) + "," + std::to_string(t - s) + "}");
                    continue;
                }
                Entry& e = entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
                e.dim = num.space.dim() - den.dim();
                if (s - r >= 0 && t >= 1) {
                    auto target = sp.denominator(r, s - r, t - 1);
                    std::size_t before = target.dim();
                    target.add_all(num.d_images);
                    e.rank_out = target.dim() - before;
                }
            }
        if (r <= last) {
            std::map<Bidegree, std::size_t> page;
            for (int t = 0; t <= top; ++t)
                for (int s = 0; s <= levels; ++s)
                    if (auto d = entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)]
                                        [static_cast<std::size_t>(s)]
                                            .dim)
                        page[{s, t - s}] = d;
            run.pages.push_back(std::move(page));
        }
        if (r >= 2) {
            // E^r must be the homology of (E^{r-1}, d^{r-1})
            const auto& prev = entries[static_cast<std::size_t>(r - 1)];
            for (int t = 0; t <= top; ++t)
                for (int s = 0; s <= levels; ++s) {
                    const Entry& e = prev[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
                    std::size_t in = 0;
                    int src_s = s + (r - 1);
                    if (src_s <= levels && t + 1 <= top)
                        in = prev[static_cast<std::size_t>(t + 1)][static_cast<std::size_t>(src_s)].rank_out;
                    std::size_t expected = e.dim - e.rank_out - in;
                    std::size_t got =
                        entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]
                            .dim;
                    if (expected != got)
                        run.consistency_failures.push_back(
                            "E^" + std::to_string(r) + "_{" + std::to_string(s) + "," + std::to_string(t - s) +
                            "} has dimension " + std::to_string(got) + " but H(E^" + std::to_string(r - 1) +
                            ") has " + std::to_string(expected));
                }
        }
    }
    run.einf = run.pages.back();
    return run;
}

bool ConvergenceCheck::ok() const
{
    return std::all_of(degrees.begin(), degrees.end(), [](const DegreeComparison& d) { return d.ok(); });
}

ConvergenceCheck compare_with_total_homology(const FilteredComplex& fc, const ExactCoupleRun& run)
{
    ConvergenceCheck check;
    auto h = total_homology(fc);
    for (int t = 0; t <= fc.top_degree(); ++t) {
        DegreeComparison dc;
        dc.degree = t;
        dc.homology = h[static_cast<std::size_t>(t)];
        for (const auto& [b, dim] : run.einf)
            if (b.total() == t)
                dc.einf_total += dim;
        check.degrees.push_back(dc);
    }
    return check;
}

FilteredComplex filtered_complex_from(const Derivation& d, int n)
{
    const Presentation& pres = d.base();
    if (n > pres.max_degree())
        throw InvalidArgument("complex requested beyond the truncation box");
    FilteredComplex fc;
    fc.p = pres.p();
    // offset of each bidegree inside its total degree
    std::map<Bidegree, std::size_t> offset;
    std::vector<std::vector<Bidegree>> by_degree(static_cast<std::size_t>(n) + 1);
    for (const auto& b : pres.occupied_bidegrees())
        if (b.total() <= n)
            by_degree[static_cast<std::size_t>(b.total())].push_back(b);
    fc.levels.resize(static_cast<std::size_t>(n) + 1);
    for (int t = 0; t <= n; ++t) {
        auto& lv = fc.levels[static_cast<std::size_t>(t)];
        for (const auto& b : by_degree[static_cast<std::size_t>(t)]) {
            offset[b] = lv.size();
            lv.insert(lv.end(), pres.basis_in_bidegree(b).size(), b.n);
        }
    }
    for (int t = 0; t <= n; ++t) {
        std::size_t rows = t == 0 ? 0 : fc.levels[static_cast<std::size_t>(t - 1)].size();
        linfp::FpMatrix m(fc.p, rows, fc.levels[static_cast<std::size_t>(t)].size());
        for (const auto& b : by_degree[static_cast<std::size_t>(t)]) {
            const auto& basis = pres.basis_in_bidegree(b);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const Element image = d.apply(basis[j]);
                for (const auto& [tm, c] : image.terms()) {
                    Bidegree tb = pres.bidegree_of(tm);
                    m.at(offset.at(tb) + pres.basis_index(tm), offset.at(b) + j) = c;
                }
            }
        }
        fc.boundary.push_back(std::move(m));
    }
    return fc;
}

FilteredComplex random_filtered_complex(std::uint64_t seed, std::uint32_t p, int max_levels, int max_dim)
{
    if (max_levels < 1 || max_dim < 1)
        throw InvalidArgument("random filtered complex needs at least one level and one basis vector");
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    const int levels = uniform(1, max_levels);
    const int top = uniform(1, 4);
    const int budget = uniform(1, max_dim);

    FilteredComplex fc;
    fc.p = p;
    fc.levels.assign(static_cast<std::size_t>(top) + 1, {});
    std::vector<std::pair<std::pair<int, std::size_t>, std::pair<int, std::size_t>>> pairs; // (t+1, a) -> (t, b)
    int used = 0;
    while (used < budget) {
        if (budget - used >= 2 && uniform(0, 2) > 0) {
            int t = uniform(0, top - 1);
            int la = uniform(0, levels - 1);
            int lb = uniform(0, la);
            auto& hi = fc.levels[static_cast<std::size_t>(t + 1)];
            auto& lo = fc.levels[static_cast<std::size_t>(t)];
            hi.push_back(la);
            lo.push_back(lb);
            pairs.push_back({{t + 1, hi.size() - 1}, {t, lo.size() - 1}});
            used += 2;
        } else {
            fc.levels[static_cast<std::size_t>(uniform(0, top))].push_back(uniform(0, levels - 1));
            used += 1;
        }
    }
    for (int t = 0; t <= top; ++t) {
        std::size_t rows = t == 0 ? 0 : fc.dim(t - 1);
        fc.boundary.emplace_back(p, rows, fc.dim(t));
    }
    for (const auto& [a, b] : pairs)
        fc.boundary[static_cast<std::size_t>(a.first)].at(b.second, a.second) = 1;

    // e_i <- e_i + c e_j with level_j <= level_i: column op on d_t, row op on d_{t+1}
    Fp f(p);
    const int ops = 3 * used;
    for (int k = 0; k < ops; ++k) {
        int t = uniform(0, top);
        const auto& lv = fc.levels[static_cast<std::size_t>(t)];
        if (lv.size() < 2)
            continue;
        auto i = static_cast<std::size_t>(uniform(0, static_cast<int>(lv.size()) - 1));
        auto j = static_cast<std::size_t>(uniform(0, static_cast<int>(lv.size()) - 1));
        if (i == j || lv[j] > lv[i])
            continue;
        Residue c = static_cast<Residue>(uniform(1, static_cast<int>(p) - 1));
        auto& dt = fc.boundary[static_cast<std::size_t>(t)];
        for (std::size_t row = 0; row < dt.rows(); ++row)
            dt.at(row, i) = f.add(dt.at(row, i), f.mul(c, dt.at(row, j)));
        if (t < top) {
            auto& up = fc.boundary[static_cast<std::size_t>(t + 1)];
            for (std::size_t col = 0; col < up.cols(); ++col)
                up.at(j, col) = f.sub(up.at(j, col), f.mul(c, up.at(i, col)));
        }
    }
    fc.validate();
    return fc;
}

} // namespace gradss::specseq
