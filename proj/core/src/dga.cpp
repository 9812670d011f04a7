#include "gradss/dga.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "gradss/parallel.hpp"

namespace gradss::dga {

Derivation::Derivation(PresentationPtr base, int r, std::vector<Element> images)
    : base_(std::move(base)), r_(r), images_(std::move(images))
{
    if (!base_)
        throw InvalidArgument("derivation without a base presentation");
    if (images_.size() != base_->size())
        throw InvalidArgument("derivation needs one image per generator");
}

bool Derivation::is_zero() const
{
    return std::all_of(images_.begin(), images_.end(), [](const Element& e) { return e.is_zero(); });
}

bool Derivation::preserves_weight() const
{
    for (std::size_t i = 0; i < images_.size(); ++i)
        for (const auto& [m, c] : images_[i].terms())
            if (base_->weight_of(m) != base_->generator(i).weight)
                return false;
    return true;
}

Element Derivation::apply(const Monomial& m) const
{
    const Presentation& pres = *base_;
    Element out = pres.zero(pres.bidegree_of(m) + shift());
    const std::size_t k = pres.size();
    std::vector<int> left(k, 0);
    int left_degree = 0;
    for (std::size_t i = 0; i < k; ++i) {
        int e = m[i];
        if (e > 0 && !images_[i].is_zero()) {
            std::vector<int> right(k, 0);
            for (std::size_t j = i + 1; j < k; ++j)
                right[j] = m[j];
            // d(g^e) = e g^{e-1} d(g) for even g; e = 1 for exterior g
            Element mid =
                pres.multiply(pres.monomial_element(Monomial::generator(k, i, e - 1)), images_[i]).scaled(e);
            Element term = pres.multiply(pres.multiply(pres.monomial_element(Monomial(left)), mid),
                                         pres.monomial_element(Monomial(right)));
            out += term.scaled(left_degree % 2 == 0 ? 1 : -1);
        }
        left[i] = e;
        left_degree += e * pres.generator(i).total_degree();
    }
    return out;
}

Element Derivation::apply(const Element& e) const
{
    Element out = base_->zero(e.bidegree() + shift());
    for (const auto& [m, c] : e.terms())
        out += apply(m).scaled(c);
    return out;
}

Derivation extend_derivation(PresentationPtr pres, int r, const std::map<std::string, Element>& gen_images)
{
    if (!pres)
        throw InvalidArgument("derivation without a base presentation");
    if (r < 1)
        throw InvalidArgument("derivation page r must be >= 1, got " + std::to_string(r));
    const Bidegree shift{-r, r - 1};
    std::vector<Element> images;
    images.reserve(pres->size());
    for (const auto& g : pres->generators())
        images.push_back(pres->zero(g.bidegree + shift));
    for (const auto& [name, img] : gen_images) {
        std::size_t i = pres->require_index(name);
        const auto& g = pres->generator(i);
        Bidegree want = g.bidegree + shift;
        if (img.is_zero())
            continue;
        if (img.p() != pres->p())
            throw InvalidArgument("image of '" + name + "' is over a different prime");
        if (img.bidegree() != want)
            throw InvalidArgument("image of '" + name + "' has bidegree " + algebra::to_string(img.bidegree()) +
                                  ", expected " + algebra::to_string(want));
        for (const auto& [m, c] : img.terms()) {
            if (!pres->admissible(m) || pres->bidegree_of(m) != want)
                throw InvalidArgument("image of '" + name + "' is not homogeneous of bidegree " +
                                      algebra::to_string(want));
        }
        if (g.kind == algebra::Kind::Truncated) {
            // d(g^h) = h g^{h-1} d(g) must vanish for d to descend to the truncation
            Element top = pres->multiply(
                pres->monomial_element(Monomial::generator(pres->size(), i, g.height - 1)), img);
            if (!top.beyond_truncation() && !top.scaled(g.height).is_zero())
                throw InvalidArgument("d(" + name + ") is incompatible with " + name + "^" +
                                      std::to_string(g.height) + " = 0");
        }
        images[i] = img;
    }
    return Derivation(std::move(pres), r, std::move(images));
}

std::vector<DSquaredViolation> check_d_squared(const Derivation& d, int n)
{
    const Presentation& pres = d.base();
    std::vector<DSquaredViolation> out;
    if (d.is_zero())
        return out;
    for (const auto& b : pres.occupied_bidegrees()) {
        if (b.total() > n)
            continue;
        for (const auto& m : pres.basis_in_bidegree(b)) {
            Element dd = d.apply(d.apply(m));
            if (!dd.is_zero())
                out.push_back({m, std::move(dd)});
        }
    }
    return out;
}

ClassTable::ClassTable(PresentationPtr pres, bool weight_split, int certified_degree)
    : pres_(std::move(pres)), weight_split_(weight_split), certified_(certified_degree)
{
}

void ClassTable::insert(Cell cell)
{
    CellKey key{cell.bidegree, cell.weight};
    cells_.insert_or_assign(key, std::move(cell));
}

const Cell* ClassTable::find(const CellKey& key) const
{
    auto it = cells_.find(key);
    return it == cells_.end() ? nullptr : &it->second;
}

std::size_t ClassTable::dimension(Bidegree b) const
{
    std::size_t dim = 0;
    for (auto it = cells_.lower_bound({b, INT_MIN}); it != cells_.end() && it->first.bidegree == b; ++it)
        dim += it->second.representatives.size();
    return dim;
}

std::vector<std::size_t> ClassTable::dimensions_by_total_degree(int n) const
{
    std::vector<std::size_t> out(static_cast<std::size_t>(std::max(n, -1) + 1), 0);
    for (const auto& [key, cell] : cells_) {
        int t = key.bidegree.total();
        if (t <= n)
            out[static_cast<std::size_t>(t)] += cell.representatives.size();
    }
    return out;
}

std::map<Bidegree, std::size_t> ClassTable::dimension_table() const
{
    std::map<Bidegree, std::size_t> out;
    for (const auto& [key, cell] : cells_)
        if (!cell.representatives.empty())
            out[key.bidegree] += cell.representatives.size();
    return out;
}

std::vector<Element> ClassTable::representatives(Bidegree b) const
{
    std::vector<Element> out;
    for (auto it = cells_.lower_bound({b, INT_MIN}); it != cells_.end() && it->first.bidegree == b; ++it)
        for (const auto& v : it->second.representatives)
            out.push_back(to_element(b, v));
    return out;
}

linfp::Vec ClassTable::to_vector(const Element& e) const
{
    const auto& basis = pres_->basis_in_bidegree(e.bidegree());
    linfp::Vec v(basis.size(), 0);
    for (const auto& [m, c] : e.terms())
        v[pres_->basis_index(m)] = c;
    return v;
}

Element ClassTable::to_element(Bidegree b, const linfp::Vec& v) const
{
    const auto& basis = pres_->basis_in_bidegree(b);
    Element e = pres_->zero(b);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            e.add_term(basis[i], v[i]);
    return e;
}

std::optional<linfp::Vec> ClassTable::reduce(const Element& e) const
{
    const Bidegree b = e.bidegree();
    linfp::Vec coords;
    if (b.n < 0 || b.m < 0)
        return e.is_zero() ? std::optional<linfp::Vec>(coords) : std::nullopt;
    if (!pres_->in_box(b)) {
        if (e.is_zero())
            return coords;
        throw InvalidArgument("class at " + algebra::to_string(b) + " lies beyond the computed range");
    }
    const auto& basis = pres_->basis_in_bidegree(b);
    linfp::Vec v = to_vector(e);
    std::set<int> seen_weights;
    bool any_cell = false;
    for (auto it = cells_.lower_bound({b, INT_MIN}); it != cells_.end() && it->first.bidegree == b; ++it) {
        any_cell = true;
        const Cell& cell = it->second;
        linfp::Vec part = v;
        if (cell.weight != Cell::kMixedWeight) {
            seen_weights.insert(cell.weight);
            for (std::size_t i = 0; i < basis.size(); ++i)
                if (pres_->weight_of(basis[i]) != cell.weight)
                    part[i] = 0;
        }
        std::vector<linfp::Vec> cols = cell.boundaries;
        cols.insert(cols.end(), cell.representatives.begin(), cell.representatives.end());
        if (cols.empty()) {
            if (!linfp::is_zero(part))
                return std::nullopt;
            continue;
        }
        auto sol = linfp::solve(pres_->p(), basis.size(), cols, part);
        if (!sol)
            return std::nullopt;
        coords.insert(coords.end(), sol->begin() + static_cast<std::ptrdiff_t>(cell.boundaries.size()), sol->end());
    }
    if (!any_cell && !basis.empty() && !e.is_zero())
        throw InvalidArgument("no classes computed at " + algebra::to_string(b));
    if (weight_split_)
        for (const auto& [m, c] : e.terms())
            if (!seen_weights.contains(pres_->weight_of(m)))
                return std::nullopt;
    return coords;
}

bool ClassTable::is_boundary(const Element& e) const
{
    auto coords = reduce(e);
    return coords && linfp::is_zero(*coords);
}

namespace {

std::vector<linfp::Vec> images_of(const Derivation& d, Bidegree source, int weight, bool split)
{
    const Presentation& pres = d.base();
    std::vector<linfp::Vec> out;
    Bidegree target = source + d.shift();
    if (source.n < 0 || source.m < 0 || !pres.in_box(source) || target.n < 0 || target.m < 0)
        return out;
    const auto& tbasis = pres.basis_in_bidegree(target);
    for (const auto& m : pres.basis_in_bidegree(source)) {
        if (split && pres.weight_of(m) != weight)
            continue;
        linfp::Vec v(tbasis.size(), 0);
        const Element image = d.apply(m);
        for (const auto& [tm, c] : image.terms())
            v[pres.basis_index(tm)] = c;
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

HomologyResult homology(PresentationPtr pres, const Derivation& d, int n)
{
    if (!pres)
        throw InvalidArgument("homology without a presentation");
    if (n > pres->max_degree())
        throw InvalidArgument("homology requested through degree " + std::to_string(n) +
                              " beyond the truncation bound " + std::to_string(pres->max_degree()));
    if (d.base().generators().size() != pres->size() || d.base().p() != pres->p())
        throw InvalidArgument("derivation is defined on a different presentation");
    auto violations = check_d_squared(d, n);
    if (!violations.empty())
        throw DSquaredError("d^2 != 0 on " + pres->to_string(violations.front().source) + ": d^2 = " +
                            pres->to_string(violations.front().d_squared));

    const bool split = d.preserves_weight();
    HomologyResult result(pres, split, std::min(n, pres->max_degree() - std::max(d.r(), d.r() - 1)));

    std::vector<CellKey> keys;
    for (const auto& b : pres->occupied_bidegrees()) {
        if (b.total() > n)
            continue;
        std::set<int> weights;
        if (split)
            for (const auto& m : pres->basis_in_bidegree(b))
                weights.insert(pres->weight_of(m));
        else
            weights.insert(Cell::kMixedWeight);
        for (int w : weights)
            keys.push_back({b, w});
    }

    std::vector<Cell> cells(keys.size());
    parallel_for(keys.size(), [&](std::size_t idx) {
        const auto [b, w] = keys[idx];
        const auto& basis = pres->basis_in_bidegree(b);
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (!split || pres->weight_of(basis[i]) == w)
                members.push_back(i);

        std::vector<linfp::Vec> cycles;
        auto outgoing = images_of(d, b, w, split);
        if (outgoing.empty() || outgoing.front().empty()) {
            for (auto i : members) {
                linfp::Vec v(basis.size(), 0);
                v[i] = 1;
                cycles.push_back(std::move(v));
            }
        } else {
            auto dm = linfp::FpMatrix::from_columns(pres->p(), outgoing.front().size(), outgoing);
            for (const auto& k : linfp::kernel_basis(dm)) {
                linfp::Vec v(basis.size(), 0);
                for (std::size_t j = 0; j < members.size(); ++j)
                    v[members[j]] = k[j];
                cycles.push_back(std::move(v));
            }
        }
        auto incoming = images_of(d, b - d.shift(), w, split);
        Cell cell;
        cell.bidegree = b;
        cell.weight = w;
        cell.boundaries = linfp::Subspace(pres->p(), basis.size(), incoming).basis();
        cell.representatives = linfp::subquotient_basis(pres->p(), basis.size(), cycles, incoming);
        cells[idx] = std::move(cell);
    });
    for (auto& c : cells)
        result.insert(std::move(c));
    return result;
}

namespace {

class RepEvaluator {
public:
    RepEvaluator(const Presentation& target, const Presentation& candidate, std::vector<Element> reps)
        : target_(target), candidate_(candidate), reps_(std::move(reps)), powers_(reps_.size())
    {
        for (std::size_t i = 0; i < reps_.size(); ++i)
            powers_[i].push_back(target_.unit());
    }

    Element power(std::size_t i, int e)
    {
        while (static_cast<int>(powers_[i].size()) <= e)
            powers_[i].push_back(target_.multiply(powers_[i].back(), reps_[i]));
        return powers_[i][static_cast<std::size_t>(e)];
    }

    Element operator()(const Monomial& m)
    {
        Element out = target_.unit();
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0)
                out = target_.multiply(out, power(i, m[i]));
        return out;
    }

    Element operator()(const Element& e)
    {
        Element out = target_.zero(e.bidegree());
        for (const auto& [m, c] : e.terms())
            out += (*this)(m).scaled(c);
        return out;
    }

private:
    const Presentation& target_;
    const Presentation& candidate_;
    std::vector<Element> reps_;
    std::vector<std::vector<Element>> powers_;
};

} // namespace

IsoReport verify_presentation_iso(const HomologyResult& h, const Presentation& candidate,
                                  const std::map<std::string, Element>& gen_reps,
                                  std::span<const Relation> relations, int n)
{
    IsoReport report;
    report.verified_through = n;
    const Presentation& target = h.presentation();
    if (candidate.p() != target.p())
        throw InvalidArgument("candidate and homology use different primes");
    if (n > h.certified_degree()) {
        report.failures.push_back("requested degree " + std::to_string(n) + " exceeds certified degree " +
                                  std::to_string(h.certified_degree()));
        return report;
    }
    const Presentation cand = candidate.with_max_degree(n);

    std::vector<Element> reps;
    for (const auto& g : cand.generators()) {
        auto it = gen_reps.find(g.name);
        if (it == gen_reps.end()) {
            report.failures.push_back("no representative for generator " + g.name);
            reps.push_back(target.zero(g.bidegree));
            continue;
        }
        if (it->second.bidegree() != g.bidegree)
            report.failures.push_back("representative of " + g.name + " has bidegree " +
                                      algebra::to_string(it->second.bidegree()) + ", generator has " +
                                      algebra::to_string(g.bidegree));
        else if (g.total_degree() <= n && !h.is_cycle(it->second))
            report.failures.push_back("representative of " + g.name + " is not a cycle");
        reps.push_back(it->second);
    }
    if (!report.failures.empty())
        return report;
    RepEvaluator f(target, cand, reps);

    for (const auto& rel : relations) {
        RelationCheck rc{rel.label, rel.lhs.bidegree().total(), false, false};
        if (rc.total_degree <= n) {
            rc.checked = true;
            rc.holds = h.is_boundary(f(rel.difference()));
            if (!rc.holds)
                report.failures.push_back("relation " + rel.label + " fails: " + target.to_string(f(rel.difference())) +
                                          " survives in total degree " + std::to_string(rc.total_degree));
        }
        report.relations.push_back(std::move(rc));
    }

    std::set<Bidegree> bidegrees;
    for (const auto& b : cand.occupied_bidegrees())
        bidegrees.insert(b);
    for (const auto& [b, dim] : h.dimension_table())
        if (b.total() <= n)
            bidegrees.insert(b);

    report.degrees.resize(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d)
        report.degrees[static_cast<std::size_t>(d)].total_degree = d;

    for (const auto& b : bidegrees) {
        auto& row = report.degrees[static_cast<std::size_t>(b.total())];
        const std::size_t hdim = h.dimension(b);
        row.homology_dimension += hdim;
        const auto& fb = cand.basis_in_bidegree(b);
        if (fb.empty())
            continue;
        linfp::Subspace ideal(cand.p(), fb.size());
        for (const auto& rel : relations) {
            Element diff = rel.difference();
            Bidegree cofactor = b - diff.bidegree();
            if (cofactor.n < 0 || cofactor.m < 0 || diff.is_zero())
                continue;
            for (const auto& m : cand.basis_in_bidegree(cofactor)) {
                if (ideal.dim() == fb.size())
                    break;
                Element prod = cand.multiply(cand.monomial_element(m), diff);
                linfp::Vec v(fb.size(), 0);
                for (const auto& [pm, c] : prod.terms())
                    v[cand.basis_index(pm)] = c;
                ideal.add(v);
            }
        }
        row.candidate_dimension += fb.size() - ideal.dim();

        std::vector<linfp::Vec> images;
        for (const auto& m : fb) {
            auto coords = h.reduce(f(m));
            if (!coords) {
                report.failures.push_back("image of " + cand.to_string(m) + " is not a cycle");
                continue;
            }
            if (!coords->empty())
                images.push_back(std::move(*coords));
        }
        if (hdim > 0 && !images.empty())
            row.image_rank += linfp::Subspace(cand.p(), hdim, images).dim();
    }
    for (const auto& row : report.degrees) {
        if (row.candidate_dimension != row.homology_dimension)
            report.failures.push_back("degree " + std::to_string(row.total_degree) + ": candidate has dimension " +
                                      std::to_string(row.candidate_dimension) + ", homology has " +
                                      std::to_string(row.homology_dimension));
        else if (row.image_rank != row.homology_dimension)
            report.failures.push_back("degree " + std::to_string(row.total_degree) + ": map hits rank " +
                                      std::to_string(row.image_rank) + " of " +
                                      std::to_string(row.homology_dimension));
    }
    report.ok = report.failures.empty();
    return report;
}

} // namespace gradss::dga
