#include "gradss/thhku.hpp"

#include <algorithm>
#include <sstream>

namespace gradss::thhku {

using algebra::GeneratorSpec;
using algebra::Kind;
using algebra::Monomial;
using dga::Relation;

const std::vector<InputFact>& input_facts()
{
    static const std::vector<InputFact> facts = {
        {"ku-v0",
         "V(0)_* ku = P(u), u in degree 2",
         "ku_* = Z_p[u] with u the Bott class; smashing with the mod p Moore spectrum V(0) reduces mod p"},
        {"ku-v1",
         "V(1)_* ku = P_{p-1}(u)",
         "v_1 acts on V(0)_* ku as u^{p-1}; V(1) is the cofiber of v_1 on V(0)"},
        {"bokstedt",
         "THH_*(HZ_p; HF_p) = E(l1) (x) P(m1), |l1| = 2p-1, |m1| = 2p",
         "Bokstedt's computation of topological Hochschild homology of the p-adic integers"},
        {"brun-e2",
         "first-quadrant multiplicative spectral sequence with E^2_{n,m} = (coefficient factor)_m (x) "
         "(Hochschild factor)_n, differentials d_r of bidegree (-r, r-1) obeying the Leibniz rule",
         "generalized Brun spectral sequence for THH(A; B) with coefficients in a ring spectrum"},
        {"hfp-coefficients",
         "V(0)_* THH(ku; HZ_p) = THH_*(ku; HF_p), so step 2's answer is the Hochschild factor of step 3",
         "HF_p = V(0) smash HZ_p as HZ_p-modules"},
        {"must-die",
         "u^{p-2} su = 0 in V(1)_* THH(ku), so u^{p-2} su must be hit in the step-3 spectral sequence",
         "sigma is a derivation and u^{p-1} = v_1 vanishes in V(1)_* ku, so 0 = sigma(u^{p-1}) = "
         "(p-1) u^{p-2} su; the class u^{p-2} su is nonzero on E^2"},
        {"u-permanent",
         "u in E^2_{0,2} is a permanent cycle that is never hit",
         "the unit V(1)_* ku -> V(1)_* THH(ku) is split injective by the augmentation THH(ku) -> ku"},
        {"weights",
         "delta-weights in Z/(p-1): u and su weight 1, l1 and m1 weight 0; differentials preserve weight",
         "Galois action of Z/(p-1) on ku through Adams operations (Ausoni); l1 and m1 come from the "
         "Adams summand, on which the action is trivial"},
        {"hfp-ku",
         "(HF_p)_* ku = P_{p-1}(u) (x) P(xi1-bar) (x) ... (documentation only)",
         "Adams' computation of the mod p homology of connective K-theory"},
    };
    return facts;
}

const InputFact& fact(const std::string& id)
{
    for (const auto& f : input_facts())
        if (f.id == id)
            return f;
    throw InvalidArgument("unknown input fact '" + id + "'");
}

bool StepReport::passed() const
{
    return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.passed; });
}

bool PipelineReport::passed() const
{
    return std::all_of(steps.begin(), steps.end(), [](const StepReport& s) { return s.passed(); });
}

std::string describe(const Presentation& pres)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& g : pres.generators()) {
        if (!first)
            os << ' ';
        first = false;
        os << g.name << ':' << algebra::to_string(g.kind);
        if (g.kind == Kind::Truncated)
            os << g.height;
        os << algebra::to_string(g.bidegree);
        if (g.weight != 0)
            os << "w" << g.weight;
    }
    return os.str();
}

namespace {

void require_prime(std::uint32_t p)
{
    if (!is_prime(p))
        throw InvalidArgument(std::to_string(p) + " is not prime");
    if (p < 5)
        throw InvalidArgument("the computation needs p >= 5, got " + std::to_string(p));
}

Certificate certificate(std::string name, bool passed, std::string detail, std::vector<std::string> facts)
{
    return {std::move(name), passed, std::move(detail), std::move(facts)};
}

std::string join_dims(const std::vector<std::size_t>& a)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < a.size(); ++i)
        os << (i ? "," : "") << a[i];
    return os.str();
}

/// First degree where two series differ, or -1.
int first_difference(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t x = i < a.size() ? a[i] : 0;
        std::size_t y = i < b.size() ? b[i] : 0;
        if (x != y)
            return static_cast<int>(i);
    }
    return -1;
}

} // namespace

std::map<std::string, int> weight_table(std::uint32_t p)
{
    require_prime(p);
    std::map<std::string, int> w{{"u", 1}, {"l1", 0}, {"mu2", 0}};
    for (std::uint32_t i = 0; i < p; ++i)
        w["a" + std::to_string(i)] = 1;
    for (std::uint32_t i = 1; i < p; ++i)
        w["b" + std::to_string(i)] = 1;
    return w;
}

Step1Result step1_tor(std::uint32_t p, int n)
{
    require_prime(p);
    auto tor = homalg::koszul_tor(homalg::BaseRing::zp_poly(p), homalg::CyclicModule::fp(),
                                  homalg::CyclicModule::zp(), n);
    auto rec = homalg::recognize_free_presentation(p, tor);
    StepReport report;
    report.name = "step1-tor";
    report.facts = {"ku-v0"};

    std::vector<GeneratorSpec> gens;
    if (rec.presentation) {
        gens = rec.presentation->generators();
        if (gens.size() == 1)
            gens[0].name = "su";
    }
    Presentation pres(p, gens, n);
    std::ostringstream table;
    for (const auto& [b, d] : tor.dims)
        table << algebra::to_string(b) << ":" << d << " ";
    report.certificates.push_back(certificate("tor-table", !tor.dims.empty(),
                                              "Tor^{Z_p[u]}(F_p, Z_p) through internal degree " +
                                                  std::to_string(n) + ": " + table.str(),
                                              {"ku-v0", "enumeration"}));
    report.certificates.push_back(
        certificate("free-recognition", rec.presentation.has_value() && rec.unique, rec.reason, {"enumeration"}));
    bool one_odd = gens.size() == 1 && gens[0].kind == Kind::Exterior;
    report.certificates.push_back(certificate(
        "exterior-on-one-class", one_odd,
        one_odd ? "E(su), |su| = " + std::to_string(gens[0].total_degree()) : "not a single exterior generator",
        {"enumeration"}));
    report.result = describe(pres);
    return {std::move(pres), std::move(tor), std::move(rec), std::move(report)};
}

Presentation brun_v0_e2(const Presentation& step1, std::uint32_t p, int n)
{
    require_prime(p);
    std::vector<GeneratorSpec> gens;
    for (auto g : step1.generators()) {
        // Tor classes sit in the coefficient rows
        g.bidegree = {0, g.total_degree()};
        gens.push_back(g);
    }
    const int ip = static_cast<int>(p);
    gens.push_back(GeneratorSpec::exterior("l1", {2 * ip - 1, 0}));
    gens.push_back(GeneratorSpec::polynomial("m1", {2 * ip, 0}));
    return Presentation(p, std::move(gens), n);
}

Step2Result step2_v0(std::uint32_t p, int n)
{
    require_prime(p);
    auto step1 = step1_tor(p);
    const Presentation e2 = brun_v0_e2(step1.presentation, p, n + 1);
    StepReport report;
    report.name = "step2-v0";
    report.facts = {"bokstedt", "brun-e2"};
    report.certificates.push_back(certificate("step1-input", step1.report.passed(), step1.report.result, {"ku-v0"}));

    specseq::Page page = specseq::init_page(e2, n + 1);
    const int ip = static_cast<int>(p);
    std::size_t witness = e2.dimension_series(2 * ip - 2)[static_cast<std::size_t>(2 * ip - 2)];
    report.certificates.push_back(certificate("empty-degree-2p-2", witness == 0,
                                              "E^2 has dimension " + std::to_string(witness) + " in total degree " +
                                                  std::to_string(2 * ip - 2),
                                              {"enumeration"}));

    auto collapse = specseq::certify_collapse(page, n);
    report.certificates.push_back(certificate(
        "collapse-at-E2", collapse.collapsed && collapse.uncertified.empty(),
        std::to_string(collapse.classes.size()) + " classes certified through total degree " +
            std::to_string(collapse.certified_through) + ", " + std::to_string(collapse.refused.size()) +
            " refused, " + std::to_string(collapse.uncertified.size()) + " uncertified",
        {"brun-e2", "enumeration"}));

    Presentation candidate = e2.with_max_degree(n);
    std::map<std::string, Element> lifts;
    for (std::size_t i = 0; i < e2.size(); ++i)
        lifts.emplace(e2.generator(i).name, e2.generator_element(i));
    auto abutment = specseq::assemble_abutment(page, candidate, lifts, {}, n);
    report.certificates.push_back(certificate("abutment-free-commutative", abutment.ok() && abutment.free_commutative,
                                              abutment.ok() ? "E-infinity is free graded-commutative on su, l1, m1"
                                                            : abutment.unresolved.front(),
                                              {"enumeration"}));

    auto einf = page.classes.dimensions_by_total_degree(n);
    auto series = candidate.dimension_series(n);
    int diff = first_difference(einf, series);
    report.certificates.push_back(certificate("dimension-series", diff < 0,
                                              diff < 0 ? "E-infinity matches E(su, l1) (x) P(m1) through degree " +
                                                             std::to_string(n)
                                                       : "first mismatch in total degree " + std::to_string(diff),
                                              {"enumeration"}));
    report.result = describe(candidate);
    std::vector<specseq::Page> pages{page};
    return {std::move(candidate), std::move(collapse), std::move(abutment), std::move(pages), std::move(report)};
}

Presentation brun_v1_e2(const Presentation& step2, std::uint32_t p, int n)
{
    require_prime(p);
    std::vector<GeneratorSpec> gens{GeneratorSpec::truncated("u", static_cast<int>(p) - 1, {0, 2}, 1)};
    for (auto g : step2.generators()) {
        // the Hochschild factor sits in the columns
        g.bidegree = {g.total_degree(), 0};
        g.weight = g.name == "su" ? 1 : 0;
        gens.push_back(g);
    }
    return Presentation(p, std::move(gens), n);
}

Presentation omega_infinity(std::uint32_t p, int n)
{
    auto w = weight_table(p);
    const int ip = static_cast<int>(p);
    std::vector<GeneratorSpec> gens{GeneratorSpec::polynomial("u", {0, 2}, w["u"]),
                                    GeneratorSpec::exterior("l1", {2 * ip - 1, 0}, w["l1"]),
                                    GeneratorSpec::polynomial("mu2", {2 * ip * ip, 0}, w["mu2"])};
    for (int i = 0; i < ip; ++i) {
        std::string name = "a" + std::to_string(i);
        gens.push_back(GeneratorSpec::exterior(name, {2 * ip * i + 3, 0}, w[name]));
    }
    for (int i = 1; i < ip; ++i) {
        std::string name = "b" + std::to_string(i);
        gens.push_back(GeneratorSpec::polynomial(name, {2 * ip * i, 2}, w[name]));
    }
    return Presentation(p, std::move(gens), n);
}

namespace {

/// Exact products of generator monomials, independent of the truncation box.
class MonomialAlgebra {
public:
    explicit MonomialAlgebra(const Presentation& pres) : pres_(pres) {}

    Element gen(const std::string& name, int power = 1) const
    {
        Monomial m = Monomial::generator(pres_.size(), pres_.require_index(name), power);
        Element e(pres_.p(), pres_.bidegree_of(m));
        e.add_term(m, 1);
        return e;
    }

    Element mul(const Element& a, const Element& b) const
    {
        Element out(pres_.p(), a.bidegree() + b.bidegree());
        for (const auto& [ma, ca] : a.terms())
            for (const auto& [mb, cb] : b.terms()) {
                auto prod = pres_.multiply(ma, mb);
                if (prod.sign != 0)
                    out.add_term(prod.monomial, static_cast<std::int64_t>(ca) * cb % pres_.p() * prod.sign);
            }
        return out;
    }

    Element zero(Bidegree b) const { return Element(pres_.p(), b); }

private:
    const Presentation& pres_;
};

std::string label(int k, int i, int j = -1)
{
    std::string s = "rel" + std::to_string(k) + "[" + std::to_string(i);
    if (j >= 0)
        s += "," + std::to_string(j);
    return s + "]";
}

} // namespace

std::vector<Relation> omega_relations(const Presentation& omega)
{
    MonomialAlgebra alg(omega);
    const int p = static_cast<int>(omega.p());
    auto a = [&](int i) { return alg.gen("a" + std::to_string(i)); };
    // b_0 = u
    auto b = [&](int i) { return i == 0 ? alg.gen("u") : alg.gen("b" + std::to_string(i)); };
    const Element u = alg.gen("u");
    const Element mu2 = alg.gen("mu2");
    std::vector<Relation> rels;

    Element up1 = alg.gen("u", p - 1);
    rels.push_back({"rel1", up1, alg.zero(up1.bidegree())});
    const Element up2 = alg.gen("u", p - 2);
    for (int i = 0; i <= p - 2; ++i) {
        Element lhs = alg.mul(up2, a(i));
        rels.push_back({label(2, i), lhs, alg.zero(lhs.bidegree())});
    }
    for (int i = 1; i <= p - 1; ++i) {
        Element lhs = alg.mul(up2, b(i));
        rels.push_back({label(3, i), lhs, alg.zero(lhs.bidegree())});
    }
    for (int i = 1; i <= p - 1; ++i)
        for (int j = i; j <= p - 1; ++j)
            if (i + j <= p - 1)
                rels.push_back({label(4, i, j), alg.mul(b(i), b(j)), alg.mul(u, b(i + j))});
    for (int i = 0; i <= p - 1; ++i)
        for (int j = 1; j <= p - 1; ++j)
            if (i + j <= p - 1)
                rels.push_back({label(5, i, j), alg.mul(a(i), b(j)), alg.mul(u, a(i + j))});
    for (int i = 1; i <= p - 1; ++i)
        for (int j = i; j <= p - 1; ++j)
            if (i + j >= p)
                rels.push_back({label(6, i, j), alg.mul(b(i), b(j)), alg.mul(alg.mul(u, b(i + j - p)), mu2)});
    for (int i = 0; i <= p - 1; ++i)
        for (int j = 1; j <= p - 1; ++j)
            if (i + j >= p)
                rels.push_back({label(7, i, j), alg.mul(a(i), b(j)), alg.mul(alg.mul(u, a(i + j - p)), mu2)});
    // a_i a_i = 0 already holds for exterior generators
    for (int i = 0; i <= p - 1; ++i)
        for (int j = i + 1; j <= p - 1; ++j) {
            Element lhs = alg.mul(a(i), a(j));
            rels.push_back({label(8, i, j), lhs, alg.zero(lhs.bidegree())});
        }
    return rels;
}

std::map<std::string, Element> omega_lifts(const Presentation& e2, std::uint32_t p)
{
    MonomialAlgebra alg(e2);
    const int ip = static_cast<int>(p);
    std::map<std::string, Element> lifts{{"u", alg.gen("u")}, {"l1", alg.gen("l1")}, {"mu2", alg.gen("m1", ip)}};
    for (int i = 0; i < ip; ++i)
        lifts.emplace("a" + std::to_string(i), i == 0 ? alg.gen("su") : alg.mul(alg.gen("su"), alg.gen("m1", i)));
    for (int i = 1; i < ip; ++i)
        lifts.emplace("b" + std::to_string(i), alg.mul(alg.gen("u"), alg.gen("m1", i)));
    return lifts;
}

Step3Result step3_v1(std::uint32_t p, int n) { return step3_v1(step2_v0(p, n), n); }

Step3Result step3_v1(const Step2Result& step2, int n)
{
    const std::uint32_t p = step2.presentation.p();
    require_prime(p);
    const int ip = static_cast<int>(p);
    const int box = n + 2 * ip - 2;
    const Presentation e2 = brun_v1_e2(step2.presentation, p, box);

    StepReport report;
    report.name = "step3-v1";
    report.facts = {"ku-v1", "hfp-coefficients", "brun-e2", "weights", "must-die", "u-permanent"};
    report.certificates.push_back(
        certificate("step2-input", step2.report.passed(), step2.report.result, {"hfp-coefficients"}));

    specseq::Page page = specseq::init_page(e2, box);
    MonomialAlgebra alg(e2);
    const Element must_die = alg.mul(alg.gen("u", ip - 2), alg.gen("su"));
    const std::vector<Element> permanent{alg.gen("u")};
    auto forced = specseq::infer_forced_differentials(page, must_die, permanent);

    const bool unique = forced.size() == 1 && forced.front().sources.size() == 1;
    std::ostringstream fd;
    fd << forced.size() << " candidate(s) for killing " << e2.to_string(must_die) << ":";
    for (const auto& c : forced) {
        fd << " d_" << c.r << " from " << algebra::to_string(c.source) << " [";
        for (std::size_t k = 0; k < c.sources.size(); ++k)
            fd << (k ? ", " : "") << e2.to_string(c.sources[k]);
        fd << "]";
    }
    report.certificates.push_back(certificate("forced-differential", unique, fd.str(),
                                              {"must-die", "u-permanent", "weights", "enumeration"}));

    std::vector<specseq::Page> pages{page};
    std::vector<dga::Derivation> differentials;
    bool leibniz_ok = true;
    std::string leibniz_detail = "no differential applied";
    if (unique) {
        const auto& cand = forced.front();
        std::vector<specseq::DifferentialSpec> specs{{cand.r, cand.sources.front(), must_die, "forced"}};
        while (pages.back().r < cand.r) {
            differentials.push_back(dga::extend_derivation(pages.back().classes.presentation_ptr(), pages.back().r, {}));
            pages.push_back(specseq::turn_page(pages.back(), differentials.back()));
        }
        try {
            differentials.push_back(specseq::derivation_from_specs(pages.back(), specs));
            auto violations = specseq::leibniz_violations(pages.back(), differentials.back(), box);
            leibniz_ok = violations.empty();
            leibniz_detail = violations.empty()
                                 ? "d_" + std::to_string(cand.r) + " satisfies Leibniz on all class products"
                                 : "d(" + violations.front().x + " * " + violations.front().y +
                                       ") defect " + violations.front().defect;
            pages.push_back(specseq::turn_page(pages.back(), differentials.back()));
        } catch (const std::exception& e) {
            leibniz_ok = false;
            leibniz_detail = e.what();
        }
    }
    report.certificates.push_back(certificate("page-turn", unique && leibniz_ok, leibniz_detail, {"brun-e2"}));
    const specseq::Page& last = pages.back();

    auto collapse = specseq::certify_collapse(last, n);
    report.certificates.push_back(certificate(
        "collapse-at-E" + std::to_string(last.r), unique && collapse.collapsed && collapse.uncertified.empty(),
        std::to_string(collapse.classes.size()) + " classes certified through total degree " +
            std::to_string(collapse.certified_through) + ", " + std::to_string(collapse.refused.size()) +
            " refused, " + std::to_string(collapse.uncertified.size()) + " uncertified",
        {"brun-e2", "enumeration"}));

    Presentation omega = omega_infinity(p, n);
    auto relations = omega_relations(omega);
    auto lifts = omega_lifts(e2, p);
    auto iso = dga::verify_presentation_iso(last.classes, omega, lifts, relations, n);
    std::size_t checked = std::count_if(iso.relations.begin(), iso.relations.end(),
                                        [](const dga::RelationCheck& r) { return r.checked; });
    report.certificates.push_back(certificate(
        "presentation-iso", iso.ok,
        iso.ok ? "E-infinity = Omega-infinity (x) E(l1) through degree " + std::to_string(n) + "; " +
                     std::to_string(checked) + " of " + std::to_string(relations.size()) +
                     " relations in range, all hold"
               : iso.failures.front(),
        {"enumeration"}));

    auto abutment = specseq::assemble_abutment(last, omega, lifts, relations, n);
    std::map<specseq::RelationKind, int> kinds;
    for (const auto& r : abutment.relations)
        ++kinds[r.kind];
    std::ostringstream ad;
    for (const auto& [k, c] : kinds)
        ad << specseq::to_string(k) << ":" << c << " ";
    if (!abutment.ok())
        ad << "| " << abutment.unresolved.front();
    report.certificates.push_back(certificate("abutment", abutment.ok(), ad.str(), {"weights", "enumeration"}));

    auto einf = last.classes.dimensions_by_total_degree(n);
    auto dga_dims = intro_dga_dimensions(p, n);
    int diff = first_difference(einf, dga_dims);
    report.certificates.push_back(certificate(
        "dga-cross-check", diff < 0,
        diff < 0 ? "E-infinity and the homology of the DGA agree through degree " + std::to_string(n)
                 : "first mismatch in total degree " + std::to_string(diff),
        {"enumeration"}));
    auto omega_dims = omega_dga_dimensions(p, n);
    auto formula = basis_formula_counts(p, n);
    int fdiff = first_difference(omega_dims, formula);
    report.certificates.push_back(certificate(
        "basis-formula", fdiff < 0,
        fdiff < 0 ? "four-family basis count matches through degree " + std::to_string(n)
                  : "first mismatch in total degree " + std::to_string(fdiff) + " (" + join_dims(omega_dims) +
                        " vs " + join_dims(formula) + ")",
        {"enumeration"}));
    report.result = describe(omega);

    Step3Result out{std::move(omega),  std::move(relations), std::move(forced),       std::move(collapse),
                    std::move(iso),    std::move(abutment),  std::move(einf),         std::move(pages),
                    std::move(differentials), std::move(report)};
    return out;
}

namespace {

std::vector<std::size_t> dga_dimensions(std::uint32_t p, int n, bool with_l1)
{
    require_prime(p);
    const int ip = static_cast<int>(p);
    const int r = 2 * ip - 3;
    std::vector<GeneratorSpec> gens{GeneratorSpec::truncated("u", ip - 1, {0, 2}, 1),
                                    GeneratorSpec::exterior("su", {3, 0}, 1)};
    if (with_l1)
        gens.push_back(GeneratorSpec::exterior("l1", {2 * ip - 1, 0}));
    gens.push_back(GeneratorSpec::polynomial("m1", {2 * ip, 0}));
    auto pres = std::make_shared<const Presentation>(p, std::move(gens), n + r);
    MonomialAlgebra alg(*pres);
    auto d = dga::extend_derivation(pres, r, {{"m1", alg.mul(alg.gen("u", ip - 2), alg.gen("su"))}});
    auto h = dga::homology(pres, d, n + r);
    if (h.certified_degree() < n)
        throw InvalidArgument("DGA homology certified only through " + std::to_string(h.certified_degree()));
    return h.dimensions_by_total_degree(n);
}

} // namespace

std::vector<std::size_t> intro_dga_dimensions(std::uint32_t p, int n) { return dga_dimensions(p, n, true); }
std::vector<std::size_t> omega_dga_dimensions(std::uint32_t p, int n) { return dga_dimensions(p, n, false); }

std::vector<std::size_t> basis_formula_counts(std::uint32_t p, int n)
{
    require_prime(p);
    const int ip = static_cast<int>(p);
    std::vector<std::size_t> out(static_cast<std::size_t>(n) + 1, 0);
    auto bump = [&](long d) {
        if (d >= 0 && d <= n)
            ++out[static_cast<std::size_t>(d)];
    };
    for (long k = 0; 2L * ip * k <= n; ++k) {
        bump(2L * ip * ip * k);
        for (int i = 1; i <= ip - 2; ++i)
            bump(2L * i + 2L * ip * k);
        for (int i = 0; i <= ip - 3; ++i)
            bump(2L * i + 3 + 2L * ip * k);
        bump(2L * (ip - 2) + 3 + 2L * ip * (ip * k + ip - 1));
    }
    return out;
}

PipelineReport reproduce(std::uint32_t p, int n)
{
    require_prime(p);
    PipelineReport report;
    report.p = p;
    report.requested_degree = n;
    auto step1 = step1_tor(p);
    auto step2 = step2_v0(p, n);
    auto step3 = step3_v1(step2, n);
    report.steps = {step1.report, step2.report, step3.report};
    report.certified_degree = std::min({n, step2.collapse.certified_through, step3.collapse.certified_through,
                                        step3.iso.verified_through});
    return report;
}

} // namespace gradss::thhku
