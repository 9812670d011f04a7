#include <random>

#include <gtest/gtest.h>

#include "filtered_ss.hpp"
#include "gradss/dga.hpp"
#include "gradss/specseq.hpp"
#include "random_dga.hpp"

using namespace gradss;
using namespace gradss::algebra;
using namespace gradss::dga;

namespace {

PresentationPtr make(std::uint32_t p, std::vector<GeneratorSpec> gens, int n)
{
    return std::make_shared<const Presentation>(p, std::move(gens), n);
}

/// P(a) (x) E(e), |a| = 2, |e| = 5, d(e) = a^2, everything in row 0.
struct Truncating {
    PresentationPtr pres = make(5, {GeneratorSpec::polynomial("a", {2, 0}), GeneratorSpec::exterior("e", {5, 0})}, 30);
    Derivation d = extend_derivation(pres, 1, {{"e", pres->power(pres->generator_element("a"), 2)}});
};

} // namespace

TEST(Derivation, LeibnizOnRandomDgas)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto dga = oracle::random_dga(seed);
        const auto& pres = *dga.presentation;
        std::mt19937_64 rng(seed);
        const auto bidegrees = pres.occupied_bidegrees();
        for (int k = 0; k < 30; ++k) {
            const auto& bx = bidegrees[rng() % bidegrees.size()];
            const auto& by = bidegrees[rng() % bidegrees.size()];
            if (bx.total() + by.total() > dga.n)
                continue;
            const auto& xs = pres.basis_in_bidegree(bx);
            const auto& ys = pres.basis_in_bidegree(by);
            Element x = pres.monomial_element(xs[rng() % xs.size()]);
            Element y = pres.monomial_element(ys[rng() % ys.size()]);
            Element lhs = dga.d.apply(pres.multiply(x, y));
            Element rhs = pres.multiply(dga.d.apply(x), y);
            rhs += pres.multiply(x, dga.d.apply(y)).scaled(bx.total() % 2 == 0 ? 1 : -1);
            EXPECT_EQ(lhs, rhs) << dga.description;
        }
    }
}

TEST(Derivation, SquareZeroOnRandomDgas)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto dga = oracle::random_dga(seed);
        EXPECT_TRUE(check_d_squared(dga.d, dga.n).empty()) << dga.description;
    }
}

TEST(Derivation, RejectsImagesOfTheWrongBidegree)
{
    auto pres = make(5, {GeneratorSpec::polynomial("x", {4, 0}), GeneratorSpec::exterior("y", {3, 0})}, 20);
    EXPECT_THROW(extend_derivation(pres, 2, {{"x", pres->generator_element("y")}}), InvalidArgument);
    EXPECT_NO_THROW(extend_derivation(pres, 1, {{"x", pres->generator_element("y")}}));
    EXPECT_THROW(extend_derivation(pres, 1, {{"z", pres->generator_element("y")}}), InvalidArgument);
    EXPECT_THROW(extend_derivation(pres, 0, {}), InvalidArgument);
}

TEST(Derivation, TruncationMustBeRespected)
{
    // d(u^4) = 4 u^3 e is not zero, d(u^5) = 5 u^4 e is
    auto bad = make(5, {GeneratorSpec::truncated("u", 4, {2, 0}), GeneratorSpec::exterior("e", {1, 0})}, 20);
    EXPECT_THROW(extend_derivation(bad, 1, {{"u", bad->generator_element("e")}}), InvalidArgument);
    auto good = make(5, {GeneratorSpec::truncated("u", 5, {2, 0}), GeneratorSpec::exterior("e", {1, 0})}, 20);
    EXPECT_NO_THROW(extend_derivation(good, 1, {{"u", good->generator_element("e")}}));
}

TEST(Homology, RefusesWhenDSquaredIsNonzero)
{
    auto pres = make(5,
                     {GeneratorSpec::polynomial("x", {4, 0}), GeneratorSpec::exterior("y", {3, 0}),
                      GeneratorSpec::polynomial("z", {2, 0})},
                     12);
    auto d = extend_derivation(pres, 1, {{"x", pres->generator_element("y")}, {"y", pres->generator_element("z")}});
    EXPECT_FALSE(check_d_squared(d, 12).empty());
    EXPECT_THROW(homology(pres, d, 12), DSquaredError);
}

TEST(Homology, MatchesIndependentRanksOnRandomDgas)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto dga = oracle::random_dga(seed);
        auto h = homology(dga.presentation, dga.d, dga.n);
        auto fc = specseq::filtered_complex_from(dga.d, dga.n);
        auto expected = oracle::homology_dims(fc);
        auto got = h.dimensions_by_total_degree(h.certified_degree());
        for (int t = 0; t <= h.certified_degree(); ++t)
            EXPECT_EQ(got[static_cast<std::size_t>(t)], expected[static_cast<std::size_t>(t)])
                << dga.description << " degree " << t;
    }
}

TEST(Homology, TruncatedPolynomialExample)
{
    Truncating t;
    auto h = homology(t.pres, t.d, 30);
    // H = P(a)/(a^2): classes 1 and a, plus a e ... d(a e) = a^3 != 0, so only 1, a survive
    auto dims = h.dimensions_by_total_degree(h.certified_degree());
    std::vector<std::size_t> expected(dims.size(), 0);
    expected[0] = 1;
    expected[2] = 1;
    EXPECT_EQ(dims, expected);
    EXPECT_TRUE(h.is_boundary(t.pres->power(t.pres->generator_element("a"), 2)));
    EXPECT_FALSE(h.is_cycle(t.pres->generator_element("e")));
}

TEST(Iso, AcceptsTheRightPresentationOnly)
{
    Truncating t;
    auto h = homology(t.pres, t.d, 30);
    Presentation cand(5, {GeneratorSpec::polynomial("a", {2, 0})}, 30);
    const std::map<std::string, Element> reps{{"a", t.pres->generator_element("a")}};
    Element a2(5, {4, 0});
    a2.add_term(Monomial({2}), 1);
    std::vector<Relation> rels{{"square", a2, Element(5, {4, 0})}};

    auto ok = verify_presentation_iso(h, cand, reps, rels, h.certified_degree());
    EXPECT_TRUE(ok.ok) << (ok.failures.empty() ? "" : ok.failures.front());
    ASSERT_EQ(ok.relations.size(), 1u);
    EXPECT_TRUE(ok.relations[0].holds);

    auto missing = verify_presentation_iso(h, cand, reps, {}, h.certified_degree());
    EXPECT_FALSE(missing.ok);

    const std::map<std::string, Element> wrong{{"a", t.pres->generator_element("e")}};
    EXPECT_FALSE(verify_presentation_iso(h, cand, wrong, rels, h.certified_degree()).ok);
}

TEST(ClassTable, ReduceGivesCoordinatesOfCycles)
{
    Truncating t;
    auto h = homology(t.pres, t.d, 30);
    Element a = t.pres->generator_element("a");
    auto v = h.reduce(a.scaled(3));
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(*v, (linfp::Vec{3}));
}
