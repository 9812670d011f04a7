#include <gtest/gtest.h>

#include "filtered_ss.hpp"
#include "gradss/specseq.hpp"
#include "random_dga.hpp"

using namespace gradss;
using namespace gradss::specseq;
using gradss::algebra::GeneratorSpec;

namespace {

Presentation bott_e2(std::uint32_t p, int n)
{
    const int ip = static_cast<int>(p);
    return Presentation(p,
                        {GeneratorSpec::truncated("u", ip - 1, {0, 2}, 1), GeneratorSpec::exterior("su", {3, 0}, 1),
                         GeneratorSpec::exterior("l1", {2 * ip - 1, 0}), GeneratorSpec::polynomial("m1", {2 * ip, 0})},
                        n);
}

Element u_power_su(const Presentation& e2, int k)
{
    return e2.multiply(e2.power(e2.generator_element("u"), k), e2.generator_element("su"));
}

/// Pages E^2 .. E^{r+1} of a DGA whose only differential is d_r.
std::vector<Page> engine_pages(const oracle::RandomDga& dga)
{
    std::vector<Page> pages{init_page(*dga.presentation, dga.n)};
    while (pages.back().r < dga.r)
        pages.push_back(turn_page(pages.back(), std::span<const DifferentialSpec>{}));
    pages.push_back(turn_page(pages.back(), dga.d));
    return pages;
}

} // namespace

TEST(ExactCouple, MatchesTheZbFormulaOnRandomComplexes)
{
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        auto fc = random_filtered_complex(seed);
        auto run = exact_couple_run(fc);
        EXPECT_TRUE(run.consistency_failures.empty()) << "seed " << seed;
        auto expected = oracle::zb_pages(fc, static_cast<int>(run.pages.size()));
        ASSERT_EQ(run.pages.size(), expected.size());
        for (std::size_t k = 0; k < run.pages.size(); ++k)
            EXPECT_EQ(run.pages[k], expected[k]) << "seed " << seed << " page E^" << k + 1;
    }
}

TEST(ExactCouple, EInfinityConvergesToTotalHomology)
{
    for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
        auto fc = random_filtered_complex(seed, seed % 2 == 0 ? 5 : 7);
        auto run = exact_couple_run(fc);
        EXPECT_TRUE(compare_with_total_homology(fc, run).ok()) << "seed " << seed;
        EXPECT_EQ(total_homology(fc), oracle::homology_dims(fc)) << "seed " << seed;
    }
}

TEST(RandomFilteredComplex, RespectsBoundsAndIsReproducible)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto fc = random_filtered_complex(seed, 5, 5, 40);
        EXPECT_NO_THROW(fc.validate());
        EXPECT_LE(fc.max_level(), 4);
        std::size_t dim = 0;
        for (int t = 0; t <= fc.top_degree(); ++t)
            dim += fc.dim(t);
        EXPECT_LE(dim, 40u);
        auto again = random_filtered_complex(seed, 5, 5, 40);
        EXPECT_EQ(again.levels, fc.levels);
        ASSERT_EQ(again.boundary.size(), fc.boundary.size());
        for (std::size_t t = 0; t < fc.boundary.size(); ++t)
            EXPECT_EQ(again.boundary[t], fc.boundary[t]);
    }
}

TEST(FilteredComplex, ValidateRejectsBrokenData)
{
    FilteredComplex fc;
    fc.p = 5;
    fc.levels = {{0}, {0}};
    fc.boundary = {linfp::FpMatrix(5, 0, 1), linfp::FpMatrix(5, 1, 1)};
    EXPECT_NO_THROW(fc.validate());
    fc.levels = {{1}, {0}};
    fc.boundary[1].set(0, 0, 1);
    EXPECT_THROW(fc.validate(), InvalidArgument); // raises filtration
}

TEST(PageTurn, AgreesWithTheExactCoupleOnRandomDgas)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto dga = oracle::random_dga(seed);
        auto pages = engine_pages(dga);
        auto fc = filtered_complex_from(dga.d, dga.n);
        auto expected = oracle::zb_pages(fc, dga.r + 1);
        for (const auto& page : pages) {
            const auto& want = expected[static_cast<std::size_t>(page.r - 1)];
            for (const auto& [b, dim] : want)
                if (b.total() <= page.certified_degree())
                    EXPECT_EQ(page.classes.dimension(b), dim)
                        << dga.description << " E^" << page.r << " at " << algebra::to_string(b);
            for (const auto& [b, dim] : page.classes.dimension_table())
                if (b.total() <= page.certified_degree())
                    EXPECT_TRUE(want.contains(b)) << dga.description << " E^" << page.r;
        }
    }
}

TEST(PageTurn, LeibnizHoldsOnEveryPageOfRandomDgas)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto dga = oracle::random_dga(seed);
        auto pages = engine_pages(dga);
        const Page& source = pages[pages.size() - 2];
        EXPECT_TRUE(leibniz_violations(source, dga.d, dga.n).empty()) << dga.description;
        for (std::size_t k = 0; k + 2 < pages.size(); ++k) {
            Derivation zero(dga.presentation, pages[k].r,
                            std::vector<Element>(dga.presentation->size(), dga.presentation->zero({0, 0})));
            EXPECT_TRUE(leibniz_violations(pages[k], zero, dga.n).empty());
        }
    }
}

TEST(PageTurn, ProductsOfClassesStayCycles)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto dga = oracle::random_dga(seed);
        const Page last = engine_pages(dga).back();
        const auto& pres = last.e2();
        const int cert = last.certified_degree();
        for (const auto& [bx, dx] : last.classes.dimension_table())
            for (const auto& [by, dy] : last.classes.dimension_table()) {
                if (bx.total() + by.total() > cert)
                    continue;
                for (const auto& x : last.classes.representatives(bx))
                    for (const auto& y : last.classes.representatives(by))
                        EXPECT_TRUE(last.classes.is_cycle(pres.multiply(x, y))) << dga.description;
            }
    }
}

TEST(PageTurn, ShiftIsMinusRRMinusOne)
{
    auto e2 = bott_e2(5, 40);
    Page page = init_page(e2, 40);
    while (page.r < 7)
        page = turn_page(page, std::span<const DifferentialSpec>{});
    DifferentialSpec spec{7, e2.generator_element("m1"), u_power_su(e2, 3), "test"};
    auto d = derivation_from_specs(page, std::span(&spec, 1));
    EXPECT_EQ(d.shift(), (Bidegree{-7, 6}));
    EXPECT_EQ(d.apply(e2.generator_element("m1")).bidegree(), (Bidegree{3, 6}));
    // out of the quadrant: nothing to hit from su
    EXPECT_TRUE(d.apply(e2.generator_element("su")).is_zero());
}

TEST(PageTurn, RejectsClassLevelAndMismatchedSpecs)
{
    auto e2 = bott_e2(5, 40);
    Page page = init_page(e2, 40);
    DifferentialSpec wrong_page{3, e2.generator_element("m1"), e2.zero({7, 2}), "test"};
    EXPECT_THROW(derivation_from_specs(page, std::span(&wrong_page, 1)), InvalidArgument);
    Element product = e2.multiply(e2.generator_element("su"), e2.generator_element("m1"));
    DifferentialSpec not_generator{2, product, e2.zero(product.bidegree() + Bidegree{-2, 1}), "test"};
    EXPECT_THROW(derivation_from_specs(page, std::span(&not_generator, 1)), InvalidArgument);
    Derivation d7(std::make_shared<const Presentation>(e2), 7, std::vector<Element>(4, e2.zero({0, 0})));
    EXPECT_THROW(turn_page(page, d7), InvalidArgument);
}

TEST(PageTurn, BottDifferentialLeavesRowsZeroToTwoPMinusFour)
{
    for (std::uint32_t p : {5u, 7u}) {
        const int ip = static_cast<int>(p);
        const int r = 2 * ip - 3;
        auto e2 = bott_e2(p, 60);
        Page page = init_page(e2, 60);
        while (page.r < r)
            page = turn_page(page, std::span<const DifferentialSpec>{});
        DifferentialSpec spec{r, e2.generator_element("m1"), u_power_su(e2, ip - 2), "test"};
        Derivation d = derivation_from_specs(page, std::span(&spec, 1));
        EXPECT_TRUE(leibniz_violations(page, d, 60).empty());
        Page next = turn_page(page, d);
        for (const auto& [b, dim] : next.classes.dimension_table())
            EXPECT_LE(b.m, 2 * ip - 4) << algebra::to_string(b);
        EXPECT_TRUE(next.classes.is_boundary(u_power_su(e2, ip - 2)));
        auto cert = certify_collapse(next, next.certified_degree());
        EXPECT_TRUE(cert.refused.empty());
        EXPECT_EQ(cert.r0, r + 1);
    }
}

TEST(Collapse, RefusedWhenADifferentialIsPossible)
{
    auto e2 = bott_e2(5, 40);
    auto cert = certify_collapse(init_page(e2, 40), 30);
    EXPECT_FALSE(cert.collapsed);
    ASSERT_FALSE(cert.refused.empty());
    bool m1_refused = false;
    for (const auto& c : cert.refused)
        if (c.representative == "m1") {
            m1_refused = true;
            EXPECT_EQ(c.outgoing, Justification::Refused);
        }
    EXPECT_TRUE(m1_refused);
}

TEST(Collapse, ConcentratedInOneRowCollapses)
{
    Presentation e2(5, {GeneratorSpec::exterior("l1", {9, 0}), GeneratorSpec::polynomial("m1", {10, 0})}, 50);
    auto cert = certify_collapse(init_page(e2, 50), 50);
    EXPECT_TRUE(cert.collapsed);
    EXPECT_TRUE(cert.refused.empty());
    for (const auto& c : cert.classes)
        EXPECT_TRUE(c.certified() || c.incoming == Justification::BeyondTruncation);
}

TEST(ForcedDifferential, UniqueCandidateForTheBottRelation)
{
    for (std::uint32_t p : {5u, 7u}) {
        const int ip = static_cast<int>(p);
        auto e2 = bott_e2(p, 60);
        Page page = init_page(e2, 60);
        const Element u = e2.generator_element("u");
        auto cands = infer_forced_differentials(page, u_power_su(e2, ip - 2), std::span(&u, 1));
        ASSERT_EQ(cands.size(), 1u);
        EXPECT_EQ(cands[0].r, 2 * ip - 3);
        EXPECT_EQ(cands[0].source, (Bidegree{2 * ip, 0}));
        ASSERT_EQ(cands[0].sources.size(), 1u);
        EXPECT_EQ(e2.to_string(cands[0].sources[0]), "m1");
    }
}

TEST(ForcedDifferential, PermanentClassesHaveNoCandidates)
{
    auto e2 = bott_e2(5, 40);
    Page page = init_page(e2, 40);
    const Element u = e2.generator_element("u");
    Element u2 = e2.power(u, 2);
    EXPECT_TRUE(infer_forced_differentials(page, u2, std::span(&u2, 1)).empty());
    EXPECT_THROW(infer_forced_differentials(page, e2.zero({0, 2}), std::span(&u, 1)), InvalidArgument);
}

TEST(InitPage, SplitsByWeight)
{
    auto e2 = bott_e2(5, 30);
    Page page = init_page(e2, 30);
    EXPECT_TRUE(page.classes.weight_split());
    EXPECT_EQ(page.r, 2);
    EXPECT_EQ(page.classes.dimension({3, 6}), 1u);
    const auto* cell = page.classes.find({{3, 6}, 0});
    ASSERT_NE(cell, nullptr);
    EXPECT_EQ(cell->representatives.size(), 1u);
}
