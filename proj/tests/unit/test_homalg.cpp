#include <gtest/gtest.h>

#include "dense_hochschild.hpp"
#include "gradss/homalg.hpp"

using namespace gradss;
using namespace gradss::homalg;
using gradss::algebra::Bidegree;
using gradss::algebra::GeneratorSpec;
using gradss::algebra::Kind;
using gradss::algebra::Presentation;

namespace {

std::map<Bidegree, std::size_t> table(std::initializer_list<std::pair<const Bidegree, std::size_t>> entries)
{
    return std::map<Bidegree, std::size_t>(entries);
}

} // namespace

TEST(Tor, FpOverZpPolyAgainstZp)
{
    for (std::uint32_t p : {5u, 7u}) {
        auto t = koszul_tor(BaseRing::zp_poly(p), CyclicModule::fp(), CyclicModule::zp(), 40);
        EXPECT_EQ(t.nonzero(), table({{{0, 0}, 1}, {{1, 2}, 1}}));
        EXPECT_EQ(t.max_internal_degree, 40);
    }
}

TEST(Tor, FpOverZpPolyAgainstFpNeedsTheKoszulClassOfP)
{
    auto t = koszul_tor(BaseRing::zp_poly(5), CyclicModule::fp(), CyclicModule::fp(), 10);
    EXPECT_EQ(t.nonzero(), table({{{0, 0}, 1}, {{1, 0}, 1}, {{1, 2}, 1}, {{2, 2}, 1}}));
}

TEST(Tor, FpOverZpPolyAgainstFpPoly)
{
    auto t = koszul_tor(BaseRing::zp_poly(5), CyclicModule::fp(), CyclicModule::fpu(), 10);
    EXPECT_EQ(t.nonzero(), table({{{0, 0}, 1}, {{1, 0}, 1}}));
}

TEST(Tor, FpOverFpPoly)
{
    auto t = koszul_tor(BaseRing::fp_poly(5), CyclicModule::fp(), CyclicModule::fp(), 20);
    EXPECT_EQ(t.nonzero(), table({{{0, 0}, 1}, {{1, 2}, 1}}));
    auto free = koszul_tor(BaseRing::fp_poly(5), CyclicModule::fp(), CyclicModule::fpu(), 20);
    EXPECT_EQ(free.nonzero(), table({{{0, 0}, 1}}));
}

TEST(Tor, TruncatedBaseIsPeriodic)
{
    // Tor^{F_p[u]/u^h}_{2k}(F_p, F_p) sits in internal degree 2hk, Tor_{2k+1} in 2hk + 2
    const int h = 4;
    auto t = koszul_tor(BaseRing::fp_truncated(5, h), CyclicModule::fp(), CyclicModule::fp(), 30);
    std::map<Bidegree, std::size_t> expected;
    for (int k = 0; 2 * h * k <= 30; ++k) {
        expected[{2 * k, 2 * h * k}] = 1;
        if (2 * h * k + 2 <= 30)
            expected[{2 * k + 1, 2 * h * k + 2}] = 1;
    }
    EXPECT_EQ(t.nonzero(), expected);
}

TEST(Tor, RejectsLeftModulesNotKilledByP)
{
    EXPECT_THROW(koszul_tor(BaseRing::zp_poly(5), CyclicModule::zp(), CyclicModule::zp(), 10), NotPTorsion);
    EXPECT_THROW(koszul_tor(BaseRing::fp_poly(5), CyclicModule::fp(), CyclicModule::zp(), 10), InvalidArgument);
    EXPECT_THROW(koszul_tor(BaseRing::zp_poly(6), CyclicModule::fp(), CyclicModule::zp(), 10), InvalidArgument);
}

TEST(Recognition, TorOfTheBottClassIsExteriorOnOneClass)
{
    auto t = koszul_tor(BaseRing::zp_poly(5), CyclicModule::fp(), CyclicModule::zp(), 40);
    auto rec = recognize_free_presentation(5, t);
    ASSERT_TRUE(rec.presentation.has_value()) << rec.reason;
    ASSERT_EQ(rec.presentation->size(), 1u);
    const auto& g = rec.presentation->generator(0);
    EXPECT_EQ(g.kind, Kind::Exterior);
    EXPECT_EQ(g.total_degree(), 3);
    EXPECT_TRUE(rec.unique);
}

TEST(Recognition, RejectsTruncatedTables)
{
    // P(x)/(x^2) with |x| = 2 looks free in degree 2 but not in degree 4
    auto rec = recognize_free_presentation(5, table({{{0, 0}, 1}, {{2, 0}, 1}}), 10);
    EXPECT_FALSE(rec.presentation.has_value());
}

TEST(Recognition, FreeButNotForced)
{
    auto rec = recognize_free_presentation(5, table({{{0, 0}, 1}, {{2, 0}, 1}, {{4, 0}, 1}, {{6, 0}, 1}}), 6);
    ASSERT_TRUE(rec.presentation.has_value());
    EXPECT_EQ(rec.presentation->generator(0).kind, Kind::Polynomial);
    EXPECT_FALSE(rec.unique);
}

TEST(Hochschild, TruncatedPolynomialMatchesDenseBarComplex)
{
    Presentation a(5, {GeneratorSpec::truncated("u", 4, {0, 2})}, 12);
    auto hh = hochschild_homology(a, 2, 12);
    EXPECT_EQ(hh.dims, oracle::dense_hochschild(5, 4, 2, 2, 12));
}

TEST(Hochschild, HeightDivisibleByP)
{
    // u^5 = 0 over F_5: the height is zero in the field, which changes the ranks
    Presentation a(5, {GeneratorSpec::truncated("u", 5, {2, 0})}, 14);
    auto hh = hochschild_homology(a, 3, 14);
    EXPECT_EQ(hh.dims, oracle::dense_hochschild(5, 5, 2, 3, 14));
}

TEST(Hochschild, PolynomialRingHasHkrShape)
{
    Presentation a(7, {GeneratorSpec::polynomial("x", {4, 0})}, 16);
    auto hh = hochschild_homology(a, 2, 16);
    EXPECT_EQ(hh.dims, oracle::dense_hochschild(7, 0, 4, 2, 16));
    // HH_0 = P(x), HH_1 = P(x) dx, nothing above
    EXPECT_EQ(hh.at(0, 8), 1u);
    EXPECT_EQ(hh.at(1, 4), 1u);
    EXPECT_EQ(hh.at(2, 8), 0u);
}

TEST(Hochschild, ExteriorAlgebraIsDividedPowerLike)
{
    // HH(E(y)) = E(y) (x) Gamma(sigma y): one class in each (s, 3s) and (s, 3s + 3)
    Presentation a(5, {GeneratorSpec::exterior("y", {3, 0})}, 15);
    auto hh = hochschild_homology(a, 3, 15);
    for (int s = 0; s <= 3; ++s) {
        EXPECT_EQ(hh.at(s, 3 * s), 1u) << s;
        EXPECT_EQ(hh.at(s, 3 * s + 3), 1u) << s;
    }
}

TEST(Hochschild, RefusesAboveTheSizeCap)
{
    Presentation a(5, {GeneratorSpec::polynomial("x", {2, 0}), GeneratorSpec::polynomial("y", {2, 0})}, 20);
    EXPECT_THROW(hochschild_homology(a, 4, 20, 50), ResourceLimit);
}
