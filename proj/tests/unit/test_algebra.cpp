#include <random>

#include <gtest/gtest.h>

#include "gradss/algebra.hpp"

using namespace gradss;
using namespace gradss::algebra;

namespace {

/// Coefficients of prod over generators of (1 + t^d), 1/(1 - t^d) or (1 - t^{dh})/(1 - t^d).
std::vector<std::size_t> poincare_series(const std::vector<GeneratorSpec>& gens, int n)
{
    std::vector<std::size_t> series(static_cast<std::size_t>(n) + 1, 0);
    series[0] = 1;
    for (const auto& g : gens) {
        const int d = g.total_degree();
        const int top = g.kind == Kind::Exterior ? 1 : g.kind == Kind::Truncated ? g.height - 1 : n;
        std::vector<std::size_t> next(series.size(), 0);
        for (int t = 0; t <= n; ++t)
            for (int k = 0; k <= top && t + k * d <= n; ++k)
                next[static_cast<std::size_t>(t + k * d)] += series[static_cast<std::size_t>(t)];
        series = next;
    }
    return series;
}

std::vector<GeneratorSpec> random_generators(std::mt19937_64& rng)
{
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::vector<GeneratorSpec> gens;
    const int count = pick(1, 4);
    for (int i = 0; i < count; ++i) {
        Bidegree b{pick(0, 5), pick(0, 5)};
        if (b.total() == 0)
            b.n = 2;
        const std::string name = "g" + std::to_string(i);
        if (b.total() % 2 != 0)
            gens.push_back(GeneratorSpec::exterior(name, b, pick(0, 3)));
        else if (pick(0, 1) == 0)
            gens.push_back(GeneratorSpec::polynomial(name, b, pick(0, 3)));
        else
            gens.push_back(GeneratorSpec::truncated(name, pick(2, 5), b, pick(0, 3)));
    }
    return gens;
}

Monomial random_monomial(const Presentation& pres, std::mt19937_64& rng, int budget)
{
    std::vector<int> exps(pres.size(), 0);
    for (std::size_t i = 0; i < pres.size(); ++i) {
        const auto& g = pres.generator(i);
        int top = g.kind == Kind::Exterior ? 1 : g.kind == Kind::Truncated ? g.height - 1 : 3;
        exps[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(top + 1));
        while (exps[i] > 0 && exps[i] * g.total_degree() > budget)
            --exps[i];
    }
    return Monomial(exps);
}

Presentation bott_e2()
{
    return Presentation(5,
                        {GeneratorSpec::truncated("u", 4, {0, 2}, 1), GeneratorSpec::exterior("su", {3, 0}, 1),
                         GeneratorSpec::exterior("l1", {9, 0}), GeneratorSpec::polynomial("m1", {10, 0})},
                        40);
}

} // namespace

TEST(Presentation, DimensionSeriesMatchesPoincareSeries)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        auto gens = random_generators(rng);
        Presentation pres(7, gens, 24);
        EXPECT_EQ(pres.dimension_series(24), poincare_series(gens, 24)) << "trial " << trial;
        // the per-bidegree enumeration adds up to the same series
        std::vector<std::size_t> from_basis(25, 0);
        for (const auto& b : pres.occupied_bidegrees())
            from_basis[static_cast<std::size_t>(b.total())] += pres.basis_in_bidegree(b).size();
        EXPECT_EQ(from_basis, poincare_series(gens, 24)) << "trial " << trial;
    }
}

TEST(Presentation, DimensionSeriesIgnoresTheBox)
{
    auto pres = bott_e2();
    EXPECT_EQ(pres.dimension_series(80), poincare_series(pres.generators(), 80));
}

TEST(Product, GradedCommutativeAndAssociative)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        Presentation pres(5, random_generators(rng), 30);
        for (int k = 0; k < 20; ++k) {
            Monomial a = random_monomial(pres, rng, 8);
            Monomial b = random_monomial(pres, rng, 8);
            Monomial c = random_monomial(pres, rng, 8);
            auto ab = pres.multiply(a, b);
            auto ba = pres.multiply(b, a);
            ASSERT_EQ(ab.sign == 0, ba.sign == 0);
            if (ab.sign != 0) {
                EXPECT_EQ(ab.monomial, ba.monomial);
                const bool odd = pres.total_degree(a) % 2 != 0 && pres.total_degree(b) % 2 != 0;
                EXPECT_EQ(ab.sign, odd ? pres.field().neg(ba.sign) : ba.sign);
            }
            Element ea = pres.monomial_element(a);
            Element eb = pres.monomial_element(b);
            Element ec = pres.monomial_element(c);
            EXPECT_EQ(pres.multiply(pres.multiply(ea, eb), ec), pres.multiply(ea, pres.multiply(eb, ec)));
        }
    }
}

TEST(Product, ExteriorSquaresAndTruncationVanish)
{
    auto pres = bott_e2();
    Element su = pres.generator_element("su");
    EXPECT_TRUE(pres.multiply(su, su).is_zero());
    Element u = pres.generator_element("u");
    EXPECT_FALSE(pres.power(u, 3).is_zero());
    EXPECT_TRUE(pres.power(u, 4).is_zero());
    // su l1 = - l1 su
    Element l1 = pres.generator_element("l1");
    Element a = pres.multiply(su, l1);
    Element b = pres.multiply(l1, su);
    b += a;
    EXPECT_TRUE(b.is_zero());
}

TEST(Product, BeyondTheBoxIsZeroAndFlagged)
{
    auto pres = bott_e2();
    Element m1 = pres.generator_element("m1");
    Element m4 = pres.power(m1, 4);
    EXPECT_FALSE(m4.is_zero());
    Element m5 = pres.multiply(m4, m1);
    EXPECT_TRUE(m5.is_zero());
    EXPECT_TRUE(m5.beyond_truncation());
    EXPECT_THROW(pres.basis_in_bidegree({50, 0}), InvalidArgument);
}

TEST(Presentation, RejectsBadGenerators)
{
    EXPECT_THROW(Presentation(5, {GeneratorSpec::exterior("x", {2, 0})}, 10), InvalidArgument);
    EXPECT_THROW(Presentation(5, {GeneratorSpec::polynomial("x", {3, 0})}, 10), InvalidArgument);
    EXPECT_THROW(Presentation(5, {GeneratorSpec::polynomial("x", {0, 0})}, 10), InvalidArgument);
    EXPECT_THROW(Presentation(5, {GeneratorSpec::polynomial("x", {2, 0}), GeneratorSpec::polynomial("x", {4, 0})}, 10),
                 InvalidArgument);
    EXPECT_THROW(Presentation(4, {GeneratorSpec::polynomial("x", {2, 0})}, 10), InvalidArgument);
    EXPECT_THROW(Presentation(3, {GeneratorSpec::polynomial("x", {2, 0})}, 10), InvalidArgument);
}

TEST(Presentation, WeightsAreResiduesModPMinusOne)
{
    auto pres = bott_e2();
    Monomial m({3, 1, 1, 2});
    EXPECT_EQ(pres.weight_of(m), 0); // 3 + 1 = 4 = 0 mod 4
    EXPECT_EQ(pres.weight_of(Monomial({2, 1, 0, 0})), 3);
    EXPECT_EQ(pres.weight_of(Monomial::unit(4)), 0);
    Presentation wrapped(5, {GeneratorSpec::polynomial("x", {2, 0}, 6)}, 4);
    EXPECT_EQ(wrapped.generator(0).weight, 2);
}

TEST(Presentation, BasisOrderAndPrinting)
{
    auto pres = bott_e2();
    const auto& basis = pres.basis_in_bidegree({3, 6});
    ASSERT_EQ(basis.size(), 1u);
    EXPECT_EQ(pres.to_string(basis[0]), "u^3 su");
    EXPECT_EQ(pres.basis_index(basis[0]), 0u);
    Element e = pres.monomial_element(basis[0], -1);
    EXPECT_EQ(pres.to_string(e), "-u^3 su");
    EXPECT_EQ(pres.to_string(pres.unit()), "1");
}

TEST(Presentation, TensorConcatenatesGenerators)
{
    Presentation a(5, {GeneratorSpec::polynomial("x", {2, 0})}, 12);
    Presentation b(5, {GeneratorSpec::exterior("y", {0, 3})}, 12);
    auto t = Presentation::tensor(a, b);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t.generator(1).name, "y");
    EXPECT_EQ(t.dimension_series(7), (std::vector<std::size_t>{1, 0, 1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(t.with_max_degree(20).max_degree(), 20);
}
