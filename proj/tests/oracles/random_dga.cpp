#include "random_dga.hpp"

#include <random>
#include <sstream>

namespace oracle {

using gradss::algebra::Bidegree;
using gradss::algebra::Element;
using gradss::algebra::GeneratorSpec;
using gradss::algebra::Monomial;
using gradss::algebra::Presentation;

RandomDga random_dga(std::uint64_t seed)
{
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    const std::uint32_t p = seed % 2 == 0 ? 5 : 7;
    const int r = pick(2, 3);
    const int n = pick(14, 20);

    std::vector<GeneratorSpec> cycles;
    const int n_cycles = pick(2, 3);
    for (int i = 0; i < n_cycles; ++i) {
        Bidegree b{pick(0, 4), pick(0, 4)};
        if (b.total() == 0)
            b.m = 1;
        const std::string name = "c" + std::to_string(i);
        if (b.total() % 2 != 0)
            cycles.push_back(GeneratorSpec::exterior(name, b));
        else if (pick(0, 1) == 0)
            cycles.push_back(GeneratorSpec::polynomial(name, b));
        else
            cycles.push_back(GeneratorSpec::truncated(name, pick(2, 4), b));
    }
    const Presentation cycle_alg(p, cycles, n);

    // targets: occupied bidegrees of the cycle subalgebra with room for a source
    std::vector<Bidegree> targets;
    for (const auto& b : cycle_alg.occupied_bidegrees())
        if (b.total() > 0 && b.m >= r - 1 && b.total() + 1 <= n)
            targets.push_back(b);

    std::vector<GeneratorSpec> gens = cycles;
    std::vector<Bidegree> chosen;
    const int n_sources = targets.empty() ? 0 : pick(1, 2);
    for (int i = 0; i < n_sources; ++i) {
        const Bidegree t = targets[static_cast<std::size_t>(pick(0, static_cast<int>(targets.size()) - 1))];
        const Bidegree s = t + Bidegree{r, 1 - r};
        const std::string name = "x" + std::to_string(i);
        gens.push_back(s.total() % 2 != 0 ? GeneratorSpec::exterior(name, s) : GeneratorSpec::polynomial(name, s));
        chosen.push_back(t);
    }
    auto pres = std::make_shared<const Presentation>(p, gens, n);

    std::map<std::string, Element> images;
    std::ostringstream desc;
    desc << "seed " << seed << " p=" << p << " r=" << r << " box=" << n << ":";
    for (const auto& g : gens)
        desc << ' ' << g.name << ':' << gradss::algebra::to_string(g.kind) << gradss::algebra::to_string(g.bidegree);
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        Element image = pres->zero(chosen[i]);
        const auto& basis = cycle_alg.basis_in_bidegree(chosen[i]);
        while (image.is_zero())
            for (const auto& m : basis) {
                std::vector<int> exps = m.exponents();
                exps.resize(gens.size(), 0);
                image.add_term(Monomial(exps), pick(0, static_cast<int>(p) - 1));
            }
        const std::string name = "x" + std::to_string(i);
        desc << " d(" << name << ")=" << pres->to_string(image);
        images.emplace(name, std::move(image));
    }
    auto d = gradss::dga::extend_derivation(pres, r, images);
    return RandomDga{seed, r, n, pres, std::move(d), desc.str()};
}

} // namespace oracle
