#include "gradss/homalg.hpp"

#include <algorithm>
#include <sstream>

#include "gradss/linfp.hpp"
#include "gradss/parallel.hpp"

namespace gradss::homalg {

BaseRing BaseRing::zp_poly(std::uint32_t p, int degree) { return {Coefficients::ZpSymbolic, p, "u", degree, {}}; }
BaseRing BaseRing::fp_poly(std::uint32_t p, int degree) { return {Coefficients::Fp, p, "u", degree, {}}; }
BaseRing BaseRing::fp_truncated(std::uint32_t p, int height, int degree)
{
    return {Coefficients::Fp, p, "u", degree, height};
}

std::string BaseRing::describe() const
{
    std::ostringstream os;
    os << (coefficients == Coefficients::Fp ? "F_p" : "Z_p") << "[" << variable << "]";
    if (truncation)
        os << "/(" << variable << "^" << *truncation << ")";
    os << ", |" << variable << "| = " << variable_degree << ", p = " << p;
    return os.str();
}

namespace {

/// Entry of a resolution differential: coeff * p^p_power * u^u_power (coeff 0 = no entry).
struct RingEntry {
    int coeff = 0;
    int p_power = 0;
    int u_power = 0;
};

/// Free resolution: summand internal shifts per homological degree and the
/// differentials d_s : F_s -> F_{s-1} as dense entry grids [row in F_{s-1}][col in F_s].
struct Resolution {
    std::vector<std::vector<int>> shifts;
    std::vector<std::vector<std::vector<RingEntry>>> maps; ///< maps[s] for s >= 1; maps[0] unused
};

struct IdealGenerator {
    bool is_p;
    int u_power;
    int degree;
};

Resolution resolve(const BaseRing& base, const CyclicModule& right, int n)
{
    const int du = base.variable_degree;
    std::vector<IdealGenerator> gens;
    if (base.coefficients == Coefficients::ZpSymbolic && right.kills_p)
        gens.push_back({true, 0, 0});
    std::optional<int> k = right.u_power;
    if (k && base.truncation && *k >= *base.truncation)
        k.reset(); // u^k = 0 in the base: the module is free
    if (k)
        gens.push_back({false, *k, *k * du});

    Resolution res;
    if (base.truncation && k) {
        // periodic resolution of R/(u^k) over R = F_p[u]/(u^h)
        const int h = *base.truncation;
        int shift = 0;
        res.shifts.push_back({0});
        res.maps.emplace_back();
        for (int s = 1;; ++s) {
            int step = (s % 2 == 1) ? *k : h - *k;
            shift += step * du;
            if (shift > n)
                break;
            res.shifts.push_back({shift});
            res.maps.push_back({{RingEntry{1, 0, step}}});
        }
        return res;
    }

    // Koszul complex on a regular sequence of at most two elements.
    const std::size_t c = gens.size();
    std::vector<std::vector<unsigned>> subsets(c + 1);
    for (unsigned mask = 0; mask < (1u << c); ++mask)
        subsets[static_cast<std::size_t>(__builtin_popcount(mask))].push_back(mask);
    auto shift_of = [&](unsigned mask) {
        int d = 0;
        for (std::size_t i = 0; i < c; ++i)
            if (mask & (1u << i))
                d += gens[i].degree;
        return d;
    };
    for (std::size_t s = 0; s <= c; ++s) {
        std::vector<int> sh;
        for (auto mask : subsets[s])
            sh.push_back(shift_of(mask));
        res.shifts.push_back(std::move(sh));
    }
    res.maps.emplace_back();
    for (std::size_t s = 1; s <= c; ++s) {
        const auto& src = subsets[s];
        const auto& dst = subsets[s - 1];
        std::vector<std::vector<RingEntry>> grid(dst.size(), std::vector<RingEntry>(src.size()));
        for (std::size_t col = 0; col < src.size(); ++col) {
            int position = 0;
            for (std::size_t i = 0; i < c; ++i) {
                if (!(src[col] & (1u << i)))
                    continue;
                unsigned face = src[col] & ~(1u << i);
                auto row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), face) - dst.begin());
                grid[row][col] = gens[i].is_p ? RingEntry{position % 2 == 0 ? 1 : -1, 1, 0}
                                              : RingEntry{position % 2 == 0 ? 1 : -1, 0, gens[i].u_power};
                ++position;
            }
        }
        res.maps.push_back(std::move(grid));
    }
    return res;
}

} // namespace

TorTable koszul_tor(const BaseRing& base, const CyclicModule& left, const CyclicModule& right, int n)
{
    Fp field(base.p);
    if (base.variable_degree <= 0)
        throw InvalidArgument("base variable needs positive degree");
    if (base.truncation && *base.truncation < 2)
        throw InvalidArgument("truncation height must be >= 2");
    if (base.coefficients == Coefficients::ZpSymbolic) {
        if (base.truncation)
            throw InvalidArgument("truncated bases are only supported over F_p");
        if (!left.kills_p)
            throw NotPTorsion("left module " + left.name + " is not annihilated by p; Tor over " +
                              base.describe() + " would leave F_p-linear algebra");
    } else {
        for (const auto* m : {&left, &right})
            if (!m->kills_p && m->u_power)
                throw InvalidArgument("module " + m->name + " needs Z_p coefficients but the base is " +
                                      base.describe());
    }

    const int du = base.variable_degree;
    // left module L = F_p[u]/(u^a), a possibly infinite
    std::optional<int> a = left.u_power;
    if (base.truncation)
        a = a ? std::min(*a, *base.truncation) : *base.truncation;
    auto l_index = [&](int shift, int m) -> std::optional<int> {
        int rest = m - shift;
        if (rest < 0 || rest % du != 0)
            return std::nullopt;
        int i = rest / du;
        if (a && i >= *a)
            return std::nullopt;
        return i;
    };

    Resolution res = resolve(base, right, n);
    TorTable table;
    table.max_internal_degree = n;
    const int top = static_cast<int>(res.shifts.size()) - 1;

    // chain group basis in internal degree m: summand indices with a live L-basis element
    auto basis = [&](int s, int m) {
        std::vector<std::pair<std::size_t, int>> out;
        if (s < 0 || s > top)
            return out;
        for (std::size_t j = 0; j < res.shifts[static_cast<std::size_t>(s)].size(); ++j)
            if (auto i = l_index(res.shifts[static_cast<std::size_t>(s)][j], m))
                out.emplace_back(j, *i);
        return out;
    };
    auto rank_of = [&](int s, int m) -> std::size_t {
        if (s < 1 || s > top)
            return 0;
        auto src = basis(s, m);
        auto dst = basis(s - 1, m);
        if (src.empty() || dst.empty())
            return 0;
        linfp::FpMatrix mat(base.p, dst.size(), src.size());
        const auto& grid = res.maps[static_cast<std::size_t>(s)];
        for (std::size_t col = 0; col < src.size(); ++col) {
            auto [sj, si] = src[col];
            for (std::size_t row = 0; row < dst.size(); ++row) {
                auto [dj, di] = dst[row];
                const RingEntry& e = grid[dj][sj];
                if (e.coeff == 0 || e.p_power > 0) // p acts as zero on L
                    continue;
                if (di == si + e.u_power)
                    mat.set(row, col, e.coeff);
            }
        }
        return linfp::rank(mat);
    };

    for (int m = 0; m <= n; ++m)
        for (int s = 0; s <= top; ++s) {
            std::size_t dim = basis(s, m).size();
            if (dim == 0)
                continue;
            std::size_t h = dim - rank_of(s, m) - rank_of(s + 1, m);
            if (h > 0)
                table.dims[{s, m}] = h;
        }
    (void)field;
    return table;
}

Recognition recognize_free_presentation(std::uint32_t p, const std::map<Bidegree, std::size_t>& dims, int n)
{
    Recognition out;
    auto target = [&](Bidegree b) -> std::size_t {
        auto it = dims.find(b);
        return it == dims.end() ? 0 : it->second;
    };
    for (const auto& [b, d] : dims)
        if (d > 0 && (b.n < 0 || b.m < 0)) {
            out.reason = "classes outside the first quadrant";
            return out;
        }
    if (target({0, 0}) != 1) {
        out.reason = "degree 0 is not one-dimensional";
        return out;
    }
    std::vector<algebra::GeneratorSpec> gens;
    for (int d = 1; d <= n; ++d) {
        Presentation current(p, gens, d);
        std::vector<std::pair<Bidegree, std::size_t>> deficits;
        for (int col = 0; col <= d; ++col) {
            Bidegree b{col, d - col};
            std::size_t have = current.basis_in_bidegree(b).size();
            std::size_t want = target(b);
            if (have > want) {
                out.reason = "forced products give dimension " + std::to_string(have) + " at " +
                             algebra::to_string(b) + " but the table has " + std::to_string(want);
                return out;
            }
            if (want > have)
                deficits.emplace_back(b, want - have);
        }
        for (const auto& [b, count] : deficits)
            for (std::size_t i = 0; i < count; ++i) {
                std::string name = "x" + std::to_string(gens.size() + 1);
                gens.push_back(d % 2 == 1 ? algebra::GeneratorSpec::exterior(name, b)
                                          : algebra::GeneratorSpec::polynomial(name, b));
            }
    }
    // every graded-commutative structure is forced when positive products land in zero groups
    bool forced = true;
    for (const auto& [b1, d1] : dims)
        for (const auto& [b2, d2] : dims) {
            if (d1 == 0 || d2 == 0 || b1.total() == 0 || b2.total() == 0)
                continue;
            Bidegree prod = b1 + b2;
            if (prod.total() > n || target(prod) != 0)
                forced = false;
        }
    out.presentation = Presentation(p, gens, n);
    out.unique = forced;
    std::ostringstream os;
    os << "free on " << gens.size() << " generator(s)";
    for (const auto& g : gens)
        os << " " << g.name << ":" << algebra::to_string(g.kind) << algebra::to_string(g.bidegree);
    os << (forced ? "; all positive-degree products land in zero groups, so the algebra structure is forced"
                  : "; algebra structure not forced by dimensions alone");
    out.reason = os.str();
    return out;
}

Recognition recognize_free_presentation(std::uint32_t p, const TorTable& t)
{
    return recognize_free_presentation(p, t.dims, t.max_internal_degree + 1);
}

HochschildTable hochschild_homology(const Presentation& pres, int s_max, int t_max, std::size_t size_cap)
{
    if (s_max < 0 || t_max < 0)
        throw InvalidArgument("negative Hochschild bounds");
    const Presentation a = pres.with_max_degree(t_max);
    std::vector<algebra::Monomial> monos;
    std::vector<int> degree;
    std::map<algebra::Monomial, int> index;
    for (const auto& b : a.occupied_bidegrees())
        for (const auto& m : a.basis_in_bidegree(b)) {
            index.emplace(m, static_cast<int>(monos.size()));
            monos.push_back(m);
            degree.push_back(b.total());
        }
    const int unit = index.at(algebra::Monomial::unit(a.size()));

    // chains[s][t]: tuples (a0, a1..as), a_i != 1 for i >= 1, total degree t
    const int s_top = s_max + 1;
    std::vector<std::vector<std::vector<std::vector<int>>>> chains(
        static_cast<std::size_t>(s_top) + 1, std::vector<std::vector<std::vector<int>>>(t_max + 1));
    for (int s = 0; s <= s_top; ++s) {
        std::vector<int> tuple(static_cast<std::size_t>(s) + 1);
        std::size_t count = 0;
        auto rec = [&](auto&& self, int pos, int deg) -> void {
            if (pos > s) {
                chains[s][deg].push_back(tuple);
                if (++count > size_cap)
                    throw ResourceLimit("normalized bar complex in Hochschild degree " + std::to_string(s) +
                                        " exceeds the size cap of " + std::to_string(size_cap));
                return;
            }
            for (int i = 0; i < static_cast<int>(monos.size()); ++i) {
                if (pos > 0 && i == unit)
                    continue;
                if (deg + degree[i] > t_max)
                    continue;
                tuple[static_cast<std::size_t>(pos)] = i;
                self(self, pos + 1, deg + degree[i]);
            }
        };
        rec(rec, 0, 0);
        for (auto& group : chains[s])
            std::sort(group.begin(), group.end());
    }

    const Fp& f = a.field();
    auto product = [&](int x, int y) -> std::pair<Residue, int> {
        auto prod = a.multiply(monos[x], monos[y]);
        if (prod.sign == 0)
            return {0, -1};
        return {prod.sign, index.at(prod.monomial)};
    };
    auto boundary_rank = [&](int s, int t) -> std::size_t {
        if (s < 1 || s > s_top)
            return 0;
        const auto& src = chains[s][t];
        const auto& dst = chains[s - 1][t];
        if (src.empty() || dst.empty())
            return 0;
        linfp::FpMatrix mat(a.p(), dst.size(), src.size());
        auto locate = [&](const std::vector<int>& tuple) {
            auto it = std::lower_bound(dst.begin(), dst.end(), tuple);
            return static_cast<std::size_t>(it - dst.begin());
        };
        for (std::size_t col = 0; col < src.size(); ++col) {
            const auto& x = src[col];
            for (int i = 0; i < s; ++i) {
                auto [sign, prod] = product(x[i], x[i + 1]);
                if (sign == 0)
                    continue;
                std::vector<int> face;
                face.reserve(static_cast<std::size_t>(s));
                for (int j = 0; j < i; ++j)
                    face.push_back(x[j]);
                face.push_back(prod);
                for (int j = i + 2; j <= s; ++j)
                    face.push_back(x[j]);
                auto row = locate(face);
                mat.at(row, col) = f.add(mat.at(row, col), f.mul(sign, f.sign(i)));
            }
            // last face: a_s a_0 moved to the front, with the Koszul sign of the move
            int moved = 0;
            for (int j = 0; j < s; ++j)
                moved += degree[x[j]];
            auto [sign, prod] = product(x[s], x[0]);
            if (sign != 0) {
                std::vector<int> face{prod};
                for (int j = 1; j < s; ++j)
                    face.push_back(x[j]);
                auto row = locate(face);
                Residue c = f.mul(f.mul(sign, f.sign(s)), f.sign(static_cast<long>(degree[x[s]]) * moved));
                mat.at(row, col) = f.add(mat.at(row, col), c);
            }
        }
        return linfp::rank(mat);
    };

    std::vector<std::pair<int, int>> cells;
    for (int s = 0; s <= s_top; ++s)
        for (int t = 0; t <= t_max; ++t)
            cells.emplace_back(s, t);
    std::vector<std::size_t> ranks(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) { ranks[i] = boundary_rank(cells[i].first, cells[i].second); });
    auto rank_at = [&](int s, int t) -> std::size_t {
        if (s < 1 || s > s_top)
            return 0;
        return ranks[static_cast<std::size_t>(s) * static_cast<std::size_t>(t_max + 1) + static_cast<std::size_t>(t)];
    };

    HochschildTable table;
    table.s_max = s_max;
    table.t_max = t_max;
    for (int s = 0; s <= s_max; ++s)
        for (int t = 0; t <= t_max; ++t) {
            std::size_t dim = chains[s][t].size();
            std::size_t h = dim - rank_at(s, t) - rank_at(s + 1, t);
            if (h > 0)
                table.dims[{s, t}] = h;
        }
    return table;
}

} // namespace gradss::homalg
