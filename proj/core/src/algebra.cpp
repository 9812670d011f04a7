#include "gradss/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gradss::algebra {

std::string to_string(const Bidegree& b) { return "(" + std::to_string(b.n) + "," + std::to_string(b.m) + ")"; }

std::string to_string(Kind k)
{
    switch (k) {
    case Kind::Polynomial:
        return "poly";
    case Kind::Exterior:
        return "ext";
    case Kind::Truncated:
        return "trunc";
    }
    return "?";
}

GeneratorSpec GeneratorSpec::polynomial(std::string name, Bidegree b, int weight)
{
    return {std::move(name), Kind::Polynomial, 0, b, weight};
}

GeneratorSpec GeneratorSpec::exterior(std::string name, Bidegree b, int weight)
{
    return {std::move(name), Kind::Exterior, 0, b, weight};
}

GeneratorSpec GeneratorSpec::truncated(std::string name, int height, Bidegree b, int weight)
{
    return {std::move(name), Kind::Truncated, height, b, weight};
}

Monomial Monomial::generator(std::size_t generators, std::size_t index, int power)
{
    std::vector<int> e(generators, 0);
    e.at(index) = power;
    return Monomial(std::move(e));
}

bool Monomial::is_unit() const
{
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
}

void Element::add_term(const Monomial& m, std::int64_t coeff)
{
    std::int64_t c = coeff % static_cast<std::int64_t>(p_);
    if (c < 0)
        c += p_;
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, static_cast<Residue>(c));
    if (!inserted) {
        it->second = static_cast<Residue>((it->second + c) % p_);
        if (it->second == 0)
            terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& o)
{
    if (o.p_ != p_ || (o.deg_ != deg_ && !o.is_zero()))
        throw InvalidArgument("adding elements of different bidegrees " + to_string(deg_) + " and " +
                              to_string(o.deg_));
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    beyond_ = beyond_ || o.beyond_;
    return *this;
}

Element& Element::operator-=(const Element& o) { return *this += o.scaled(-1); }

Element Element::scaled(std::int64_t c) const
{
    Element out(p_, deg_);
    for (const auto& [m, v] : terms_)
        out.add_term(m, static_cast<std::int64_t>(v) * (c % static_cast<std::int64_t>(p_)));
    out.beyond_ = beyond_;
    return out;
}

Residue Element::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

Presentation::Presentation(std::uint32_t p, std::vector<GeneratorSpec> generators, int max_degree)
    : field_(p), gens_(std::move(generators)), max_degree_(max_degree)
{
    if (p < 5)
        throw InvalidArgument("only primes p >= 5 are supported, got " + std::to_string(p));
    if (max_degree < 0)
        throw InvalidArgument("negative truncation bound");
    std::set<std::string> names;
    for (auto& g : gens_) {
        if (g.name.empty())
            throw InvalidArgument("generator with empty name");
        if (!names.insert(g.name).second)
            throw InvalidArgument("duplicate generator '" + g.name + "'");
        if (g.bidegree.n < 0 || g.bidegree.m < 0)
            throw InvalidArgument("generator '" + g.name + "' lies outside the first quadrant");
        if (g.total_degree() <= 0)
            throw InvalidArgument("generator '" + g.name + "' has total degree 0");
        if (g.kind == Kind::Exterior && !g.odd())
            throw InvalidArgument("exterior generator '" + g.name + "' has even total degree " +
                                  std::to_string(g.total_degree()));
        if (g.kind != Kind::Exterior && g.odd())
            throw InvalidArgument(algebra::to_string(g.kind) + " generator '" + g.name + "' has odd total degree " +
                                  std::to_string(g.total_degree()));
        if (g.kind == Kind::Truncated && g.height < 2)
            throw InvalidArgument("truncated generator '" + g.name + "' needs height >= 2");
        int mod = static_cast<int>(p) - 1;
        g.weight = ((g.weight % mod) + mod) % mod;
    }
    enumerate();
}

void Presentation::enumerate()
{
    auto index = std::make_shared<Index>();
    std::vector<int> exps(gens_.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, int budget) -> void {
        if (i == gens_.size()) {
            Monomial m(exps);
            index->basis[bidegree_of(m)].push_back(m);
            return;
        }
        const auto& g = gens_[i];
        int cap = budget / g.total_degree();
        if (g.kind == Kind::Exterior)
            cap = std::min(cap, 1);
        else if (g.kind == Kind::Truncated)
            cap = std::min(cap, g.height - 1);
        for (int e = cap; e >= 0; --e) {
            exps[i] = e;
            self(self, i + 1, budget - e * g.total_degree());
        }
        exps[i] = 0;
    };
    rec(rec, 0, max_degree_);
    for (const auto& [deg, monos] : index->basis)
        for (std::size_t k = 0; k < monos.size(); ++k)
            index->position.emplace(monos[k], k);
    index_ = std::move(index);
}

std::optional<std::size_t> Presentation::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t Presentation::require_index(const std::string& name) const
{
    auto i = index_of(name);
    if (!i)
        throw InvalidArgument("unknown generator '" + name + "'");
    return *i;
}

Presentation Presentation::with_max_degree(int max_degree) const { return Presentation(p(), gens_, max_degree); }

Presentation Presentation::tensor(const Presentation& a, const Presentation& b)
{
    if (a.p() != b.p())
        throw InvalidArgument("tensor of presentations over different primes");
    auto gens = a.gens_;
    gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
    return Presentation(a.p(), std::move(gens), std::max(a.max_degree_, b.max_degree_));
}

bool Presentation::admissible(const Monomial& m) const
{
    if (m.size() != gens_.size())
        return false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        int e = m[i];
        if (e < 0)
            return false;
        if (gens_[i].kind == Kind::Exterior && e > 1)
            return false;
        if (gens_[i].kind == Kind::Truncated && e >= gens_[i].height)
            return false;
    }
    return true;
}

Bidegree Presentation::bidegree_of(const Monomial& m) const
{
    Bidegree b;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        b.n += m[i] * gens_[i].bidegree.n;
        b.m += m[i] * gens_[i].bidegree.m;
    }
    return b;
}

int Presentation::weight_of(const Monomial& m) const
{
    int mod = weight_modulus();
    long w = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        w += static_cast<long>(m[i]) * gens_[i].weight;
    return static_cast<int>(w % mod);
}

const std::vector<Monomial>& Presentation::basis_in_bidegree(Bidegree b) const
{
    static const std::vector<Monomial> empty;
    if (b.n < 0 || b.m < 0)
        return empty;
    if (b.total() > max_degree_)
        throw InvalidArgument("bidegree " + algebra::to_string(b) + " lies beyond the truncation bound " +
                              std::to_string(max_degree_));
    auto it = index_->basis.find(b);
    return it == index_->basis.end() ? empty : it->second;
}

std::vector<Bidegree> Presentation::occupied_bidegrees() const
{
    std::vector<Bidegree> out;
    out.reserve(index_->basis.size());
    for (const auto& [b, monos] : index_->basis)
        out.push_back(b);
    return out;
}

std::size_t Presentation::basis_index(const Monomial& m) const
{
    auto it = index_->position.find(m);
    if (it == index_->position.end())
        throw InvalidArgument("monomial " + to_string(m) + " is not in the enumerated basis");
    return it->second;
}

std::vector<std::size_t> Presentation::dimension_series(int n) const
{
    std::vector<std::size_t> series(static_cast<std::size_t>(std::max(n, 0)) + 1, 0);
    if (n < 0)
        return {};
    series[0] = 1;
    for (const auto& g : gens_) {
        int d = g.total_degree();
        int cap = g.kind == Kind::Exterior ? 1 : g.kind == Kind::Truncated ? g.height - 1 : n / d;
        std::vector<std::size_t> next(series.size(), 0);
        for (int k = 0; k <= n; ++k) {
            if (series[k] == 0)
                continue;
            for (int e = 0; e <= cap && k + e * d <= n; ++e)
                next[k + e * d] += series[k];
        }
        series = std::move(next);
    }
    return series;
}

Element Presentation::unit() const
{
    Element e(p(), {0, 0});
    e.add_term(Monomial::unit(gens_.size()), 1);
    return e;
}

Element Presentation::generator_element(std::size_t i) const
{
    Element e(p(), gens_.at(i).bidegree);
    e.add_term(Monomial::generator(gens_.size(), i), 1);
    return e;
}

Element Presentation::monomial_element(const Monomial& m, std::int64_t coeff) const
{
    if (!admissible(m))
        throw InvalidArgument("inadmissible monomial " + to_string(m));
    Element e(p(), bidegree_of(m));
    e.add_term(m, coeff);
    return e;
}

MonomialProduct Presentation::multiply(const Monomial& a, const Monomial& b) const
{
    const std::size_t k = gens_.size();
    std::vector<int> exps(k);
    for (std::size_t i = 0; i < k; ++i) {
        exps[i] = a[i] + b[i];
        const auto& g = gens_[i];
        if ((g.kind == Kind::Exterior && exps[i] > 1) || (g.kind == Kind::Truncated && exps[i] >= g.height))
            return {0, Monomial()};
    }
    // Moving each odd factor of b left past the odd factors of a with larger index.
    long transpositions = 0;
    long odd_in_a_after = 0;
    for (std::size_t j = k; j-- > 0;) {
        if (gens_[j].odd()) {
            transpositions += static_cast<long>(b[j]) * odd_in_a_after;
            odd_in_a_after += a[j];
        }
    }
    return {field_.sign(transpositions), Monomial(std::move(exps))};
}

Element Presentation::multiply(const Element& a, const Element& b) const
{
    Bidegree deg = a.bidegree() + b.bidegree();
    Element out(p(), deg);
    if (a.beyond_truncation() || b.beyond_truncation())
        out.mark_beyond_truncation();
    if (deg.total() > max_degree_) {
        if (!a.is_zero() && !b.is_zero())
            out.mark_beyond_truncation();
        return out;
    }
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            auto prod = multiply(ma, mb);
            if (prod.sign == 0)
                continue;
            out.add_term(prod.monomial, field_.mul(field_.mul(ca, cb), prod.sign));
        }
    return out;
}

Element Presentation::power(const Element& a, int e) const
{
    Element out = unit();
    for (int i = 0; i < e; ++i)
        out = multiply(out, a);
    return out;
}

std::string Presentation::to_string(const Monomial& m) const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!first)
            os << ' ';
        os << gens_[i].name;
        if (m[i] != 1)
            os << '^' << m[i];
        first = false;
    }
    return first ? "1" : os.str();
}

std::string Presentation::to_string(const Element& e) const
{
    if (e.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : e.terms()) {
        std::int64_t lifted = field_.lift(c);
        if (first)
            os << (lifted < 0 ? "-" : "");
        else
            os << (lifted < 0 ? " - " : " + ");
        first = false;
        const std::int64_t magnitude = lifted < 0 ? -lifted : lifted;
        if (magnitude != 1) {
            os << magnitude;
            if (!m.is_unit())
                os << ' ' << to_string(m);
        } else {
            os << to_string(m);
        }
    }
    return os.str();
}

} // namespace gradss::algebra
