#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gradss/fp.hpp"

namespace gradss::algebra {

/// (n, m): n is the filtration column, m the coefficient row. Total degree n + m.
struct Bidegree {
    int n = 0;
    int m = 0;

    int total() const { return n + m; }
    Bidegree operator+(const Bidegree& o) const { return {n + o.n, m + o.m}; }
    Bidegree operator-(const Bidegree& o) const { return {n - o.n, m - o.m}; }
    auto operator<=>(const Bidegree&) const = default;
};

std::string to_string(const Bidegree& b);

enum class Kind { Polynomial, Exterior, Truncated };

std::string to_string(Kind k);

struct GeneratorSpec {
    std::string name;
    Kind kind = Kind::Polynomial;
    int height = 0; ///< truncation height h (x^h = 0); only for Kind::Truncated
    Bidegree bidegree;
    int weight = 0; ///< residue mod p-1

    int total_degree() const { return bidegree.total(); }
    bool odd() const { return total_degree() % 2 != 0; }

    static GeneratorSpec polynomial(std::string name, Bidegree b, int weight = 0);
    static GeneratorSpec exterior(std::string name, Bidegree b, int weight = 0);
    static GeneratorSpec truncated(std::string name, int height, Bidegree b, int weight = 0);
};

/// Exponent vector over the generator list of a presentation.
///
/// Ordered descending-lexicographically: the monomial with the larger exponent
/// on the earliest generator comes first. Bases and element terms use this order.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {}

    static Monomial unit(std::size_t generators) { return Monomial(std::vector<int>(generators, 0)); }
    static Monomial generator(std::size_t generators, std::size_t index, int power = 1);

    const std::vector<int>& exponents() const { return exps_; }
    int operator[](std::size_t i) const { return exps_[i]; }
    std::size_t size() const { return exps_.size(); }
    bool is_unit() const;

    std::strong_ordering operator<=>(const Monomial& o) const
    {
        // reversed: larger exponent vectors sort first
        return o.exps_ <=> exps_;
    }
    bool operator==(const Monomial& o) const = default;

private:
    std::vector<int> exps_;
};

/// Homogeneous F_p-linear combination of monomials. Zero coefficients are never stored.
class Element {
public:
    Element(std::uint32_t p, Bidegree deg) : p_(p), deg_(deg) {}

    std::uint32_t p() const { return p_; }
    const Bidegree& bidegree() const { return deg_; }
    const std::map<Monomial, Residue>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Set when a product was discarded because it landed beyond the truncation box.
    bool beyond_truncation() const { return beyond_; }
    void mark_beyond_truncation() { beyond_ = true; }

    void add_term(const Monomial& m, std::int64_t coeff);
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element scaled(std::int64_t c) const;
    Residue coefficient(const Monomial& m) const;

    bool operator==(const Element& o) const { return p_ == o.p_ && deg_ == o.deg_ && terms_ == o.terms_; }

private:
    std::uint32_t p_;
    Bidegree deg_;
    std::map<Monomial, Residue> terms_;
    bool beyond_ = false;
};

struct MonomialProduct {
    Residue sign = 0; ///< 0 when the product vanishes
    Monomial monomial;
};

/// Finite presentation of a bigraded, weight-graded graded-commutative F_p-algebra,
/// together with a truncation box (total degree <= max_degree) for enumeration.
class Presentation {
public:
    Presentation(std::uint32_t p, std::vector<GeneratorSpec> generators, int max_degree);

    std::uint32_t p() const { return field_.p(); }
    const Fp& field() const { return field_; }
    int max_degree() const { return max_degree_; }
    const std::vector<GeneratorSpec>& generators() const { return gens_; }
    const GeneratorSpec& generator(std::size_t i) const { return gens_.at(i); }
    std::size_t size() const { return gens_.size(); }
    std::optional<std::size_t> index_of(const std::string& name) const;
    std::size_t require_index(const std::string& name) const;

    /// Same generators with a different truncation box.
    Presentation with_max_degree(int max_degree) const;
    /// Tensor product: generators of `a` followed by those of `b`.
    static Presentation tensor(const Presentation& a, const Presentation& b);

    bool admissible(const Monomial& m) const;
    Bidegree bidegree_of(const Monomial& m) const;
    int total_degree(const Monomial& m) const { return bidegree_of(m).total(); }
    int weight_of(const Monomial& m) const;
    int weight_modulus() const { return static_cast<int>(p()) - 1; }

    bool in_box(Bidegree b) const { return b.n >= 0 && b.m >= 0 && b.total() <= max_degree_; }

    /// Admissible monomials of the bidegree, in basis order. Throws outside the box.
    const std::vector<Monomial>& basis_in_bidegree(Bidegree b) const;
    /// Bidegrees in the box with at least one monomial, ascending.
    std::vector<Bidegree> occupied_bidegrees() const;
    /// Position of a monomial inside its bidegree basis.
    std::size_t basis_index(const Monomial& m) const;

    /// Dimension per total degree 0..n, counted independently of the box.
    std::vector<std::size_t> dimension_series(int n) const;

    Element zero(Bidegree b) const { return Element(p(), b); }
    Element unit() const;
    Element generator_element(std::size_t i) const;
    Element generator_element(const std::string& name) const { return generator_element(require_index(name)); }
    Element monomial_element(const Monomial& m, std::int64_t coeff = 1) const;

    MonomialProduct multiply(const Monomial& a, const Monomial& b) const;
    /// Graded-commutative product. Results beyond the box come back zero and flagged.
    Element multiply(const Element& a, const Element& b) const;
    Element power(const Element& a, int e) const;

    std::string to_string(const Monomial& m) const;
    std::string to_string(const Element& e) const;

private:
    struct Index {
        std::map<Bidegree, std::vector<Monomial>> basis;
        std::map<Monomial, std::size_t> position;
    };
    void enumerate();

    Fp field_;
    std::vector<GeneratorSpec> gens_;
    int max_degree_;
    std::shared_ptr<const Index> index_; ///< shared between copies; presentations are immutable
};

} // namespace gradss::algebra
