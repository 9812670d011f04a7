#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gradss/algebra.hpp"

namespace gradss::homalg {

using algebra::Bidegree;
using algebra::Presentation;

enum class Coefficients { Fp, ZpSymbolic };

/// A single-variable graded base ring: F_p[u], Z_p[u], or F_p[u]/(u^h).
///
/// Z_p is never modelled as a completed ring: it is only accepted by koszul_tor
/// when the left module is killed by p, so every complex it builds is over F_p.
struct BaseRing {
    Coefficients coefficients = Coefficients::Fp;
    std::uint32_t p = 5;
    std::string variable = "u";
    int variable_degree = 2;
    std::optional<int> truncation; ///< height h of F_p[u]/(u^h)

    static BaseRing zp_poly(std::uint32_t p, int degree = 2);
    static BaseRing fp_poly(std::uint32_t p, int degree = 2);
    static BaseRing fp_truncated(std::uint32_t p, int height, int degree = 2);

    std::string describe() const;
};

/// A cyclic module R/I where I is generated by a subset of {p, u^k}.
struct CyclicModule {
    std::string name;
    bool kills_p = false;
    std::optional<int> u_power; ///< u^k in I; nullopt means u acts freely

    static CyclicModule fp() { return {"F_p", true, 1}; }   ///< R/(p, u)
    static CyclicModule zp() { return {"Z_p", false, 1}; }  ///< R/(u)
    static CyclicModule fpu() { return {"F_p[u]", true, std::nullopt}; } ///< R/(p)
    static CyclicModule free() { return {"R", false, std::nullopt}; }   ///< R itself
};

class NotPTorsion : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bigraded table Tor_{n,m}: n homological, m internal degree.
struct TorTable {
    int max_internal_degree = 0;
    std::map<Bidegree, std::size_t> dims; ///< nonzero entries only

    std::size_t at(Bidegree b) const
    {
        auto it = dims.find(b);
        return it == dims.end() ? 0 : it->second;
    }
    std::map<Bidegree, std::size_t> nonzero() const { return dims; }
};

/// Tor^{base}(left, right) through internal degree n, from a Koszul-type free
/// resolution of `right` tensored with `left`.
TorTable koszul_tor(const BaseRing& base, const CyclicModule& left, const CyclicModule& right, int n);

/// Result of recognising a dimension table as a free graded-commutative algebra.
struct Recognition {
    std::optional<Presentation> presentation; ///< nullopt means "not free"
    bool unique = false;   ///< every graded-commutative algebra with these dimensions is this one
    std::string reason;
};

/// Accepts bigraded dims; generator names are x1, x2, ... in order of appearance.
Recognition recognize_free_presentation(std::uint32_t p, const std::map<Bidegree, std::size_t>& dims, int n);
Recognition recognize_free_presentation(std::uint32_t p, const TorTable& t);

/// Bigraded dimensions HH_{s,t} (s Hochschild degree, t internal total degree).
struct HochschildTable {
    int s_max = 0;
    int t_max = 0;
    std::map<std::pair<int, int>, std::size_t> dims; ///< nonzero entries only

    std::size_t at(int s, int t) const
    {
        auto it = dims.find({s, t});
        return it == dims.end() ? 0 : it->second;
    }
};

/// Hochschild homology over F_p through the normalized cyclic bar complex
/// A (x) Abar^{(x) s}. Refuses with ResourceLimit when a chain group exceeds size_cap.
HochschildTable hochschild_homology(const Presentation& pres, int s_max, int t_max,
                                    std::size_t size_cap = 200000);

} // namespace gradss::homalg
