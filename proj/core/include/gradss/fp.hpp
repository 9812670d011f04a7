#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gradss {

using Residue = std::uint32_t;

/// Thrown for malformed inputs: non-prime moduli, shape mismatches, bad presentations.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

bool is_prime(std::int64_t n);

/// Arithmetic in the prime field F_p. Values are residues in [0, p).
class Fp {
public:
    explicit Fp(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    Residue reduce(std::int64_t v) const
    {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    Residue add(Residue a, Residue b) const { return (a + b) % p_; }
    Residue sub(Residue a, Residue b) const { return (a + p_ - b) % p_; }
    Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const
    {
        return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
    }
    Residue inv(Residue a) const;
    Residue pow(Residue a, std::uint64_t e) const;

    /// (-1)^k as a residue.
    Residue sign(std::int64_t k) const { return (k % 2 == 0) ? 1 : p_ - 1; }

    /// Symmetric lift used when printing: residues above p/2 print as negatives.
    std::int64_t lift(Residue a) const { return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a; }

private:
    std::uint32_t p_;
};

} // namespace gradss
