#include "gradss/fp.hpp"

namespace gradss {

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Fp::Fp(std::uint32_t p) : p_(p)
{
    if (!is_prime(p) || p > (1u << 30))
        throw InvalidArgument("modulus " + std::to_string(p) + " is not a supported prime");
}

Residue Fp::pow(Residue a, std::uint64_t e) const
{
    Residue result = 1 % p_;
    Residue base = a % p_;
    while (e > 0) {
        if (e & 1u)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1u;
    }
    return result;
}

Residue Fp::inv(Residue a) const
{
    if (a % p_ == 0)
        throw InvalidArgument("zero has no inverse in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
}

} // namespace gradss
