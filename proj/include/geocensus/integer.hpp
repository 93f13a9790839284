#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace geocensus {

// Arbitrary precision integer used for every exact quantity in the library.
using Integer = mpz_class;

inline Integer isqrt(const Integer& n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer& n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline bool fits_u64(const Integer& n)
{
    return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

// Throws DomainError when n does not fit.
std::uint64_t to_u64(const Integer& n);

inline Integer from_u64(std::uint64_t v)
{
    Integer r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

// Parses a decimal integer with optional sign; throws DomainError on junk.
Integer parse_integer(const std::string& text);

} // namespace geocensus
