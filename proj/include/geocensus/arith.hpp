#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "geocensus/integer.hpp"

namespace geocensus {

struct PrimeFactor {
    Integer prime;
    unsigned exponent = 0;

    bool operator==(const PrimeFactor&) const = default;
};

// value = prod prime^exponent, primes ascending.
struct PrimeFactorization {
    Integer value;
    std::vector<PrimeFactor> factors;

    Integer product() const;
};

struct FactorOptions {
    // Composite cofactors above this many bits after trial division are refused.
    unsigned max_bits = 160;
};

// Minimal positive solution of x^2 - d*y^2 = 1.
struct PellSolution {
    Integer d;
    Integer x;
    Integer y;
};

struct ContinuedFraction {
    Integer a0;
    std::vector<Integer> period;
};

struct SquarefreeDecomposition {
    Integer squarefree; // sign follows the input
    Integer cofactor;   // n = squarefree * cofactor^2, cofactor > 0
};

/// Deterministic Miller-Rabin below 2^64; above that a BPSW test followed by
/// 64 random-base strong rounds, so the error probability stays below 2^-128.
bool is_prime(const Integer& n);
bool is_prime_u64(std::uint64_t n) noexcept;

/// Trial division up to 10^6, then Pollard-Brent rho on what is left.
/// Throws DomainError for n < 1 and ResourceLimit when a composite cofactor
/// exceeds `options.max_bits`.
PrimeFactorization factorize(const Integer& n, const FactorOptions& options = {});

SquarefreeDecomposition squarefree_part(const Integer& n);

/// Kronecker symbol (a/n) with (a/0) = 1 for a = +-1 and 0 otherwise.
int kronecker(const Integer& a, const Integer& n);

/// Periodic expansion of sqrt(d) for d > 0 not a perfect square.
ContinuedFraction cf_sqrt(const Integer& d);

/// Fundamental solution of the Pell equation, read off the convergents of
/// sqrt(d). Accepts any non-square d > 1; the squarefree case is the common one.
PellSolution pell_fundamental(const Integer& d);

} // namespace geocensus
