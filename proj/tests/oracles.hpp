#pragma once

// Brute-force reference implementations used only by the tests. None of these
// call into the library's arithmetic.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) {
            out.emplace_back(d, e);
        }
    }
    if (n > 1) {
        out.emplace_back(n, 1);
    }
    return out;
}

inline std::int64_t squarefree(std::int64_t n)
{
    std::int64_t s = n < 0 ? -1 : 1;
    for (auto [p, e] : factor(static_cast<std::uint64_t>(n < 0 ? -n : n))) {
        if (e % 2) {
            s *= static_cast<std::int64_t>(p);
        }
    }
    return s;
}

inline bool is_square(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r * r == n;
}

inline std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo; n <= hi; ++n) {
        if (is_prime(n)) {
            out.push_back(n);
        }
    }
    return out;
}

// Legendre symbol by exhaustive search for a square root.
inline int legendre(std::int64_t a, std::uint64_t p)
{
    const auto r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p))
                                              % static_cast<std::int64_t>(p));
    if (r == 0) {
        return 0;
    }
    for (std::uint64_t x = 1; x < p; ++x) {
        if (x * x % p == r) {
            return 1;
        }
    }
    return -1;
}

// Kronecker symbol from its definition: factor n, (a/2) by a mod 8,
// (a/-1) by the sign of a.
inline int kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0) {
        return (a == 1 || a == -1) ? 1 : 0;
    }
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) {
            result = -result;
        }
    }
    for (auto [p, e] : factor(static_cast<std::uint64_t>(n))) {
        int symbol;
        if (p == 2) {
            const std::int64_t r = ((a % 8) + 8) % 8;
            symbol = (r % 2 == 0) ? 0 : ((r == 1 || r == 7) ? 1 : -1);
        } else {
            symbol = legendre(a, p);
        }
        for (unsigned i = 0; i < e; ++i) {
            result *= symbol;
        }
    }
    return result;
}

// chi_D(p) for a prime p: the mod 8 rule at 2, Euler's criterion otherwise.
inline int character_at_prime(std::int64_t D, std::uint64_t p)
{
    if (p == 2) {
        const std::int64_t r = ((D % 8) + 8) % 8;
        return (r % 2 == 0) ? 0 : ((r == 1 || r == 7) ? 1 : -1);
    }
    const auto a = static_cast<std::uint64_t>(((D % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
                                              static_cast<std::int64_t>(p));
    if (a == 0) {
        return 0;
    }
    unsigned __int128 result = 1, base = a;
    for (std::uint64_t e = (p - 1) / 2; e > 0; e >>= 1) {
        if (e & 1U) {
            result = result * base % p;
        }
        base = base * base % p;
    }
    return result == 1 ? 1 : -1;
}

inline std::optional<std::uint64_t> exact_sqrt(unsigned __int128 v)
{
    constexpr std::uint64_t squares_mod_64 = 0x0202021202030213ULL; // bit r set iff r is a square mod 64
    if (!((squares_mod_64 >> static_cast<unsigned>(v & 63U)) & 1U)) {
        return std::nullopt;
    }
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (static_cast<unsigned __int128>(r) * r > v) {
        --r;
    }
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= v) {
        ++r;
    }
    if (static_cast<unsigned __int128>(r) * r == v) {
        return r;
    }
    return std::nullopt;
}

// Smallest y >= 1 with d y^2 + 1 a square, as (x, y).
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> pell(std::uint64_t d, std::uint64_t y_max)
{
    unsigned __int128 v = 1; // d y^2 + 1
    for (std::uint64_t y = 1; y <= y_max; ++y) {
        v += static_cast<unsigned __int128>(d) * (2 * y - 1);
        if (auto x = exact_sqrt(v)) {
            return std::make_pair(*x, y);
        }
    }
    return std::nullopt;
}

// Whether the norm-one unit X + Y sqrt(d) is u^k for a unit u = x' + y' sqrt(d) with x', y' >= 1
// and some prime k. Then X = T_k(x') for the Chebyshev polynomial T_k, which is
// increasing on x' >= 1, so a binary search over x' decides each k exactly.
// A fundamental solution is exactly one that is not such a power.
inline bool is_proper_unit_power(const mpz_class& d, const mpz_class& X)
{
    auto chebyshev = [&X](unsigned k, const mpz_class& x) {
        mpz_class prev = 1, cur = x;
        for (unsigned i = 1; i < k; ++i) {
            mpz_class next = 2 * x * cur - prev;
            prev = cur;
            cur = next;
            if (cur > X) {
                break; // already too large; only the comparison matters
            }
        }
        return cur;
    };
    for (unsigned k = 2; chebyshev(k, 2) <= X; ++k) {
        if (!is_prime(k)) {
            continue;
        }
        mpz_class lo = 2, hi = X;
        while (lo < hi) {
            const mpz_class mid = (lo + hi) / 2;
            if (chebyshev(k, mid) < X) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if (chebyshev(k, lo) == X) {
            const mpz_class n = lo * lo - 1;
            if (n % d == 0 && mpz_perfect_square_p(mpz_class(n / d).get_mpz_t())) {
                return true;
            }
        }
    }
    return false;
}

// Smallest X >= 3 with X^2 - D Y^2 = 4, Y >= 1.
inline std::optional<std::uint64_t> unit_trace(std::uint64_t D, std::uint64_t x_max)
{
    for (std::uint64_t x = 3; x <= x_max; ++x) {
        const std::uint64_t n = x * x - 4;
        if (n % D == 0 && is_square(n / D)) {
            return x;
        }
    }
    return std::nullopt;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e)
{
    std::uint64_t r = 1;
    while (e--) {
        r *= b;
    }
    return r;
}

inline unsigned valuation(std::int64_t n, std::uint64_t p)
{
    unsigned v = 0;
    n = n < 0 ? -n : n;
    while (n % static_cast<std::int64_t>(p) == 0) {
        n /= static_cast<std::int64_t>(p);
        ++v;
    }
    return v;
}

// Local solvability of a x^2 + b y^2 = z^2 over Q_p: a primitive solution
// modulo p^k, k = 3 + 2 v_p(4ab), lifts by Hensel's lemma. a and b are first
// reduced to their squarefree parts (a square factor rescales x or y). When p
// divides both, z = p z' and y -> b' y turn the conic into
// (-a'b') x^2 + (p b') z'^2 = w^2, so v_p(ab) <= 1 afterwards.
// Projective normalisation: the first unit coordinate is 1. If x and y are
// both divisible by p, then a x^2 + b y^2 = 0 mod p and z must be too, so a
// primitive solution has x or y a unit.
inline bool locally_solvable(std::int64_t a, std::int64_t b, std::uint64_t p)
{
    const auto sp = static_cast<std::int64_t>(p);
    a = squarefree(a);
    b = squarefree(b);
    if (a % sp == 0 && b % sp == 0) {
        const std::int64_t a1 = a / sp, b1 = b / sp;
        a = squarefree(-a1 * b1);
        b = squarefree(sp * b1);
    }
    const unsigned k = 3 + 2 * valuation(4 * a * b, p);
    const std::uint64_t mod = ipow(p, k);
    if (mod >= (std::uint64_t{1} << 31)) {
        throw std::range_error("locally_solvable: modulus too large for the search");
    }
    static thread_local std::map<std::uint64_t, std::vector<char>> tables;
    auto& square = tables[mod];
    if (square.empty()) {
        square.assign(mod, 0);
        for (std::uint64_t z = 0; z < mod; ++z) {
            square[z * z % mod] = 1;
        }
    }
    const auto m = static_cast<std::int64_t>(mod);
    const auto am = static_cast<std::uint64_t>(((a % m) + m) % m);
    const auto bm = static_cast<std::uint64_t>(((b % m) + m) % m);
    // x = 1, y free; s runs through y^2 mod m.
    std::uint64_t s = 0;
    for (std::uint64_t y = 0; y < mod; ++y) {
        if (square[(am + bm * s) % mod]) {
            return true;
        }
        s = (s + 2 * y + 1) % mod;
    }
    // x divisible by p, y = 1.
    for (std::uint64_t x = 0; x < mod; x += p) {
        if (square[(am * (x * x % mod) + bm) % mod]) {
            return true;
        }
    }
    return false;
}

// Sign analysis at the real place.
inline bool really_solvable(std::int64_t a, std::int64_t b)
{
    return a > 0 || b > 0;
}

// Euler product for L(2, chi_D) over primes up to `limit`, tail ignored
// (its size is below sum_{p > limit} 1/p^2 < 1/limit).
inline double l2_euler(std::int64_t D, std::uint64_t limit)
{
    long double product = 1.0L;
    for (std::uint64_t p : primes_between(2, limit)) {
        const int chi = character_at_prime(D, p);
        product *= 1.0L / (1.0L - chi / (static_cast<long double>(p) * p));
    }
    return static_cast<double>(product);
}

} // namespace oracle
