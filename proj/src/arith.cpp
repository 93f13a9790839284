#include "geocensus/arith.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "geocensus/errors.hpp"

namespace geocensus {

namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& trial_primes()
{
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) {
                continue;
            }
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i) {
                composite[j] = true;
            }
        }
        return out;
    }();
    return primes;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a) noexcept
{
    a %= n;
    if (a == 0) {
        return true;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) {
        return true;
    }
    for (int r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) {
            return true;
        }
    }
    return false;
}

// Pollard-Brent; n is odd, composite and not a perfect power of a small prime.
Integer find_divisor(const Integer& n)
{
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, q = 1, g = 1, ys, diff;
        const unsigned long m = 128;
        unsigned long r = 1;
        auto step = [&](Integer& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) {
                step(y);
            }
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    step(y);
                    diff = x - y;
                    q = q * abs(diff);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                step(ys);
                diff = x - ys;
                diff = abs(diff);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) {
            return g;
        }
    }
}

void split_cofactor(const Integer& n, const FactorOptions& options,
                    std::map<Integer, unsigned>& out)
{
    if (n == 1) {
        return;
    }
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > options.max_bits) {
        throw ResourceLimit("cofactor " + n.get_str() + " exceeds the factoring budget of "
                            + std::to_string(options.max_bits) + " bits");
    }
    if (is_perfect_square(n)) {
        Integer r = isqrt(n);
        split_cofactor(r, options, out);
        split_cofactor(r, options, out);
        return;
    }
    Integer d = find_divisor(n);
    split_cofactor(d, options, out);
    split_cofactor(Integer(n / d), options, out);
}

} // namespace

Integer PrimeFactorization::product() const
{
    Integer p = 1;
    for (const auto& f : factors) {
        Integer power;
        mpz_pow_ui(power.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        p *= power;
    }
    return p;
}

bool is_prime_u64(std::uint64_t n) noexcept
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    if (n < 41 * 41) {
        return true;
    }
    // Jim Sinclair's base set is deterministic for all n < 2^64.
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        if (!strong_probable_prime(n, a)) {
            return false;
        }
    }
    return true;
}

bool is_prime(const Integer& n)
{
    if (n < 2) {
        return false;
    }
    if (fits_u64(n)) {
        return is_prime_u64(to_u64(n));
    }
    // GMP runs BPSW and then reps - 24 Miller-Rabin rounds.
    return mpz_probab_prime_p(n.get_mpz_t(), 88) != 0;
}

PrimeFactorization factorize(const Integer& n, const FactorOptions& options)
{
    if (n < 1) {
        throw DomainError("factorize requires n >= 1, got " + n.get_str());
    }
    std::map<Integer, unsigned> found;
    Integer rest = n;
    for (std::uint32_t p : trial_primes()) {
        if (Integer(p) * p > rest) {
            break;
        }
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++found[Integer(p)];
        }
    }
    if (rest > 1) {
        const Integer limit = Integer(kTrialLimit) * kTrialLimit;
        if (rest < limit) {
            ++found[rest]; // no factor below its square root
        } else {
            split_cofactor(rest, options, found);
        }
    }
    PrimeFactorization result{n, {}};
    for (auto& [p, e] : found) {
        result.factors.push_back({p, e});
    }
    return result;
}

SquarefreeDecomposition squarefree_part(const Integer& n)
{
    if (n == 0) {
        throw DomainError("squarefree_part is undefined at 0");
    }
    Integer s = sgn(n) < 0 ? -1 : 1;
    Integer f = 1;
    for (const auto& [p, e] : factorize(abs(n)).factors) {
        if (e % 2 == 1) {
            s *= p;
        }
        for (unsigned i = 0; i < e / 2; ++i) {
            f *= p;
        }
    }
    return {s, f};
}

int kronecker(const Integer& a, const Integer& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

ContinuedFraction cf_sqrt(const Integer& d)
{
    if (d <= 0 || is_perfect_square(d)) {
        throw DomainError("cf_sqrt requires a positive non-square, got " + d.get_str());
    }
    ContinuedFraction cf{isqrt(d), {}};
    Integer m = 0, q = 1, a = cf.a0;
    const Integer end = 2 * cf.a0;
    do {
        m = a * q - m;
        q = (d - m * m) / q;
        a = (cf.a0 + m) / q;
        cf.period.push_back(a);
    } while (a != end);
    return cf;
}

PellSolution pell_fundamental(const Integer& d)
{
    if (d <= 1) {
        throw DomainError("pell_fundamental requires d > 1, got " + d.get_str());
    }
    const ContinuedFraction cf = cf_sqrt(d);
    Integer h_prev = 1, h = cf.a0;
    Integer k_prev = 0, k = 1;
    // The solution sits at the end of the first or second period.
    for (std::size_t i = 0;; ++i) {
        if (h * h - d * k * k == 1) {
            return {d, h, k};
        }
        const Integer& a = cf.period[i % cf.period.size()];
        Integer h_next = a * h + h_prev;
        Integer k_next = a * k + k_prev;
        h_prev = std::move(h);
        k_prev = std::move(k);
        h = std::move(h_next);
        k = std::move(k_next);
    }
}

} // namespace geocensus
