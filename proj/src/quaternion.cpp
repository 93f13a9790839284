#include "geocensus/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "geocensus/arith.hpp"
#include "geocensus/errors.hpp"

namespace geocensus {

namespace {

// n = p^v * u with p not dividing u.
unsigned split_valuation(const Integer& n, const Integer& p, Integer& unit)
{
    unit = n;
    unsigned v = 0;
    while (mpz_divisible_p(unit.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(unit.get_mpz_t(), unit.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

unsigned long residue(const Integer& u, unsigned long m)
{
    return mpz_fdiv_ui(u.get_mpz_t(), m);
}

// epsilon(u) = (u - 1)/2 mod 2 and omega(u) = (u^2 - 1)/8 mod 2 for odd u.
unsigned epsilon2(const Integer& u)
{
    return residue(u, 4) == 1 ? 0 : 1;
}

unsigned omega2(const Integer& u)
{
    const unsigned long r = residue(u, 8);
    return (r == 1 || r == 7) ? 0 : 1;
}

} // namespace

Place Place::prime(const Integer& p)
{
    if (!is_prime(p)) {
        throw DomainError(p.get_str() + " is not a prime place");
    }
    return Place(p);
}

RamSet::RamSet(std::vector<Integer> finite_primes, bool at_infinity)
    : primes_(std::move(finite_primes)), at_infinity_(at_infinity)
{
    std::sort(primes_.begin(), primes_.end());
    if (std::adjacent_find(primes_.begin(), primes_.end()) != primes_.end()) {
        throw DomainError("ramification set lists a prime twice");
    }
    for (const auto& p : primes_) {
        if (!is_prime(p)) {
            throw DomainError(p.get_str() + " is not prime");
        }
    }
    if ((primes_.size() + (at_infinity_ ? 1 : 0)) % 2 != 0) {
        throw DomainError("ramification set " + name() + " has odd cardinality");
    }
}

std::string RamSet::name() const
{
    std::string out = "{";
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        out += (i ? "," : "") + primes_[i].get_str();
    }
    if (at_infinity_) {
        out += primes_.empty() ? "inf" : ",inf";
    }
    return out + "}";
}

std::string Coarea::symbolic() const
{
    const Integer num = pi_multiple.get_num();
    const Integer den = pi_multiple.get_den();
    std::string out = num == 1 ? "pi" : num.get_str() + "*pi";
    if (den != 1) {
        out += "/" + den.get_str();
    }
    return out;
}

AlgebraClass AlgebraClass::from(RamSet ram)
{
    AlgebraClass c;
    c.is_division = !ram.empty();
    if (ram.indefinite()) {
        c.coarea = coarea_rational(ram);
    }
    c.ram = std::move(ram);
    return c;
}

int hilbert_local(const Integer& a, const Integer& b, const Place& place)
{
    if (a == 0 || b == 0) {
        throw DomainError("Hilbert symbol needs nonzero arguments");
    }
    if (place.is_infinite()) {
        return (a < 0 && b < 0) ? -1 : 1;
    }
    const Integer& p = place.prime();
    Integer u, v;
    const unsigned alpha = split_valuation(a, p, u);
    const unsigned beta = split_valuation(b, p, v);
    if (p == 2) {
        const unsigned e = epsilon2(u) * epsilon2(v) + alpha * omega2(v) + beta * omega2(u);
        return e % 2 == 0 ? 1 : -1;
    }
    // (-1)^(alpha beta eps(p)) (u/p)^beta (v/p)^alpha
    int sign = 1;
    if ((alpha * beta) % 2 == 1 && residue(p, 4) == 3) {
        sign = -sign;
    }
    if (beta % 2 == 1) {
        sign *= kronecker(u, p);
    }
    if (alpha % 2 == 1) {
        sign *= kronecker(v, p);
    }
    return sign;
}

RamSet from_hilbert(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0) {
        throw DomainError("Hilbert symbol needs nonzero arguments");
    }
    std::set<Integer> candidates{Integer(2)};
    for (const Integer* n : {&a, &b}) {
        for (const auto& f : factorize(abs(*n)).factors) {
            candidates.insert(f.prime);
        }
    }
    std::vector<Integer> ramified;
    for (const auto& p : candidates) {
        if (hilbert_local(a, b, Place::prime(p)) == -1) {
            ramified.push_back(p);
        }
    }
    return RamSet(std::move(ramified), hilbert_local(a, b, Place::infinity()) == -1);
}

bool admits_embedding(const RamSet& algebra, const QuadField& field)
{
    if (algebra.at_infinity() && infinite_place_splits(field)) {
        return false;
    }
    return std::none_of(algebra.finite_primes().begin(), algebra.finite_primes().end(),
                        [&](const Integer& p) { return splitting(field, p) == SplitType::Split; });
}

bool is_isomorphic(const RamSet& lhs, const RamSet& rhs)
{
    return lhs == rhs;
}

Coarea coarea_rational(const RamSet& algebra)
{
    if (!algebra.indefinite()) {
        throw DomainError("algebra " + algebra.name() + " is ramified at infinity; no Fuchsian group");
    }
    Integer product = 1;
    for (const auto& p : algebra.finite_primes()) {
        product *= p - 1;
    }
    Coarea c;
    c.pi_multiple = mpq_class(product, 3);
    c.pi_multiple.canonicalize();
    c.value = static_cast<double>(std::numbers::pi_v<long double>
                                  * static_cast<long double>(product.get_d()) / 3.0L);
    return c;
}

double coarea_general(unsigned n_k, const Integer& d_k, double zeta_k2,
                      const std::vector<Integer>& prime_norms)
{
    if (n_k < 1 || d_k < 1) {
        throw DomainError("coarea_general requires n_k >= 1 and d_k >= 1");
    }
    if (!(zeta_k2 > 1.0)) {
        throw DomainError("zeta_k(2) must exceed 1");
    }
    long double product = 1.0L;
    for (const auto& norm : prime_norms) {
        const auto f = factorize(norm);
        if (f.factors.size() != 1) {
            throw DomainError(norm.get_str() + " is not a prime power");
        }
        product *= static_cast<long double>(Integer(norm - 1).get_d());
    }
    constexpr long double pi = std::numbers::pi_v<long double>;
    const long double dk = static_cast<long double>(d_k.get_d());
    const long double scale = std::pow(4.0L * pi * pi, static_cast<long double>(n_k));
    return static_cast<double>(8.0L * pi * std::pow(dk, 1.5L) * zeta_k2 / scale * product);
}

bool is_fundamental_discriminant(const Integer& D)
{
    if (D <= 1) {
        return false;
    }
    const unsigned long r = residue(D, 4);
    if (r == 1) {
        return squarefree_part(D).cofactor == 1;
    }
    if (r == 0) {
        const Integer m = D / 4;
        const unsigned long rm = residue(m, 4);
        return (rm == 2 || rm == 3) && squarefree_part(m).cofactor == 1;
    }
    return false;
}

double zeta_k2_real_quadratic(const Integer& D)
{
    if (!is_fundamental_discriminant(D)) {
        throw DomainError(D.get_str() + " is not a positive fundamental discriminant");
    }
    if (!D.fits_ulong_p() || D > 10'000'000) {
        throw ResourceLimit("discriminant too large for the direct L(2, chi) series");
    }
    const unsigned long period = D.get_ui();
    std::vector<int> chi(period);
    for (unsigned long a = 0; a < period; ++a) {
        chi[a] = mpz_kronecker_ui(D.get_mpz_t(), a);
    }
    // chi has period D and sums to zero over a period, so with N a multiple of
    // D the tail beyond N is bounded by (D/2) / (N+1)^2 via partial summation.
    constexpr long double target = 1e-12L;
    const long double periods_needed =
        std::ceil(std::sqrt(static_cast<long double>(period) / (2.0L * target)) / period);
    const auto n_terms = static_cast<unsigned long>(periods_needed) * period;

    // Kahan summation.
    long double sum = 0.0L, carry = 0.0L;
    for (unsigned long n = 1; n <= n_terms; ++n) {
        const int c = chi[n % period];
        if (c == 0) {
            continue;
        }
        const long double nn = static_cast<long double>(n);
        const long double term = c / (nn * nn) - carry;
        const long double next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    constexpr long double zeta2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 6.0L;
    return static_cast<double>(zeta2 * sum);
}

} // namespace geocensus
