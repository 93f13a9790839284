#include "geocensus/quad_field.hpp"

#include <algorithm>

#include "geocensus/arith.hpp"
#include "geocensus/errors.hpp"

namespace geocensus {

namespace {

Integer fundamental_disc(const Integer& d)
{
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), d.get_mpz_t(), 4);
    return r == 1 ? d : Integer(4 * d);
}

Integer mod(const Integer& a, unsigned long m)
{
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), m);
    return r;
}

} // namespace

const char* to_string(SplitType type) noexcept
{
    switch (type) {
    case SplitType::Split:
        return "split";
    case SplitType::Inert:
        return "inert";
    case SplitType::Ramified:
        return "ramified";
    }
    return "?";
}

QuadField QuadField::from_radicand(const Integer& n)
{
    if (n <= 1) {
        throw DomainError("quadratic field radicand must exceed 1, got " + n.get_str());
    }
    if (is_perfect_square(n)) {
        throw DomainError("radicand " + n.get_str() + " is a perfect square");
    }
    Integer d = squarefree_part(n).squarefree;
    Integer disc = fundamental_disc(d);
    return {std::move(d), std::move(disc)};
}

std::string QuadField::name() const
{
    return "Q(sqrt(" + d_.get_str() + "))";
}

std::strong_ordering QuadField::operator<=>(const QuadField& other) const
{
    const int c = cmp(d_, other.d_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

QuadOrder::QuadOrder(QuadField field, Integer conductor)
    : field_(std::move(field)), conductor_(std::move(conductor))
{
    if (conductor_ < 1) {
        throw DomainError("order conductor must be >= 1");
    }
}

QuadOrder QuadOrder::from_disc(const Integer& disc)
{
    const Integer r = mod(disc, 4);
    if (disc <= 1 || is_perfect_square(disc) || (r != 0 && r != 1)) {
        throw DomainError(disc.get_str() + " is not the discriminant of a real quadratic order");
    }
    QuadField field = QuadField::from_radicand(disc);
    Integer f2 = disc / field.disc();
    if (f2 * field.disc() != disc || !is_perfect_square(f2)) {
        throw DomainError(disc.get_str() + " is not the discriminant of a real quadratic order");
    }
    return {std::move(field), isqrt(f2)};
}

QuadField field_from_d(const Integer& n)
{
    return QuadField::from_radicand(n);
}

SplitType splitting(const QuadField& field, const Integer& p)
{
    if (!is_prime(p)) {
        throw DomainError("splitting requires a prime, got " + p.get_str());
    }
    switch (kronecker(field.disc(), p)) {
    case 1:
        return SplitType::Split;
    case -1:
        return SplitType::Inert;
    default:
        return SplitType::Ramified;
    }
}

SplitType splitting_u64(const QuadField& field, std::uint64_t p) noexcept
{
    switch (mpz_kronecker_ui(field.disc().get_mpz_t(), p)) {
    case 1:
        return SplitType::Split;
    case -1:
        return SplitType::Inert;
    default:
        return SplitType::Ramified;
    }
}

std::vector<Integer> prime_disc_vector(const QuadField& field)
{
    std::vector<Integer> out;
    Integer odd_product = 1;
    for (const auto& [q, e] : factorize(abs(field.radicand())).factors) {
        if (q == 2) {
            continue;
        }
        Integer star = mod(q, 4) == 1 ? q : Integer(-q);
        odd_product *= star;
        out.push_back(std::move(star));
    }
    const Integer& disc = field.disc();
    if (disc != odd_product) {
        // disc / odd_product is one of -4, 8, -8.
        out.push_back(disc / odd_product);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Integer norm_one_unit(const QuadOrder& order)
{
    const Integer disc = order.disc();
    if (mod(disc, 4) == 0) {
        // X = 2x with x^2 - (disc/4) y^2 = 1.
        return 2 * pell_fundamental(Integer(disc / 4)).x;
    }
    // disc = 1 mod 4. The norm-one units of Z[sqrt(disc)] have index 1 or 3 in
    // those of the order, so the Pell unit is eps or eps^3 with eps fundamental.
    // tr(eps^3) = t^3 - 3t where t = tr(eps).
    const Integer pell_trace = 2 * pell_fundamental(disc).x;
    Integer t;
    mpz_root(t.get_mpz_t(), pell_trace.get_mpz_t(), 3);
    for (Integer c = t; c <= t + 2; ++c) {
        if (c >= 3 && c * c * c - 3 * c == pell_trace) {
            const Integer y2 = c * c - 4;
            if (y2 % disc == 0 && is_perfect_square(Integer(y2 / disc))) {
                return c;
            }
        }
    }
    return pell_trace;
}

QuadOrder order_from_lambda(const Integer& t)
{
    if (t < 3) {
        throw DomainError("trace " + t.get_str() + " is not hyperbolic (need t >= 3)");
    }
    return QuadOrder::from_disc(t * t - 4);
}

} // namespace geocensus
