#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geocensus/integer.hpp"
#include "geocensus/quad_field.hpp"

namespace geocensus {

/// A place of Q: a finite prime or the real place.
class Place {
public:
    static Place infinity() { return Place(Integer(0)); }
    static Place prime(const Integer& p); // throws DomainError if p is not prime

    bool is_infinite() const noexcept { return p_ == 0; }
    const Integer& prime() const noexcept { return p_; }
    std::string name() const { return is_infinite() ? "inf" : p_.get_str(); }

private:
    explicit Place(Integer p) : p_(std::move(p)) {}
    Integer p_;
};

/// Ramification set of a quaternion algebra over Q. Determines the algebra up
/// to isomorphism. Finite primes are kept sorted and distinct, and the total
/// number of ramified places is even.
class RamSet {
public:
    RamSet() = default;
    /// Sorts `finite_primes`; throws DomainError on duplicates, non-primes or
    /// odd total cardinality.
    RamSet(std::vector<Integer> finite_primes, bool at_infinity);

    const std::vector<Integer>& finite_primes() const noexcept { return primes_; }
    bool at_infinity() const noexcept { return at_infinity_; }
    bool empty() const noexcept { return primes_.empty() && !at_infinity_; }
    bool indefinite() const noexcept { return !at_infinity_; }
    std::string name() const; // "{3,17}", "{2,inf}", "{}"

    bool operator==(const RamSet&) const = default;

private:
    std::vector<Integer> primes_;
    bool at_infinity_ = false;
};

/// Coarea of Gamma_O as an exact rational multiple of pi plus its float value.
struct Coarea {
    mpq_class pi_multiple;
    double value = 0.0;

    std::string symbolic() const; // "32*pi/3"
};

struct AlgebraClass {
    RamSet ram;
    bool is_division = false;
    std::optional<Coarea> coarea; // indefinite algebras only

    static AlgebraClass from(RamSet ram);
};

/// Local Hilbert symbol (a, b) at the place: +1 iff a x^2 + b y^2 = z^2 has a
/// nontrivial solution there.
int hilbert_local(const Integer& a, const Integer& b, const Place& place);

/// The algebra (a, b / Q), returned as its ramification set.
RamSet from_hilbert(const Integer& a, const Integer& b);

/// A quadratic field L embeds in B iff no place ramified in B splits in L.
bool admits_embedding(const RamSet& algebra, const QuadField& field);

bool is_isomorphic(const RamSet& lhs, const RamSet& rhs);

/// (pi/3) * prod (p - 1) over the finite ramified primes. Definite algebras
/// carry no Fuchsian group and are rejected.
Coarea coarea_rational(const RamSet& algebra);

/// 8 pi d_k^(3/2) zeta_k(2) / (4 pi^2)^(n_k) * prod (N(p) - 1).
double coarea_general(unsigned n_k, const Integer& d_k, double zeta_k2,
                      const std::vector<Integer>& prime_norms);

/// zeta_k(2) for k = Q(sqrt(D)), D a positive fundamental discriminant,
/// computed as zeta(2) L(2, chi_D) with an absolute error below 1e-11.
double zeta_k2_real_quadratic(const Integer& D);

/// True iff D is the discriminant of a real quadratic field.
bool is_fundamental_discriminant(const Integer& D);

} // namespace geocensus
