#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geocensus/errors.hpp"
#include "geocensus/integer.hpp"
#include "geocensus/quad_field.hpp"
#include "geocensus/quaternion.hpp"
#include "geocensus/spectra.hpp"

namespace geocensus {

struct CharacterSign {
    Integer prime_disc;
    int sign = 1;
};

/// Whether only finitely many primes stay non-split in every field.
///
/// Each field's character is a product of prime-discriminant characters, so
/// the fields are vectors over GF(2). Some sign pattern makes every field
/// character -1 (and Dirichlet then supplies infinitely many inert primes)
/// unless an odd number of the vectors sum to zero.
struct FinitenessVerdict {
    bool finite = false;
    /// Finite case: indices T, |T| odd, with prod_{i in T} disc_i a square.
    std::vector<std::size_t> relation;
    /// Infinite case: a value for every basis character (prime discriminants,
    /// with -8 written as -4 times 8) sending each field character to -1.
    std::vector<CharacterSign> signs;

    /// Re-checks the witness against the fields by direct arithmetic.
    bool verify(std::span<const QuadField> fields) const;
};

/// Raised when an operation needs a finite census but the fields leave
/// infinitely many primes non-split.
class InfiniteCensus : public DomainError {
public:
    explicit InfiniteCensus(FinitenessVerdict verdict)
        : DomainError("infinitely many primes are non-split in every field; the census is infinite"),
          verdict_(std::move(verdict))
    {
    }
    const char* kind() const noexcept override { return "InfiniteCensus"; }
    const FinitenessVerdict& verdict() const noexcept { return verdict_; }

private:
    FinitenessVerdict verdict_;
};

struct CensusReport {
    std::vector<QuadField> fields;
    FinitenessVerdict verdict;
    std::vector<Integer> nonsplit_primes;
    std::vector<AlgebraClass> classes; // ascending coarea
    std::uint64_t count_total = 0;
    std::uint64_t count_division = 0;
    std::uint64_t eventual_pi = 0;
};

struct CensusOptions {
    unsigned threads = 0; // 0: hardware concurrency
    bool list_classes = true;
};

struct PiResult {
    std::uint64_t value = 0;
    std::vector<AlgebraClass> classes; // empty unless list_classes
    bool finite_census = false;
    std::size_t pool_size = 0;
};

struct IntervalDelta {
    std::uint64_t delta = 0;
    double bound = 0.0;
    std::uint64_t pi_lower = 0;
    std::uint64_t pi_upper = 0;
    double theta = 0.0;        // 8/3 if r = 1, else 1/2^r
    double window_floor = 0.0; // V^(1 - theta); the growth claim needs W above this (times V^eps)
};

struct Family {
    unsigned n = 0;
    std::vector<Integer> primes; // p_1, ..., p_m
    std::vector<QuadField> fields;
    CensusReport report;
};

struct ConditionCheck {
    bool holds = false;
    std::optional<Integer> witness_prime;
    std::string detail;
};

struct SelectivityVerdict {
    bool selective_possible = false;
    ConditionCheck integral_domain;      // condition (1)
    ConditionCheck unramified_match;     // condition (2)
    ConditionCheck discriminant_split;   // condition (3)
    int violated_condition = 0;          // 0 if none
    std::optional<Integer> certificate_prime;

    /// The certificate prime ramifies in L (or B), so condition (2) cannot hold.
    bool verify(const RamSet& algebra, const QuadOrder& order) const;
};

struct ChebotarevResult {
    std::uint64_t actual = 0;
    double predicted = 0.0;
    double ratio = 0.0;
};

FinitenessVerdict nonsplit_is_finite(std::span<const QuadField> fields);

/// Primes non-split in every field. Throws InfiniteCensus if there are
/// infinitely many.
std::vector<Integer> nonsplit_primes(std::span<const QuadField> fields);

/// All indefinite algebras over Q admitting every field: one per even subset of
/// the non-split primes.
CensusReport count_algebras(std::span<const QuadField> fields);

/// Number of algebra classes (even subsets R of the non-split primes) with
/// (pi/3) prod_{p in R} (p - 1) < V.
PiResult pi_of_V(const SpectrumSpec& spec, double V, const CensusOptions& options = {});

/// pi(V + W) - pi(V) next to W / (2^r log V), r = |S|. Requires 0 < W < V.
IntervalDelta short_interval_delta(const SpectrumSpec& spec, double V, double W,
                                   const CensusOptions& options = {});

/// Fields L_1..L_4 whose census has exactly 2^n classes. Throws
/// SearchExhausted when a needed prime or radicand exceeds `search_bound`.
Family construct_family(unsigned n, std::uint64_t search_bound = 1'000'000);

SelectivityVerdict selectivity_check(const RamSet& algebra, const QuadOrder& order);

/// Counts primes in [X, X + Y] inert in every field against (1/2^s) Y / log X.
ChebotarevResult verify_chebotarev_interval(std::span<const QuadField> fields, std::uint64_t X,
                                            std::uint64_t Y, unsigned threads = 0);

} // namespace geocensus
