#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "geocensus/integer.hpp"

namespace geocensus {

enum class SplitType { Split, Inert, Ramified };

const char* to_string(SplitType type) noexcept;

/// A real quadratic field Q(sqrt(d)) with d > 1 squarefree.
class QuadField {
public:
    /// Normalizes n > 1 to its squarefree radicand. Rejects n <= 1 and squares.
    static QuadField from_radicand(const Integer& n);

    const Integer& radicand() const noexcept { return d_; }
    /// Fundamental discriminant: d if d = 1 mod 4, else 4d.
    const Integer& disc() const noexcept { return disc_; }

    std::string name() const; // "Q(sqrt(51))"

    bool operator==(const QuadField& other) const { return d_ == other.d_; }
    std::strong_ordering operator<=>(const QuadField& other) const;

private:
    QuadField(Integer d, Integer disc) : d_(std::move(d)), disc_(std::move(disc)) {}

    Integer d_;
    Integer disc_;
};

/// A quadratic order, identified by its conductor inside a field.
class QuadOrder {
public:
    QuadOrder(QuadField field, Integer conductor);

    /// The order of discriminant `disc`; throws DomainError unless disc > 0 is
    /// a non-square discriminant (0 or 1 mod 4).
    static QuadOrder from_disc(const Integer& disc);
    static QuadOrder maximal(QuadField field) { return {std::move(field), 1}; }

    const QuadField& field() const noexcept { return field_; }
    const Integer& conductor() const noexcept { return conductor_; }
    Integer disc() const { return conductor_ * conductor_ * field_.disc(); }

    bool operator==(const QuadOrder&) const = default;

private:
    QuadField field_;
    Integer conductor_;
};

QuadField field_from_d(const Integer& n);

/// Decomposition of p in the field: Split, Inert or Ramified per (disc/p).
/// Throws DomainError when p is not prime.
SplitType splitting(const QuadField& field, const Integer& p);
/// Unchecked variant for hot loops; p must be prime.
SplitType splitting_u64(const QuadField& field, std::uint64_t p) noexcept;

/// Both embeddings of a real quadratic field are real, so the real place of Q
/// always splits.
constexpr bool infinite_place_splits(const QuadField&) noexcept { return true; }

/// The prime discriminants (-4, +-8, q* = (-1)^((q-1)/2) q) whose product is
/// disc, ascending.
std::vector<Integer> prime_disc_vector(const QuadField& field);

/// Trace of the fundamental unit of norm one in the order, i.e. the minimal
/// X >= 3 with X^2 - disc(order) Y^2 = 4 for some Y >= 1.
Integer norm_one_unit(const QuadOrder& order);

/// The order Z[lambda] with lambda^2 - t lambda + 1 = 0, of discriminant t^2 - 4.
QuadOrder order_from_lambda(const Integer& t);

} // namespace geocensus
