#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace geocensus::gf2 {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }
    bool test(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set(std::size_t i, bool value = true) noexcept
    {
        const std::uint64_t bit = std::uint64_t{1} << (i % 64);
        words_[i / 64] = value ? (words_[i / 64] | bit) : (words_[i / 64] & ~bit);
    }
    void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
    bool none() const noexcept;
    std::size_t count() const noexcept;

    BitVector& operator^=(const BitVector& other) noexcept;
    bool operator==(const BitVector&) const = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Outcome of solving A x = b over GF(2), A given by rows.
// Exactly one of `solution` / `obstruction` is set: either x with A x = b, or
// y with y^T A = 0 and y^T b = 1.
struct SolveResult {
    std::optional<BitVector> solution;
    std::optional<BitVector> obstruction;
};

SolveResult solve(const std::vector<BitVector>& rows, const BitVector& rhs);

std::size_t rank(std::vector<BitVector> rows);

} // namespace geocensus::gf2
