#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace geocensus {

/// Streams the primes of a closed interval [lo, hi] one segment at a time.
/// Memory is O(sqrt(hi) + segment_span).
class SegmentedSieve {
public:
    static constexpr std::size_t kDefaultSpan = std::size_t{1} << 18;

    SegmentedSieve(std::uint64_t lo, std::uint64_t hi, std::size_t segment_span = kDefaultSpan);

    // Replaces `out` with the primes of the next segment, ascending.
    // Returns false once the interval is exhausted.
    bool next(std::vector<std::uint64_t>& out);

private:
    std::uint64_t next_lo_;
    std::uint64_t hi_;
    std::size_t span_;
    bool done_ = false;
    std::vector<std::uint32_t> base_;
    std::vector<std::uint8_t> marks_;
};

/// All primes p with lo <= p <= hi, ascending. Requires 2 <= lo <= hi.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Same as primes_in_range, filtered by `keep`, with the interval split across
/// `threads` workers (0 means hardware concurrency). Segment results are
/// concatenated in interval order, so the output does not depend on scheduling.
std::vector<std::uint64_t> collect_primes_if(std::uint64_t lo, std::uint64_t hi,
                                             const std::function<bool(std::uint64_t)>& keep,
                                             unsigned threads = 0);

std::uint64_t count_primes_if(std::uint64_t lo, std::uint64_t hi,
                              const std::function<bool(std::uint64_t)>& keep,
                              unsigned threads = 0);

unsigned resolve_threads(unsigned requested) noexcept;

} // namespace geocensus
