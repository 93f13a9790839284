#include "geocensus/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "geocensus/errors.hpp"

namespace geocensus {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) noexcept
{
    auto r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r > 0 && static_cast<unsigned __int128>(r) * r > n) {
        --r;
    }
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

std::vector<std::uint32_t> small_primes(std::uint64_t limit)
{
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) {
            continue;
        }
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) {
            composite[j] = true;
        }
    }
    return out;
}

void check_interval(std::uint64_t lo, std::uint64_t hi)
{
    if (lo < 2 || lo > hi) {
        throw DomainError("prime interval requires 2 <= lo <= hi");
    }
    if (hi > (std::uint64_t{1} << 62)) {
        throw ResourceLimit("prime interval upper end is too large to sieve");
    }
}

// Splits [lo, hi] into contiguous chunks, runs `work(chunk_index, a, b)` on a pool.
template <class Work>
void run_chunks(std::uint64_t lo, std::uint64_t hi, std::size_t chunks, unsigned threads, Work&& work)
{
    const std::uint64_t width = (hi - lo) / chunks + 1;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c; (c = next.fetch_add(1)) < chunks;) {
            const std::uint64_t a = lo + c * width;
            if (a > hi) {
                continue;
            }
            const std::uint64_t b = std::min(hi, a + width - 1);
            work(c, a, b);
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
}

} // namespace

unsigned resolve_threads(unsigned requested) noexcept
{
    if (requested > 0) {
        return requested;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

SegmentedSieve::SegmentedSieve(std::uint64_t lo, std::uint64_t hi, std::size_t segment_span)
    : next_lo_(lo), hi_(hi), span_(std::max<std::size_t>(segment_span, 64))
{
    check_interval(lo, hi);
    base_ = small_primes(isqrt_u64(hi));
}

bool SegmentedSieve::next(std::vector<std::uint64_t>& out)
{
    out.clear();
    if (done_) {
        return false;
    }
    const std::uint64_t lo = next_lo_;
    const std::uint64_t hi = std::min<std::uint64_t>(hi_, lo + span_ - 1);
    marks_.assign(hi - lo + 1, 1);
    for (std::uint32_t p : base_) {
        const std::uint64_t pp = std::uint64_t{p} * p;
        if (pp > hi) {
            break;
        }
        std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
        for (std::uint64_t m = start; m <= hi; m += p) {
            marks_[m - lo] = 0;
        }
    }
    for (std::uint64_t n = lo; n <= hi; ++n) {
        if (marks_[n - lo]) {
            out.push_back(n);
        }
    }
    if (hi == hi_) {
        done_ = true;
    } else {
        next_lo_ = hi + 1;
    }
    return true;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi)
{
    SegmentedSieve sieve(lo, hi);
    std::vector<std::uint64_t> all, segment;
    while (sieve.next(segment)) {
        all.insert(all.end(), segment.begin(), segment.end());
    }
    return all;
}

std::vector<std::uint64_t> collect_primes_if(std::uint64_t lo, std::uint64_t hi,
                                             const std::function<bool(std::uint64_t)>& keep,
                                             unsigned threads)
{
    check_interval(lo, hi);
    threads = resolve_threads(threads);
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(
        4 * threads, (hi - lo) / SegmentedSieve::kDefaultSpan + 1));
    std::vector<std::vector<std::uint64_t>> parts(chunks);
    run_chunks(lo, hi, chunks, threads, [&](std::size_t c, std::uint64_t a, std::uint64_t b) {
        SegmentedSieve sieve(a, b);
        std::vector<std::uint64_t> segment;
        while (sieve.next(segment)) {
            std::copy_if(segment.begin(), segment.end(), std::back_inserter(parts[c]), keep);
        }
    });
    std::vector<std::uint64_t> merged;
    for (auto& part : parts) {
        merged.insert(merged.end(), part.begin(), part.end());
    }
    return merged;
}

std::uint64_t count_primes_if(std::uint64_t lo, std::uint64_t hi,
                              const std::function<bool(std::uint64_t)>& keep, unsigned threads)
{
    check_interval(lo, hi);
    threads = resolve_threads(threads);
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(
        4 * threads, (hi - lo) / SegmentedSieve::kDefaultSpan + 1));
    std::atomic<std::uint64_t> total{0};
    run_chunks(lo, hi, chunks, threads, [&](std::size_t, std::uint64_t a, std::uint64_t b) {
        SegmentedSieve sieve(a, b);
        std::vector<std::uint64_t> segment;
        std::uint64_t local = 0;
        while (sieve.next(segment)) {
            local += static_cast<std::uint64_t>(std::count_if(segment.begin(), segment.end(), keep));
        }
        total += local;
    });
    return total.load();
}

} // namespace geocensus
