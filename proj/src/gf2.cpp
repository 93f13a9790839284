#include "geocensus/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace geocensus::gf2 {

bool BitVector::none() const noexcept
{
    for (auto w : words_) {
        if (w != 0) {
            return false;
        }
    }
    return true;
}

std::size_t BitVector::count() const noexcept
{
    std::size_t c = 0;
    for (auto w : words_) {
        c += static_cast<std::size_t>(std::popcount(w));
    }
    return c;
}

BitVector& BitVector::operator^=(const BitVector& other) noexcept
{
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

SolveResult solve(const std::vector<BitVector>& rows, const BitVector& rhs)
{
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    if (rhs.size() != m) {
        throw std::invalid_argument("gf2::solve: rhs size mismatch");
    }
    // Each working row carries [coefficients | rhs bit | combination of input rows].
    struct Row {
        BitVector coeffs;
        bool rhs;
        BitVector combo;
    };
    std::vector<Row> work;
    work.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        BitVector combo(m);
        combo.set(i);
        work.push_back({rows[i], rhs.test(i), std::move(combo)});
    }

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && !work[p].coeffs.test(c)) {
            ++p;
        }
        if (p == m) {
            continue;
        }
        std::swap(work[p], work[r]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i != r && work[i].coeffs.test(c)) {
                work[i].coeffs ^= work[r].coeffs;
                work[i].rhs ^= work[r].rhs;
                work[i].combo ^= work[r].combo;
            }
        }
        pivot_col.push_back(c);
        ++r;
    }

    for (std::size_t i = r; i < m; ++i) {
        if (work[i].rhs) {
            return {std::nullopt, work[i].combo};
        }
    }
    BitVector x(n);
    for (std::size_t i = 0; i < r; ++i) {
        x.set(pivot_col[i], work[i].rhs);
    }
    return {x, std::nullopt};
}

std::size_t rank(std::vector<BitVector> rows)
{
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && !rows[p].test(c)) {
            ++p;
        }
        if (p == m) {
            continue;
        }
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < m; ++i) {
            if (rows[i].test(c)) {
                rows[i] ^= rows[r];
            }
        }
        ++r;
    }
    return r;
}

} // namespace geocensus::gf2
