#include "geocensus/integer.hpp"

#include <cctype>

#include "geocensus/errors.hpp"

namespace geocensus {

std::uint64_t to_u64(const Integer& n)
{
    if (!fits_u64(n)) {
        throw DomainError("integer " + n.get_str() + " does not fit in 64 bits");
    }
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, n.get_mpz_t());
    return v;
}

Integer parse_integer(const std::string& text)
{
    std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    if (start == text.size()) {
        throw DomainError("expected an integer, got '" + text + "'");
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw DomainError("expected an integer, got '" + text + "'");
        }
    }
    return Integer(text[0] == '+' ? text.substr(1) : text, 10);
}

} // namespace geocensus
