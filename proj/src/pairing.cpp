#include "compstruct/pairing.hpp"

#include <cmath>
#include <stdexcept>

namespace compstruct {

namespace {

using u128 = unsigned __int128;

u128 triangle(u128 w) { return w * (w + 1) / 2; }

} // namespace

Code encode_pair(Code a, Code b)
{
    const u128 w = u128(a) + u128(b);
    const u128 z = triangle(w) + b;
    if (z > u128(UINT64_MAX))
        throw std::overflow_error("encode_pair: code does not fit in 64 bits");
    return static_cast<Code>(z);
}

std::pair<Code, Code> decode_pair(Code z)
{
    // w = floor((sqrt(8z + 1) - 1) / 2), corrected for rounding.
    auto w = static_cast<u128>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
    while (triangle(w) > z)
        --w;
    while (triangle(w + 1) <= z)
        ++w;
    const Code b = static_cast<Code>(u128(z) - triangle(w));
    const Code a = static_cast<Code>(w - b);
    return {a, b};
}

} // namespace compstruct
