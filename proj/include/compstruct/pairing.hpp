#pragma once

#include <cstdint>
#include <utility>

namespace compstruct {

/// Element codes are natural numbers.
using Code = std::uint64_t;

/// Cantor pairing: encode_pair(a, b) = (a + b)(a + b + 1) / 2 + b.
///
/// The ordering this induces is fixed for every dump the library emits:
/// (0,0)=0, (1,0)=1, (0,1)=2, (2,0)=3, (1,1)=4, (0,2)=5, ...
/// Throws std::overflow_error when the result does not fit in 64 bits.
Code encode_pair(Code a, Code b);

/// Inverse of encode_pair.
std::pair<Code, Code> decode_pair(Code z);

inline Code pair_first(Code z) { return decode_pair(z).first; }
inline Code pair_second(Code z) { return decode_pair(z).second; }

} // namespace compstruct
