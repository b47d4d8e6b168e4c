#pragma once

#include <cstdint>
#include <string>

#include "distcsp/error.hpp"

namespace distcsp {

using Offset = std::int64_t;

inline Offset checked_add(Offset a, Offset b) {
    Offset r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
    return r;
}

inline Offset checked_sub(Offset a, Offset b) {
    Offset r;
    if (__builtin_sub_overflow(a, b, &r))
        throw OverflowError("integer overflow in " + std::to_string(a) + " - " + std::to_string(b));
    return r;
}

inline Offset checked_mul(Offset a, Offset b) {
    Offset r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
    return r;
}

inline Offset checked_neg(Offset a) { return checked_sub(0, a); }

/// Floor division and the matching non-negative remainder.
inline Offset floor_div(Offset a, Offset b) {
    Offset q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline Offset floor_mod(Offset a, Offset b) {
    Offset r = a % b;
    if (r < 0)
        r += (b < 0 ? -b : b);
    return r;
}

} // namespace distcsp
