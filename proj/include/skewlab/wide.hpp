#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace skewlab {

// 128-bit signed arithmetic with overflow detection. All polynomial values
// and fiber coordinates in an experiment must fit; overflow is a hard error,
// never silent wraparound.
using i128 = __int128;
using u128 = unsigned __int128;

struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("i128 add overflow");
    return r;
}

inline i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticError("i128 sub overflow");
    return r;
}

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("i128 mul overflow");
    return r;
}

std::string to_string(i128 v);
i128 parse_i128(const std::string& s);

inline double to_double(i128 v) { return static_cast<double>(v); }

}  // namespace skewlab
