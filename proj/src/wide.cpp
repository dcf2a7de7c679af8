#include "skewlab/wide.hpp"

#include <algorithm>

namespace skewlab {

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    std::string out;
    while (u > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

i128 parse_i128(const std::string& s) {
    if (s.empty()) throw ArithmeticError("empty integer literal");
    size_t pos = 0;
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') {
        neg = s[pos] == '-';
        ++pos;
    }
    if (pos == s.size()) throw ArithmeticError("bad integer literal: " + s);
    // accumulate with the final sign so the most negative value parses too
    i128 v = 0;
    for (; pos < s.size(); ++pos) {
        if (s[pos] < '0' || s[pos] > '9') throw ArithmeticError("bad integer literal: " + s);
        i128 digit = s[pos] - '0';
        v = neg ? checked_sub(checked_mul(v, 10), digit) : checked_add(checked_mul(v, 10), digit);
    }
    return v;
}

}  // namespace skewlab
