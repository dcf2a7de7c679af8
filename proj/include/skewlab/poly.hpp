#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewlab/wide.hpp"

namespace skewlab {

// Integer-coefficient polynomial, lowest degree first. Iterate schedules
// must have a positive leading coefficient and degree >= 5 (sign
// normalization); plain arithmetic helpers work for any nonzero polynomial.
class IntPoly {
  public:
    explicit IntPoly(std::vector<long long> coeffs);

    // Parses "c0+c1*n+...+ck*n^k", e.g. "n^5", "2*n^5+n", "-100*n+3".
    static IntPoly parse(const std::string& text);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    long long leading() const { return coeffs_.back(); }
    const std::vector<long long>& coeffs() const { return coeffs_; }

    // Exact evaluation by Horner's scheme; throws ArithmeticError on overflow.
    i128 eval(i128 n) const;

    // Forward difference q(n) = p(n+1) - p(n).
    IntPoly difference() const;

    IntPoly scaled(long long c) const;
    IntPoly operator-(const IntPoly& other) const;

    std::string to_string() const;

  private:
    std::vector<long long> coeffs_;  // never empty, leading coeff nonzero (unless zero poly)
};

// Least N >= 1 such that p(n) > 0 for all n >= N. Finite scan plus recursive
// difference positivity; requires a positive leading coefficient.
long long positivity_threshold(const IntPoly& p);

// Least N1 >= 1 such that p is strictly increasing and positive on [N1, inf).
long long monotone_threshold(const IntPoly& p);

// Least M1 such that 2*q(n) >= a_t*((n+1)^t - n^t) for all n >= M1, with
// q the forward difference. This is the scan-certified constant behind the
// gap lower bound p(n+k) - p(n) >= a_t * t * n^{t/2} * k^{t/2}.
long long gap_bound_threshold(const IntPoly& p);

// a_t * t * n^{t/2} * k^{t/2}; requires n >= gap_bound_threshold(p), k >= 1.
double gap_lower_bound(const IntPoly& p, long long n, long long k);

// i-th element of the fixed enumeration of Z \ {0}:
// l_i = (-1)^(i-1) * floor((i+1)/2), a bijection N -> Z \ {0}.
long long l_enumerate(long long i);

}  // namespace skewlab
