#pragma once

#include <string>

#include "skewlab/poly.hpp"
#include "skewlab/wide.hpp"

namespace skewlab {

// Growth functions of the gap-series experiments. Four families:
//   poly:<spec>    h(n) = p(n), integer polynomial
//   powfloor:<a>   h(n) = floor(n^a), rational a > 4
//   qlog:<s>       h(n) = floor(n^4 * log^s n), rational s > 0
//   remarkcex      h(n) = floor(n/2)^5 + (-1)^(n+1), n >= 3
// The floor of the transcendental families is certified by evaluating with
// directed rounding at >= 96 fractional bits and raising precision until the
// two directions agree.
class GrowthFn {
  public:
    enum class Kind { Polynomial, PowerFloor, QuarticLog, RemarkCounterexample };

    static GrowthFn polynomial(IntPoly p);
    static GrowthFn power_floor(long long a_num, long long a_den);
    static GrowthFn quartic_log(long long s_num, long long s_den);
    static GrowthFn remark_counterexample();

    // Parses "poly:<polyspec>", "powfloor:<a>", "qlog:<s>", "remarkcex".
    // Rational parameters accept "9/2" or plain integers.
    static GrowthFn parse(const std::string& spec);

    Kind kind() const { return kind_; }
    const IntPoly& poly() const;

    // Least n from which h is defined and the gap h(n+k)-h(n) is certified
    // positive for all k >= 1.
    long long domain_threshold() const;

    i128 eval(long long n) const;

    // h(n+k) - h(n), exact; throws if the gap is not positive.
    i128 gap(long long n, long long k) const;

    std::string to_string() const;

  private:
    GrowthFn(Kind kind, IntPoly p, long long num, long long den);

    Kind kind_;
    IntPoly poly_;
    long long exp_num_ = 0;  // a or s, as exp_num_/exp_den_
    long long exp_den_ = 1;
};

}  // namespace skewlab
