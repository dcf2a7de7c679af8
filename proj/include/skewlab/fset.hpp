#pragma once

#include <set>
#include <string>
#include <vector>

namespace skewlab {

// The flip-time set F subset of N. Families:
//   none                 empty set
//   all                  all of N
//   list:3,7,9           explicit finite list
//   dyadic               union of blocks [4^k, 2*4^k), k >= 0
//   dyadic2              union of blocks [2*2^k, 3*2^k), k >= 0
//   mod:r,m              residue class {n : n = r (mod m)}
// The dyadic families make |[1,N] \ F| / N oscillate, which is what drives
// the Cesaro divergence demo.
class FSet {
  public:
    static FSet none();
    static FSet all();
    static FSet list(std::vector<long long> values);
    static FSet dyadic();
    static FSet dyadic2();
    static FSet residue(long long r, long long m);

    static FSet parse(const std::string& spec);

    bool contains(long long n) const;

    // |[lo, hi] \ F|, exact.
    long long complement_count(long long lo, long long hi) const;

    std::string to_string() const;

  private:
    enum class Kind { None, All, List, Dyadic, Dyadic2, Residue };
    Kind kind_ = Kind::None;
    std::set<long long> values_;
    long long r_ = 0, m_ = 1;
};

}  // namespace skewlab
