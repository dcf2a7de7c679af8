#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewlab/prf.hpp"
#include "skewlab/wide.hpp"

namespace skewlab {

// Lazily evaluated point omega in {0,1}^Z. Coordinates are a keyed PRF of the
// index: O(1) access at arbitrary signed 128-bit coordinates, exact
// reproducibility, no storage.
class OmegaOracle {
  public:
    OmegaOracle(std::uint64_t master_seed, std::uint64_t omega_id)
        : key_(prf::stream_key(master_seed, omega_id, /*tag=*/0x6f6d67 /* "omg" */)) {}

    int bit(i128 q) const { return static_cast<int>(prf::at_wide(key_, q) & 1); }

  private:
    std::uint64_t key_;
};

// Horizon-bounded permutations resolve some coordinates and not others;
// Undecided is a first-class result, never an exception.
enum class TriBit { Zero, One, Undecided };

inline TriBit tri_of(int b) { return b ? TriBit::One : TriBit::Zero; }

struct BitResult {
    TriBit value = TriBit::Undecided;
    std::string reason;  // set when Undecided

    bool decided() const { return value != TriBit::Undecided; }
    int as_int() const;  // throws std::logic_error if Undecided (poisoning guard)
};

// A permutation of Z realized over a finite horizon: either direction may
// fail to resolve at a given coordinate.
class Permutation {
  public:
    virtual ~Permutation() = default;
    virtual std::optional<i128> forward(i128 q) const = 0;
    virtual std::optional<i128> inverse(i128 q) const = 0;
    virtual std::string name() const = 0;
};

class CoordSet {
  public:
    virtual ~CoordSet() = default;
    virtual bool contains(i128 q) const = 0;
    virtual std::string name() const = 0;
};

// Composable, invertible description of coordinate maps. Reading the
// composed image of omega at q traverses the atoms in list order, rewriting
// the index and accumulating a flip parity:
//   shift(k):            q -> q + k          (since (sigma^k w)(q) = w(q+k))
//   permute(pi, fwd):    q -> pi(q)          (since (phi_pi w)(q) = w(pi(q)))
//   permute(pi, inv):    q -> pi^{-1}(q)
//   flip(Q):             parity ^= [q in Q]
// Final bit = omega(final index) XOR parity.
class IndexChain {
  public:
    IndexChain() = default;

    IndexChain& shift(i128 k);
    IndexChain& permute(std::shared_ptr<const Permutation> pi, bool inverse);
    IndexChain& flip(std::shared_ptr<const CoordSet> q_set);

    IndexChain then(const IndexChain& next) const;  // concatenation
    bool empty() const { return atoms_.empty(); }

    BitResult read(const OmegaOracle& omega, i128 q) const;

    // Debug text form "shift(k)|perm(name,fwd)|flip(name)".
    std::string to_string() const;

  private:
    struct Atom {
        enum class Kind { Shift, Permute, Flip } kind;
        i128 shift_by = 0;
        std::shared_ptr<const Permutation> perm;
        bool perm_inverse = false;
        std::shared_ptr<const CoordSet> flip_set;
    };
    std::vector<Atom> atoms_;
};

// The cylinder _a[word]_{a+len-1} = {w : w(a+i) = word(i)}; nu-mass 2^{-len}.
struct CylinderSpec {
    i128 base_index = 0;
    std::vector<int> word;
};

inline int omega_read(const OmegaOracle& oracle, i128 q) { return oracle.bit(q); }

BitResult read_transformed(const OmegaOracle& oracle, const IndexChain& chain, i128 q);

// 1 iff every coordinate of the (transformed) cylinder matches; Undecided
// propagates from unresolved permutation lookups.
BitResult cylinder_indicator(const OmegaOracle& oracle, const IndexChain& chain,
                             const CylinderSpec& cyl);

}  // namespace skewlab
