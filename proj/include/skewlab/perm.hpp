#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "skewlab/base.hpp"
#include "skewlab/fset.hpp"
#include "skewlab/omega.hpp"
#include "skewlab/poly.hpp"

namespace skewlab {

// The sampled point fails the B-certificate at this horizon: some forward
// value is zero or two forward values collide.
struct CertificationFailure : std::runtime_error {
    enum class Kind { ZeroValue, Collision };
    Kind kind;
    long long index_a;
    long long index_b;  // second colliding index, or -1

    CertificationFailure(Kind k, long long a, long long b, const std::string& what)
        : std::runtime_error(what), kind(k), index_a(a), index_b(b) {}
};

// Horizon-bounded realization of {g_{p(n)}(y)}_{n=M}^{M+H-1}:
// values[i-1] = v_i = g_{p(M+i-1)}(y), all even, nonzero, pairwise distinct.
struct ForwardTable {
    long long M = 0;
    long long H = 0;
    std::vector<long long> values;
    std::unordered_map<long long, long long> inverse;  // value -> i (1-based)

    long long time_of(long long i) const { return M + i - 1; }
};

ForwardTable build_forward(BasePoint& point, const IntPoly& p, long long M, long long H);

// Prefix of the leftover enumeration L(y) = {j >= 1 : l_j not hit by any
// forward value}. Odd l_j carry an unconditional certificate (forward values
// are even); even l_j are certified only relative to the horizon.
struct LeftoverEntry {
    long long j = 0;           // index into the l-enumeration
    long long value = 0;       // l_j
    bool unconditional = false;  // odd value: certificate independent of horizon
};

struct LeftoverTable {
    std::vector<LeftoverEntry> resolved;  // j_1 < j_2 < ... prefix
    long long scan_bound = 0;             // largest l-index examined

    std::optional<long long> position_of(long long value) const;  // 1-based i with l_{j_i} = value
};

LeftoverTable build_leftover(const ForwardTable& forward, long long prefix_len);

// pi_{p,y}: 0 -> 0; i in [1,H] -> v_i; i <= -1 -> l_{j_{-i}}; beyond the
// horizon or the resolved prefix -> Undecided.
std::optional<long long> pi_p_apply(const ForwardTable& forward, const LeftoverTable& leftover,
                                    long long i);

struct PermTables {
    ForwardTable forward1, forward2;
    LeftoverTable leftover1, leftover2;
    FSet f;
    std::unordered_set<long long> q_values;  // Q_y = {v1_i : M+i-1 in F}
    std::vector<long long> q_times;          // the F-times within the horizon

    long long M() const { return forward1.M; }
    long long H() const { return forward1.H; }
    long long g1(long long n) const { return forward1.values[n - forward1.M]; }
    long long g2(long long n) const { return forward2.values[n - forward2.M]; }
};

// Builds both forward tables in one streaming pass over the merged sorted
// polynomial times, then the leftover prefixes and Q_y.
// leftover_prefix is the number of resolved leftover entries per table
// (0 means H); longer prefixes widen the decidable coordinate range.
std::shared_ptr<const PermTables> build_perm_tables(BasePoint& point, const IntPoly& p1,
                                                    const IntPoly& p2, long long M, long long H,
                                                    const FSet& f, long long leftover_prefix = 0);

// pi_y = pi_{p1,y} o pi_{p2,y}^{-1}: 0 -> 0, g_{p2(n)} -> g_{p1(n)},
// leftover2 values -> leftover1 values; Undecided outside the tables.
std::optional<long long> pi_y_apply(const PermTables& tables, long long q);

// Permutation handles for IndexChain use.
std::shared_ptr<const Permutation> pi_p1_handle(std::shared_ptr<const PermTables> tables);
std::shared_ptr<const Permutation> pi_p2_handle(std::shared_ptr<const PermTables> tables);
std::shared_ptr<const CoordSet> q_set_handle(std::shared_ptr<const PermTables> tables);

// The chain realization of psi_{pi_y} = phi^{Q_y} o phi_{pi_{p1,y}} o
// phi^{-1}_{pi_{p2,y}} (Step-1 factorization of R). Read semantics: at
// q = g_{p2(n)} with n in F the result is 1 - omega(g_{p1(n)}); with n not
// in F it is omega(g_{p1(n)}); at q = 0 it is omega(0).
IndexChain psi_chain(std::shared_ptr<const PermTables> tables);

// Chain of psi^{-1}: concatenating psi_chain and psi_inverse_chain yields the
// identity wherever both resolve.
IndexChain psi_inverse_chain(std::shared_ptr<const PermTables> tables);

// Direct case-table evaluation of psi and psi^{-1}, independent of the
// IndexChain machinery; the second path of the factorization cross-check.
// `reader` supplies bits of the inner sequence and may itself be partial.
using PartialReader = std::function<std::optional<int>(i128)>;

std::optional<int> psi_direct_read(const PermTables& tables, const PartialReader& reader, i128 q);
std::optional<int> psi_inverse_direct_read(const PermTables& tables, const PartialReader& reader,
                                           i128 q);

// Audit dump: {M, H, values, leftover_prefix, scan_bound, q_y_indices}.
std::string tables_to_json(const PermTables& tables);

}  // namespace skewlab
