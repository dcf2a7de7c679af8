#pragma once

#include <memory>
#include <optional>
#include <string>

#include "skewlab/base.hpp"
#include "skewlab/fset.hpp"
#include "skewlab/omega.hpp"
#include "skewlab/perm.hpp"
#include "skewlab/poly.hpp"

namespace skewlab {

// Full experiment configuration for the systems T and S on X = Y x Sigma.
struct SystemConfig {
    BaseKind base = BaseKind::walk();
    IntPoly p1 = IntPoly::parse("n^5");
    IntPoly p2 = IntPoly::parse("2*n^5");
    long long M = 2;
    long long H = 40;
    long long leftover_prefix = 0;  // resolved leftover entries per table; 0 means H
    FSet f = FSet::none();
    double eta = -1.0;  // in (0,1), or < 0 for "full" (no thinning)
    std::uint64_t master_seed = 1;
    long long samples = 200;
    long long omega_per_point = 64;
    long long budget = 20'000'000'000LL;
    int workers = 1;
    bool unsafe_degree = false;

    bool eta_full() const { return eta < 0.0; }

    // Enforces M >= both monotone thresholds and deg p1, deg p2 >= 5
    // (the latter unless unsafe_degree). Throws ConfigError.
    void validate() const;
};

enum class Certification { CertifiedB, CertifiedNotB, Rejected };

// A sampled point of X with its certification and (when certified) the
// permutation tables realizing pi_y and Q_y over [M, M+H-1].
struct PointState {
    BasePoint point;
    Certification certification = Certification::Rejected;
    std::string reject_reason;
    std::shared_ptr<const PermTables> tables;  // set iff CertifiedB
    // Raw forward values, available for certified and not-B states alike
    // (the S evaluation on the complement of B reads g_{p2(n)} directly).
    std::vector<long long> g1, g2;  // g_{p_j(M+i-1)}(y), i = 1..H
    long long M = 0, H = 0;
    double aux_uniform = 0.0;

    long long g1_at(long long n) const { return g1[n - M]; }
    long long g2_at(long long n) const { return g2[n - M]; }
};

// Horizon-relative B certification: certified-B iff both forward tables
// build cleanly over [M, M+H-1] and (eta-thinning) the point's auxiliary
// uniform u < eta. The realized B is a measurable thinning of the
// horizon-relative E-set.
PointState certify_b(BasePoint point, const SystemConfig& config);

// 1 iff T^{p1(n)}(y, omega) lands in A2 = Y x [0]_0, i.e. omega(g_{p1(n)}) = 0.
int t_pullback_bit(const PointState& state, const OmegaOracle& omega, long long n);

// 1 iff S^{p2(n)}(y, omega) lands in A2. For certified-B states this is the
// indicator {(psi_{pi_y} omega)(g_{p2(n)}) = 0}: coordinate 0 is transparent
// for psi^{-1} at the landing point, so the outer conjugation never needs
// its tables. For not-B states R is the identity at y and the bit reads
// omega(g_{p2(n)}) directly.
int s_pullback_bit(const PointState& state, const OmegaOracle& omega, long long n);

// Indicator of A1 cap T^{-p1(n)} A2 cap S^{-p2(n)} A2 at (y, omega).
int triple_indicator(const PointState& state, const OmegaOracle& omega, long long n);

// Physical coordinates the two bits read (instrumentation for the
// complement/coincidence identities).
i128 t_read_coordinate(const PointState& state, long long n);
std::optional<i128> s_read_coordinate(const PointState& state, long long n);

enum class CheckOutcome { Pass, Fail, Undecided };

// Two-path verification of S = R^{-1} o T o R at symbol coordinate q:
// the IndexChain pipeline against an independent direct case-table
// evaluation, for the n-th power. Builds tables at the landing point R^n y
// when that point is certified.
CheckOutcome conjugacy_check(PointState& state, const SystemConfig& config,
                             const OmegaOracle& omega, long long n, i128 q);

}  // namespace skewlab
