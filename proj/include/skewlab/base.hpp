#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "skewlab/errors.hpp"
#include "skewlab/prf.hpp"
#include "skewlab/wide.hpp"

namespace skewlab {

// Point on the circle as an unsigned 128-bit fixed-point fraction in [0,1).
// Addition wraps mod 2^128, i.e. exactly mod 1; orbits are bit-reproducible.
struct CirclePoint {
    u128 frac = 0;

    CirclePoint operator+(CirclePoint o) const { return {frac + o.frac}; }
    bool operator<(CirclePoint o) const { return frac < o.frac; }
    bool operator==(CirclePoint o) const { return frac == o.frac; }

    // Fixed-point truncation of (sqrt(5)-1)/2 to 128 bits.
    static CirclePoint golden();
};

// The base measure-preserving system driving the skew product. Two families:
//  - walk: the aperiodic lazy walk with step law (1/4, 1/2, 1/4) on {-1,0,+1},
//    whose coordinate cocycle satisfies the classical lattice LCLT with
//    sigma^2 = 1/2. This is the canonical base: all golden-value checks
//    assume it.
//  - rotation: circle rotation by alpha with a piecewise-constant integer
//    step function. No LLT guarantee; retained for exploration and flagged
//    as such in reports.
struct BaseKind {
    enum class Family { Walk, Rotation };

    Family family = Family::Walk;
    CirclePoint alpha;
    std::vector<CirclePoint> breakpoints;  // segment starts, breakpoints[0] == 0
    std::vector<long long> step_values;    // value on [breakpoints[i], breakpoints[i+1])

    static BaseKind walk();
    // Checks exactly (in integer arithmetic) that the step function has
    // Lebesgue mean zero; throws std::invalid_argument otherwise.
    static BaseKind rotation(CirclePoint alpha, std::vector<CirclePoint> breakpoints,
                             std::vector<long long> step_values);

    long long rotation_step(CirclePoint y) const;
};

// A sampled base point with its streaming cocycle state. The coordinate
// stream is a pure function of (master seed, id, stream offset, index), so
// replaying from scratch reproduces every checkpoint bit-for-bit.
class BasePoint {
  public:
    BasePoint(BaseKind kind, std::uint64_t master_seed, std::uint64_t id,
              long long stream_offset = 0);

    // Birkhoff sum f_n = sum_{k=0}^{n-1} step(R^k y). Streams from the
    // nearest earlier checkpoint; records a checkpoint at n and every 2^20
    // steps along the way.
    long long birkhoff(long long n);

    // f_n for each requested time; times strictly increasing, all >= 0.
    std::vector<long long> birkhoff_at(const std::vector<long long>& times);

    long long g(long long n) { return 2 * birkhoff(n); }

    // The point R^n y: same stream shifted by n, fresh checkpoints.
    BasePoint shifted(long long n) const;

    // Auxiliary uniform in [0,1) for eta-thinning, derived from the seed.
    double aux_uniform() const;

    void set_budget(long long max_steps) { budget_ = max_steps; }
    long long budget() const { return budget_; }

    const BaseKind& kind() const { return kind_; }
    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t id() const { return id_; }
    long long stream_offset() const { return offset_; }
    const std::map<long long, long long>& checkpoints() const { return checkpoints_; }

    // Raw coordinate of the driving stream at absolute index k.
    long long step_at(long long k) const;

  private:
    BaseKind kind_;
    std::uint64_t seed_;
    std::uint64_t id_;
    long long offset_;
    std::uint64_t key_;
    CirclePoint y0_;
    long long budget_ = 20'000'000'000LL;
    std::map<long long, long long> checkpoints_;  // n -> f_n; always holds {0, 0}
};

BasePoint sample_point(const BaseKind& kind, std::uint64_t master_seed, std::uint64_t id);

}  // namespace skewlab
