#include "skewlab/base.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>

namespace skewlab {

namespace {

constexpr long long kCheckpointSpacing = 1 << 20;

mpz_class u128_to_mpz(u128 v) {
    mpz_class hi(static_cast<unsigned long>(v >> 64));
    mpz_class lo(static_cast<unsigned long>(v & ~std::uint64_t(0)));
    return (hi << 64) + lo;
}

}  // namespace

CirclePoint CirclePoint::golden() {
    // floor(((sqrt(5)-1)/2) * 2^128)
    return {(static_cast<u128>(0x9e3779b97f4a7c15ULL) << 64) | 0xf39cc0605cedc834ULL};
}

BaseKind BaseKind::walk() {
    BaseKind k;
    k.family = Family::Walk;
    return k;
}

BaseKind BaseKind::rotation(CirclePoint alpha, std::vector<CirclePoint> breakpoints,
                            std::vector<long long> step_values) {
    if (breakpoints.empty() || breakpoints.size() != step_values.size())
        throw std::invalid_argument("rotation: need one step value per breakpoint");
    if (breakpoints.front().frac != 0)
        throw std::invalid_argument("rotation: first breakpoint must be 0");
    if (!std::is_sorted(breakpoints.begin(), breakpoints.end()))
        throw std::invalid_argument("rotation: breakpoints must be sorted");
    if (alpha.frac == 0) throw std::invalid_argument("rotation: alpha must be nonzero");

    // Exact mean-zero check: sum of value_i * segment_length_i over the full
    // circle (total length 2^128) must vanish.
    mpz_class mean = 0;
    for (size_t i = 0; i < breakpoints.size(); ++i) {
        u128 end = (i + 1 < breakpoints.size()) ? breakpoints[i + 1].frac : 0;
        u128 len = end - breakpoints[i].frac;  // wraps correctly for the last segment
        mpz_class seg = (len == 0 && breakpoints.size() == 1) ? (mpz_class(1) << 128)
                                                              : u128_to_mpz(len);
        mean += mpz_class(static_cast<long>(step_values[i])) * seg;
    }
    if (mean != 0) throw std::invalid_argument("rotation: step function mean is not zero");

    BaseKind k;
    k.family = Family::Rotation;
    k.alpha = alpha;
    k.breakpoints = std::move(breakpoints);
    k.step_values = std::move(step_values);
    return k;
}

long long BaseKind::rotation_step(CirclePoint y) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), y);
    size_t idx = static_cast<size_t>(it - breakpoints.begin()) - 1;
    return step_values[idx];
}

BasePoint::BasePoint(BaseKind kind, std::uint64_t master_seed, std::uint64_t id,
                     long long stream_offset)
    : kind_(std::move(kind)), seed_(master_seed), id_(id), offset_(stream_offset) {
    key_ = prf::stream_key(seed_, id_, /*tag=*/0x626173/* "bas" */);
    if (kind_.family == BaseKind::Family::Rotation) {
        u128 hi = prf::at(key_, ~std::uint64_t(0));
        u128 lo = prf::at(key_, ~std::uint64_t(0) - 1);
        y0_ = CirclePoint{(hi << 64) | lo};
    }
    checkpoints_[0] = 0;
}

long long BasePoint::step_at(long long k) const {
    const long long abs_index = offset_ + k;
    if (kind_.family == BaseKind::Family::Walk) {
        std::uint64_t w = prf::at(key_, static_cast<std::uint64_t>(abs_index));
        // two fair bits -> step law (1/4, 1/2, 1/4) on {-1, 0, +1}
        return static_cast<long long>((w & 1) + ((w >> 1) & 1)) - 1;
    }
    CirclePoint y{y0_.frac + static_cast<u128>(abs_index) * kind_.alpha.frac};
    return kind_.rotation_step(y);
}

long long BasePoint::birkhoff(long long n) {
    if (n < 0) throw std::invalid_argument("birkhoff: n >= 0 required");
    if (n > budget_) throw BudgetError("birkhoff: time " + std::to_string(n) +
                                       " exceeds budget " + std::to_string(budget_));
    auto it = checkpoints_.upper_bound(n);
    --it;  // nearest checkpoint <= n (0 always present)
    long long pos = it->first;
    long long sum = it->second;
    if (pos == n) return sum;

    const std::uint64_t key = key_;
    if (kind_.family == BaseKind::Family::Walk) {
        const std::uint64_t base = static_cast<std::uint64_t>(offset_);
        long long next_cp = (pos / kCheckpointSpacing + 1) * kCheckpointSpacing;
        while (pos < n) {
            long long stop = std::min(n, next_cp);
            for (long long k = pos; k < stop; ++k) {
                std::uint64_t w = prf::mix64(key + (base + static_cast<std::uint64_t>(k)) * prf::kGolden);
                sum += static_cast<long long>((w & 1) + ((w >> 1) & 1)) - 1;
            }
            pos = stop;
            if (pos == next_cp) {
                checkpoints_[pos] = sum;
                next_cp += kCheckpointSpacing;
            }
        }
    } else {
        long long next_cp = (pos / kCheckpointSpacing + 1) * kCheckpointSpacing;
        while (pos < n) {
            long long stop = std::min(n, next_cp);
            for (long long k = pos; k < stop; ++k) sum += step_at(k);
            pos = stop;
            if (pos == next_cp) {
                checkpoints_[pos] = sum;
                next_cp += kCheckpointSpacing;
            }
        }
    }
    checkpoints_[n] = sum;
    return sum;
}

std::vector<long long> BasePoint::birkhoff_at(const std::vector<long long>& times) {
    for (size_t i = 0; i + 1 < times.size(); ++i)
        if (times[i] >= times[i + 1])
            throw std::invalid_argument("birkhoff_at: times must be strictly increasing");
    if (!times.empty() && times.front() < 0)
        throw std::invalid_argument("birkhoff_at: times must be >= 0");
    std::vector<long long> out;
    out.reserve(times.size());
    for (long long n : times) out.push_back(birkhoff(n));
    return out;
}

BasePoint BasePoint::shifted(long long n) const {
    BasePoint p(kind_, seed_, id_, offset_ + n);
    p.budget_ = budget_;
    return p;
}

double BasePoint::aux_uniform() const {
    return prf::to_unit(prf::stream_key(seed_, id_, /*tag=*/0x657461/* "eta" */ ^
                                                     static_cast<std::uint64_t>(offset_)));
}

BasePoint sample_point(const BaseKind& kind, std::uint64_t master_seed, std::uint64_t id) {
    return BasePoint(kind, master_seed, id);
}

}  // namespace skewlab
