#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "skewlab/omega.hpp"

using namespace skewlab;

namespace {

// Small explicit permutation of Z with a bounded domain, for chain tests.
class MapPerm : public Permutation {
  public:
    MapPerm(std::string name, std::map<long long, long long> fwd) : name_(std::move(name)) {
        for (auto [k, v] : fwd) {
            fwd_[k] = v;
            inv_[v] = k;
        }
    }
    std::optional<i128> forward(i128 q) const override {
        if (q < -1000 || q > 1000) return std::nullopt;
        auto it = fwd_.find(static_cast<long long>(q));
        return it == fwd_.end() ? std::optional<i128>(q) : std::optional<i128>(it->second);
    }
    std::optional<i128> inverse(i128 q) const override {
        if (q < -1000 || q > 1000) return std::nullopt;
        auto it = inv_.find(static_cast<long long>(q));
        return it == inv_.end() ? std::optional<i128>(q) : std::optional<i128>(it->second);
    }
    std::string name() const override { return name_; }

  private:
    std::string name_;
    std::map<long long, long long> fwd_, inv_;
};

class IntervalSet : public CoordSet {
  public:
    IntervalSet(i128 lo, i128 hi) : lo_(lo), hi_(hi) {}
    bool contains(i128 q) const override { return q >= lo_ && q <= hi_; }
    std::string name() const override { return "interval"; }

  private:
    i128 lo_, hi_;
};

}  // namespace

TEST_CASE("omega oracle: deterministic, unbiased, huge indices") {
    OmegaOracle w(99, 1);
    OmegaOracle w2(99, 1);
    long long ones = 0;
    for (long long q = -50000; q < 50000; ++q) {
        int b = w.bit(q);
        CHECK(b == w2.bit(q));
        CHECK((b == 0 || b == 1));
        ones += b;
    }
    double p = static_cast<double>(ones) / 100000;
    CHECK(std::fabs(p - 0.5) < 4 * std::sqrt(0.25 / 100000));

    i128 far = parse_i128("123456789012345678901234567890");
    CHECK(w.bit(far) == w2.bit(far));
    CHECK(w.bit(-far) == w2.bit(-far));
    CHECK(OmegaOracle(99, 2).bit(0) >= 0);
}

TEST_CASE("shift atoms compose additively") {
    OmegaOracle w(5, 0);
    IndexChain one;
    one.shift(17);
    one.shift(-4);
    IndexChain direct;
    direct.shift(13);
    for (i128 q = -40; q <= 40; ++q) {
        CHECK(one.read(w, q).as_int() == direct.read(w, q).as_int());
        CHECK(direct.read(w, q).as_int() == w.bit(q + 13));
    }
}

TEST_CASE("flip is an involution and flips exactly on the set") {
    OmegaOracle w(5, 1);
    auto set = std::make_shared<IntervalSet>(-3, 7);
    IndexChain once, twice;
    once.flip(set);
    twice.flip(set);
    twice.flip(set);
    for (i128 q = -20; q <= 20; ++q) {
        int raw = w.bit(q);
        int flipped = once.read(w, q).as_int();
        CHECK(twice.read(w, q).as_int() == raw);
        if (q >= -3 && q <= 7)
            CHECK(flipped == 1 - raw);
        else
            CHECK(flipped == raw);
    }
}

TEST_CASE("permute atoms and inverse cancellation") {
    OmegaOracle w(5, 2);
    auto pi = std::make_shared<MapPerm>("swap", std::map<long long, long long>{{1, 4}, {4, 1}});
    IndexChain fwd;
    fwd.permute(pi, false);
    CHECK(fwd.read(w, 1).as_int() == w.bit(4));
    CHECK(fwd.read(w, 4).as_int() == w.bit(1));
    CHECK(fwd.read(w, 2).as_int() == w.bit(2));

    IndexChain cancel;
    cancel.permute(pi, false);
    cancel.permute(pi, true);
    for (i128 q = -30; q <= 30; ++q) CHECK(cancel.read(w, q).as_int() == w.bit(q));

    // outside the horizon the chain is Undecided, with a reason; as_int poisons
    BitResult far = fwd.read(w, 5000);
    CHECK(!far.decided());
    CHECK(!far.reason.empty());
    CHECK_THROWS_AS(far.as_int(), std::logic_error);
}

TEST_CASE("then() concatenates in evaluation order") {
    OmegaOracle w(5, 3);
    IndexChain a, b;
    a.shift(3);
    b.shift(7);
    IndexChain ab = a.then(b);
    for (i128 q = -10; q <= 10; ++q) CHECK(ab.read(w, q).as_int() == w.bit(q + 10));
    CHECK(ab.to_string() == "shift(3)|shift(7)");
}

TEST_CASE("cylinder indicator mass is 2^-len") {
    CylinderSpec cyl{-1, {0, 1, 0}};
    IndexChain id;
    long long hits = 0;
    const long long trials = 20000;
    for (long long i = 0; i < trials; ++i) {
        OmegaOracle w(777, static_cast<std::uint64_t>(i));
        BitResult r = cylinder_indicator(w, id, cyl);
        hits += r.as_int();
    }
    double p = static_cast<double>(hits) / trials;
    CHECK(std::fabs(p - 0.125) < 4 * std::sqrt(0.125 * 0.875 / trials));
}
