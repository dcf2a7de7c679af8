#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "skewlab/perm.hpp"

using namespace skewlab;

namespace {

// Frozen regression vector, computed by an independent reimplementation of
// the keyed stream (seed 42, point id 0, walk base, M = 2, H = 8):
//   g_{n^5}:     4, 6, 24, 28, -48, 38, 156, -40   (n = 2..9)
//   g_{2 n^5}:   2, 24, 92, -34, 20, 222, -32, -20
const std::vector<long long> kG1 = {4, 6, 24, 28, -48, 38, 156, -40};
const std::vector<long long> kG2 = {2, 24, 92, -34, 20, 222, -32, -20};

std::shared_ptr<const PermTables> frozen_tables(const FSet& f = FSet::none()) {
    BasePoint y = sample_point(BaseKind::walk(), 42, 0);
    return build_perm_tables(y, IntPoly::parse("n^5"), IntPoly::parse("2*n^5"), 2, 8, f);
}

}  // namespace

TEST_CASE("forward tables match the frozen stream oracle") {
    auto t = frozen_tables();
    CHECK(t->forward1.values == kG1);
    CHECK(t->forward2.values == kG2);
    for (long long n = 2; n <= 9; ++n) {
        CHECK(t->g1(n) == kG1[n - 2]);
        CHECK(t->g2(n) == kG2[n - 2]);
        CHECK(t->g1(n) % 2 == 0);
        CHECK(t->g2(n) % 2 == 0);
    }
    // inverse lookup: value -> 1-based slot
    for (long long i = 1; i <= 8; ++i) CHECK(t->forward1.inverse.at(kG1[i - 1]) == i);
}

TEST_CASE("certification failures carry their witnesses") {
    // stream oracle: point id 2 (seed 42) hits g = 0 at slot 3 (n = 4);
    // point id 4 collides with g = 6 at slots 1 and 2.
    BasePoint z = sample_point(BaseKind::walk(), 42, 2);
    try {
        build_forward(z, IntPoly::parse("n^5"), 2, 8);
        CHECK(false);
    } catch (const CertificationFailure& e) {
        CHECK(e.kind == CertificationFailure::Kind::ZeroValue);
        CHECK(e.index_a == 3);
    }
    BasePoint y = sample_point(BaseKind::walk(), 42, 4);
    try {
        build_forward(y, IntPoly::parse("n^5"), 2, 8);
        CHECK(false);
    } catch (const CertificationFailure& e) {
        CHECK(e.kind == CertificationFailure::Kind::Collision);
        CHECK(e.index_a == 1);
        CHECK(e.index_b == 2);
    }
}

TEST_CASE("leftover prefix: values disjoint from the forward table") {
    auto t = frozen_tables();
    CHECK(t->leftover1.resolved.size() == 8);
    long long prev_j = 0;
    for (const auto& entry : t->leftover1.resolved) {
        CHECK(entry.j > prev_j);
        prev_j = entry.j;
        CHECK(entry.value == l_enumerate(entry.j));
        CHECK(t->forward1.inverse.find(entry.value) == t->forward1.inverse.end());
        CHECK(entry.unconditional == (entry.value % 2 != 0));
    }
    // first few leftovers for g1 = {4,6,24,28,-48,38,156,-40}: l = 1,-1,2,-2,...
    CHECK(t->leftover1.resolved[0].value == 1);
    CHECK(t->leftover1.resolved[1].value == -1);
    CHECK(t->leftover1.resolved[2].value == 2);
    CHECK(t->leftover1.resolved[0].unconditional);
    CHECK_FALSE(t->leftover1.resolved[2].unconditional);
    CHECK(t->leftover1.position_of(1).value() == 1);
    CHECK_FALSE(t->leftover1.position_of(4).has_value());
}

TEST_CASE("pi_p case table") {
    auto t = frozen_tables();
    CHECK(pi_p_apply(t->forward1, t->leftover1, 0).value() == 0);
    for (long long i = 1; i <= 8; ++i)
        CHECK(pi_p_apply(t->forward1, t->leftover1, i).value() == kG1[i - 1]);
    for (long long i = 1; i <= 8; ++i)
        CHECK(pi_p_apply(t->forward1, t->leftover1, -i).value() ==
              t->leftover1.resolved[i - 1].value);
    CHECK_FALSE(pi_p_apply(t->forward1, t->leftover1, 9).has_value());
    CHECK_FALSE(pi_p_apply(t->forward1, t->leftover1, -9).has_value());
}

TEST_CASE("pi_y maps the p2 orbit onto the p1 orbit") {
    auto t = frozen_tables();
    CHECK(pi_y_apply(*t, 0).value() == 0);
    for (long long n = 2; n <= 9; ++n) CHECK(pi_y_apply(*t, t->g2(n)).value() == t->g1(n));
    for (size_t i = 0; i < t->leftover2.resolved.size(); ++i)
        CHECK(pi_y_apply(*t, t->leftover2.resolved[i].value).value() ==
              t->leftover1.resolved[i].value);
    CHECK_FALSE(pi_y_apply(*t, 999999).has_value());
}

TEST_CASE("pi_y as a Permutation is injective where defined") {
    auto t = frozen_tables();
    std::map<long long, long long> image;
    for (long long q = -500; q <= 500; ++q) {
        auto r = pi_y_apply(*t, q);
        if (!r) continue;
        CHECK(image.emplace(*r, q).second);
    }
}

TEST_CASE("psi chain: pinned read semantics") {
    FSet f = FSet::list({3, 7});  // inside [2, 9]
    auto t = frozen_tables(f);
    OmegaOracle w(42, 1000);
    IndexChain psi = psi_chain(t);

    // q = 0 is transparent
    CHECK(psi.read(w, 0).as_int() == w.bit(0));
    for (long long n = 2; n <= 9; ++n) {
        int expected = f.contains(n) ? 1 - w.bit(t->g1(n)) : w.bit(t->g1(n));
        CHECK(psi.read(w, t->g2(n)).as_int() == expected);
    }
}

TEST_CASE("psi chain agrees with the direct case-table evaluation") {
    auto t = frozen_tables(FSet::list({4, 8}));
    OmegaOracle w(42, 2000);
    IndexChain psi = psi_chain(t);
    PartialReader base = [&w](i128 r) -> std::optional<int> { return w.bit(r); };
    for (long long q = -300; q <= 300; ++q) {
        BitResult via_chain = psi.read(w, q);
        std::optional<int> via_direct = psi_direct_read(*t, base, q);
        CHECK(via_chain.decided() == via_direct.has_value());
        if (via_direct) CHECK(via_chain.as_int() == *via_direct);
    }
}

TEST_CASE("psi inverse: chain and direct agree, and cancel psi") {
    auto t = frozen_tables(FSet::list({4, 8}));
    OmegaOracle w(42, 3000);
    IndexChain psi = psi_chain(t);
    IndexChain inv = psi_inverse_chain(t);
    IndexChain round = psi.then(inv);
    PartialReader base = [&w](i128 r) -> std::optional<int> { return w.bit(r); };
    for (long long q = -300; q <= 300; ++q) {
        BitResult id = round.read(w, q);
        if (id.decided()) CHECK(id.as_int() == w.bit(q));
        BitResult via_chain = inv.read(w, q);
        std::optional<int> via_direct = psi_inverse_direct_read(*t, base, q);
        CHECK(via_chain.decided() == via_direct.has_value());
        if (via_direct) CHECK(via_chain.as_int() == *via_direct);
    }
}

TEST_CASE("tables audit dump parses and carries Q_y") {
    FSet f = FSet::list({3, 7});
    auto t = frozen_tables(f);
    CHECK(t->q_values.count(t->g1(3)) == 1);
    CHECK(t->q_values.count(t->g1(7)) == 1);
    CHECK(t->q_values.size() == 2);
    nlohmann::json j = nlohmann::json::parse(tables_to_json(*t));
    CHECK(j["M"] == 2);
    CHECK(j["H"] == 8);
}
