#include "skewlab/perm.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace skewlab {

ForwardTable build_forward(BasePoint& point, const IntPoly& p, long long M, long long H) {
    if (H < 1) throw std::invalid_argument("build_forward: H >= 1 required");
    if (M < monotone_threshold(p))
        throw std::invalid_argument("build_forward: M below monotone threshold of p");

    std::vector<long long> times;
    times.reserve(H);
    for (long long i = 1; i <= H; ++i) {
        i128 t = p.eval(M + i - 1);
        if (t < 0 || t > point.budget())
            throw BudgetError("build_forward: p(" + std::to_string(M + i - 1) +
                              ") outside Birkhoff budget");
        times.push_back(static_cast<long long>(t));
    }

    ForwardTable table;
    table.M = M;
    table.H = H;
    table.values.reserve(H);
    std::vector<long long> sums = point.birkhoff_at(times);
    for (long long i = 1; i <= H; ++i) {
        long long v = 2 * sums[i - 1];
        if (v == 0)
            throw CertificationFailure(CertificationFailure::Kind::ZeroValue, i, -1,
                                       "forward value v_" + std::to_string(i) + " is zero");
        auto [it, inserted] = table.inverse.emplace(v, i);
        if (!inserted)
            throw CertificationFailure(CertificationFailure::Kind::Collision, it->second, i,
                                       "forward values collide at i=" + std::to_string(it->second) +
                                           ", i'=" + std::to_string(i));
        table.values.push_back(v);
    }
    return table;
}

LeftoverTable build_leftover(const ForwardTable& forward, long long prefix_len) {
    LeftoverTable table;
    long long j = 0;
    while (static_cast<long long>(table.resolved.size()) < prefix_len) {
        ++j;
        long long v = l_enumerate(j);
        if (forward.inverse.count(v)) continue;  // hit within horizon: j not in L(y)
        table.resolved.push_back({j, v, /*unconditional=*/v % 2 != 0});
    }
    table.scan_bound = j;
    return table;
}

std::optional<long long> LeftoverTable::position_of(long long value) const {
    for (size_t i = 0; i < resolved.size(); ++i)
        if (resolved[i].value == value) return static_cast<long long>(i) + 1;
    return std::nullopt;
}

std::optional<long long> pi_p_apply(const ForwardTable& forward, const LeftoverTable& leftover,
                                    long long i) {
    if (i == 0) return 0;
    if (i >= 1) {
        if (i <= forward.H) return forward.values[i - 1];
        return std::nullopt;
    }
    long long pos = -i;
    if (pos <= static_cast<long long>(leftover.resolved.size()))
        return leftover.resolved[pos - 1].value;
    return std::nullopt;
}

std::shared_ptr<const PermTables> build_perm_tables(BasePoint& point, const IntPoly& p1,
                                                    const IntPoly& p2, long long M, long long H,
                                                    const FSet& f, long long leftover_prefix) {
    if (leftover_prefix <= 0) leftover_prefix = H;
    auto tables = std::make_shared<PermTables>();
    // One merged streaming pass over the union of both polynomials' times;
    // the per-table builds below then hit cached checkpoints.
    std::vector<long long> merged;
    merged.reserve(2 * H);
    for (long long n = M; n < M + H; ++n) {
        for (const IntPoly* p : {&p1, &p2}) {
            i128 t = p->eval(n);
            if (t < 0 || t > point.budget())
                throw BudgetError("build_perm_tables: p(" + std::to_string(n) +
                                  ") outside Birkhoff budget");
            merged.push_back(static_cast<long long>(t));
        }
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    point.birkhoff_at(merged);

    tables->forward1 = build_forward(point, p1, M, H);
    tables->forward2 = build_forward(point, p2, M, H);
    tables->leftover1 = build_leftover(tables->forward1, leftover_prefix);
    tables->leftover2 = build_leftover(tables->forward2, leftover_prefix);
    tables->f = f;
    for (long long i = 1; i <= H; ++i) {
        long long n = M + i - 1;
        if (f.contains(n)) {
            tables->q_values.insert(tables->forward1.values[i - 1]);
            tables->q_times.push_back(n);
        }
    }
    return tables;
}

std::optional<long long> pi_y_apply(const PermTables& tables, long long q) {
    if (q == 0) return 0;
    auto hit = tables.forward2.inverse.find(q);
    if (hit != tables.forward2.inverse.end())
        return tables.forward1.values[hit->second - 1];
    if (auto pos = tables.leftover2.position_of(q))
        return pi_p_apply(tables.forward1, tables.leftover1, -*pos);
    return std::nullopt;
}

namespace {

constexpr long long kIndexLimit = 1LL << 62;

bool fits_small(i128 q) { return q > -static_cast<i128>(kIndexLimit) && q < static_cast<i128>(kIndexLimit); }

class PiPermutation : public Permutation {
  public:
    PiPermutation(std::shared_ptr<const PermTables> tables, bool second, std::string name)
        : tables_(std::move(tables)), second_(second), name_(std::move(name)) {}

    std::optional<i128> forward(i128 q) const override {
        if (!fits_small(q)) return std::nullopt;
        auto r = pi_p_apply(fwd(), left(), static_cast<long long>(q));
        if (!r) return std::nullopt;
        return static_cast<i128>(*r);
    }

    std::optional<i128> inverse(i128 q) const override {
        if (!fits_small(q)) return std::nullopt;
        long long v = static_cast<long long>(q);
        if (v == 0) return i128(0);
        auto hit = fwd().inverse.find(v);
        if (hit != fwd().inverse.end()) return static_cast<i128>(hit->second);
        if (auto pos = left().position_of(v)) return static_cast<i128>(-*pos);
        return std::nullopt;
    }

    std::string name() const override { return name_; }

  private:
    const ForwardTable& fwd() const { return second_ ? tables_->forward2 : tables_->forward1; }
    const LeftoverTable& left() const {
        return second_ ? tables_->leftover2 : tables_->leftover1;
    }

    std::shared_ptr<const PermTables> tables_;
    bool second_;
    std::string name_;
};

class QSet : public CoordSet {
  public:
    explicit QSet(std::shared_ptr<const PermTables> tables) : tables_(std::move(tables)) {}

    bool contains(i128 q) const override {
        if (!fits_small(q)) return false;
        return tables_->q_values.count(static_cast<long long>(q)) > 0;
    }

    std::string name() const override { return "Q_y"; }

  private:
    std::shared_ptr<const PermTables> tables_;
};

}  // namespace

std::shared_ptr<const Permutation> pi_p1_handle(std::shared_ptr<const PermTables> tables) {
    return std::make_shared<PiPermutation>(std::move(tables), false, "pi_p1");
}

std::shared_ptr<const Permutation> pi_p2_handle(std::shared_ptr<const PermTables> tables) {
    return std::make_shared<PiPermutation>(std::move(tables), true, "pi_p2");
}

std::shared_ptr<const CoordSet> q_set_handle(std::shared_ptr<const PermTables> tables) {
    return std::make_shared<QSet>(std::move(tables));
}

IndexChain psi_chain(std::shared_ptr<const PermTables> tables) {
    // Index-rewriting order: q -> pi_{p2}^{-1}(q) -> pi_{p1}(...), then flip
    // at the rewritten (p1-side) coordinate. At q = g_{p2(n)} this reads
    // omega(g_{p1(n)}), flipped iff n is an F-time.
    IndexChain chain;
    chain.permute(pi_p2_handle(tables), /*inverse=*/true);
    chain.permute(pi_p1_handle(tables), /*inverse=*/false);
    chain.flip(q_set_handle(std::move(tables)));
    return chain;
}

IndexChain psi_inverse_chain(std::shared_ptr<const PermTables> tables) {
    IndexChain chain;
    chain.flip(q_set_handle(tables));
    chain.permute(pi_p1_handle(tables), /*inverse=*/true);
    chain.permute(pi_p2_handle(std::move(tables)), /*inverse=*/false);
    return chain;
}

std::optional<int> psi_direct_read(const PermTables& tables, const PartialReader& reader, i128 q) {
    if (q == 0) return reader(0);
    if (!fits_small(q)) return std::nullopt;
    long long v = static_cast<long long>(q);
    auto hit = tables.forward2.inverse.find(v);
    if (hit != tables.forward2.inverse.end()) {
        long long n = tables.forward2.time_of(hit->second);
        auto inner = reader(tables.forward1.values[hit->second - 1]);
        if (!inner) return std::nullopt;
        return tables.f.contains(n) ? 1 - *inner : *inner;
    }
    if (auto pos = tables.leftover2.position_of(v)) {
        auto target = pi_p_apply(tables.forward1, tables.leftover1, -*pos);
        if (!target) return std::nullopt;
        return reader(*target);  // leftover coordinates are never F-flipped
    }
    return std::nullopt;
}

std::optional<int> psi_inverse_direct_read(const PermTables& tables, const PartialReader& reader,
                                           i128 q) {
    if (q == 0) return reader(0);
    if (!fits_small(q)) return std::nullopt;
    long long v = static_cast<long long>(q);
    auto hit = tables.forward1.inverse.find(v);
    if (hit != tables.forward1.inverse.end()) {
        long long n = tables.forward1.time_of(hit->second);
        auto inner = reader(tables.forward2.values[hit->second - 1]);
        if (!inner) return std::nullopt;
        return tables.f.contains(n) ? 1 - *inner : *inner;
    }
    if (auto pos = tables.leftover1.position_of(v)) {
        auto target = pi_p_apply(tables.forward2, tables.leftover2, -*pos);
        if (!target) return std::nullopt;
        return reader(*target);
    }
    return std::nullopt;
}

std::string tables_to_json(const PermTables& tables) {
    nlohmann::json j;
    j["M"] = tables.M();
    j["H"] = tables.H();
    j["values"] = {{"p1", tables.forward1.values}, {"p2", tables.forward2.values}};
    auto leftover_json = [](const LeftoverTable& t) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& e : t.resolved)
            arr.push_back({{"j", e.j}, {"value", e.value}, {"unconditional", e.unconditional}});
        return arr;
    };
    j["leftover_prefix"] = {{"p1", leftover_json(tables.leftover1)},
                            {"p2", leftover_json(tables.leftover2)}};
    j["scan_bound"] = {{"p1", tables.leftover1.scan_bound}, {"p2", tables.leftover2.scan_bound}};
    j["q_y_indices"] = tables.q_times;
    return j.dump(2);
}

}  // namespace skewlab
