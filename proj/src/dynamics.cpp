#include "skewlab/dynamics.hpp"

#include <algorithm>

#include "skewlab/errors.hpp"

namespace skewlab {

void SystemConfig::validate() const {
    if (!unsafe_degree && (p1.degree() < 5 || p2.degree() < 5))
        throw ConfigError("deg p1, deg p2 >= 5 required (use --unsafe-degree to override)");
    if (p1.leading() <= 0 || p2.leading() <= 0)
        throw ConfigError("iterate polynomials must have positive leading coefficients");
    long long t1 = monotone_threshold(p1);
    long long t2 = monotone_threshold(p2);
    if (M < std::max(t1, t2))
        throw ConfigError("M = " + std::to_string(M) + " below monotone thresholds (" +
                          std::to_string(t1) + ", " + std::to_string(t2) + ")");
    if (H < 1) throw ConfigError("H >= 1 required");
    if (!eta_full() && (eta < 0.0 || eta > 1.0)) throw ConfigError("eta must lie in [0,1] or be 'full'");
    if (samples < 1 || omega_per_point < 1) throw ConfigError("sample counts must be positive");
    if (workers < 1) throw ConfigError("workers >= 1 required");
}

PointState certify_b(BasePoint point, const SystemConfig& config) {
    point.set_budget(config.budget);
    PointState state{.point = std::move(point),
                     .certification = Certification::Rejected,
                     .reject_reason = {},
                     .tables = {},
                     .g1 = {},
                     .g2 = {},
                     .M = config.M,
                     .H = config.H,
                     .aux_uniform = 0.0};
    state.aux_uniform = state.point.aux_uniform();
    try {
        auto tables =
            build_perm_tables(state.point, config.p1, config.p2, config.M, config.H, config.f,
                              config.leftover_prefix);
        state.g1 = tables->forward1.values;
        state.g2 = tables->forward2.values;
        bool thinned_out = !config.eta_full() && state.aux_uniform >= config.eta;
        if (thinned_out) {
            state.certification = Certification::CertifiedNotB;
        } else {
            state.certification = Certification::CertifiedB;
            state.tables = std::move(tables);
        }
    } catch (const CertificationFailure&) {
        state.certification = Certification::CertifiedNotB;
        // The tables failed, but the raw g-values still exist; recompute them
        // without the distinctness requirement for the not-B evaluation path.
        state.g1.clear();
        state.g2.clear();
        for (long long n = config.M; n < config.M + config.H; ++n) {
            state.g1.push_back(state.point.g(static_cast<long long>(config.p1.eval(n))));
            state.g2.push_back(state.point.g(static_cast<long long>(config.p2.eval(n))));
        }
    } catch (const BudgetError& e) {
        state.certification = Certification::Rejected;
        state.reject_reason = e.what();
    }
    return state;
}

int t_pullback_bit(const PointState& state, const OmegaOracle& omega, long long n) {
    return omega.bit(state.g1_at(n)) == 0 ? 1 : 0;
}

int s_pullback_bit(const PointState& state, const OmegaOracle& omega, long long n) {
    if (state.certification == Certification::CertifiedB) {
        BitResult bit = psi_chain(state.tables).read(omega, state.g2_at(n));
        return bit.as_int() == 0 ? 1 : 0;  // forward branch always resolves
    }
    return omega.bit(state.g2_at(n)) == 0 ? 1 : 0;
}

int triple_indicator(const PointState& state, const OmegaOracle& omega, long long n) {
    if (state.certification != Certification::CertifiedB) return 0;
    return t_pullback_bit(state, omega, n) & s_pullback_bit(state, omega, n);
}

i128 t_read_coordinate(const PointState& state, long long n) { return state.g1_at(n); }

std::optional<i128> s_read_coordinate(const PointState& state, long long n) {
    if (state.certification != Certification::CertifiedB) return state.g2_at(n);
    // Resolve through pi_y rather than quoting g1 directly, so the identity
    // "same physical coordinate" is read off the actual table path.
    auto target = pi_y_apply(*state.tables, state.g2_at(n));
    if (!target) return std::nullopt;
    return static_cast<i128>(*target);
}

CheckOutcome conjugacy_check(PointState& state, const SystemConfig& config,
                             const OmegaOracle& omega, long long n, i128 q) {
    // Landing base point R^n y and its own certification.
    PointState landing = certify_b(state.point.shifted(n), config);
    if (landing.certification == Certification::Rejected) return CheckOutcome::Undecided;

    long long g_n = 2 * state.point.birkhoff(n);

    // Path A: composed IndexChain, outermost first.
    IndexChain chain;
    if (landing.certification == Certification::CertifiedB)
        chain = psi_inverse_chain(landing.tables);
    chain.shift(g_n);
    if (state.certification == Certification::CertifiedB)
        chain = chain.then(psi_chain(state.tables));
    BitResult via_chain = chain.read(omega, q);

    // Path B: direct case-table evaluation, nested functionally.
    PartialReader base = [&omega](i128 r) -> std::optional<int> { return omega.bit(r); };
    PartialReader after_r = base;
    if (state.certification == Certification::CertifiedB) {
        const PermTables& t = *state.tables;
        after_r = [&t, base](i128 r) { return psi_direct_read(t, base, r); };
    }
    PartialReader after_shift = [after_r, g_n](i128 r) {
        return after_r(checked_add(r, static_cast<i128>(g_n)));
    };
    std::optional<int> via_direct;
    if (landing.certification == Certification::CertifiedB)
        via_direct = psi_inverse_direct_read(*landing.tables, after_shift, q);
    else
        via_direct = after_shift(q);

    if (!via_chain.decided() || !via_direct) {
        // Both routes must agree on undecidability as well.
        if (via_chain.decided() != via_direct.has_value()) return CheckOutcome::Fail;
        return CheckOutcome::Undecided;
    }
    return via_chain.as_int() == *via_direct ? CheckOutcome::Pass : CheckOutcome::Fail;
}

}  // namespace skewlab
