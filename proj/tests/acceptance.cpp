// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Statistical checks run on fixed seeds, so results are
// deterministic run to run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "skewlab/distribution.hpp"
#include "skewlab/experiments.hpp"

using namespace skewlab;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Criteria 1-3 share one run: p1 = n^5, p2 = 2n^5, F = {M, M+2, M+5}, H = 30,
// 200 certified-B points x 64 omega ids.
void criteria_1_2_3() {
    auto t0 = std::chrono::steady_clock::now();
    SystemConfig c;
    c.M = 2;
    c.H = 30;
    c.f = FSet::list({c.M, c.M + 2, c.M + 5});
    c.master_seed = 20240817;
    const long long want = 200, omegas = 64;

    std::vector<PointState> states;
    long long attempts = 0;
    while (static_cast<long long>(states.size()) < want && attempts < 5 * want) {
        PointState st =
            certify_b(sample_point(c.base, c.master_seed, static_cast<std::uint64_t>(attempts)), c);
        ++attempts;
        if (st.certification == Certification::CertifiedB) states.push_back(std::move(st));
    }
    if (static_cast<long long>(states.size()) < want) {
        report(1, false, "could not certify 200 points in 1000 attempts");
        report(2, false, "shared run unavailable");
        report(3, false, "shared run unavailable");
        return;
    }
    const double m_b_hat = static_cast<double>(want) / attempts;

    long long zero_branch_hits = 0;
    std::vector<long long> hits(c.H, 0);
    for (long long i = 0; i < want; ++i) {
        for (long long j = 0; j < omegas; ++j) {
            OmegaOracle w(c.master_seed, static_cast<std::uint64_t>(i * omegas + j));
            for (long long n = c.M; n < c.M + c.H; ++n) {
                int ind = triple_indicator(states[i], w, n);
                hits[n - c.M] += ind;
                if (c.f.contains(n)) zero_branch_hits += ind;
            }
        }
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "dichotomy zero branch: %lld hits on F over %lld certified trials (%.1fs)",
                  zero_branch_hits, want * omegas * 3, seconds_since(t0));
    report(1, zero_branch_hits == 0, buf);

    // Plateau: estimate over all attempted points vs m_b_hat / 2.
    const long long trials = attempts * omegas;
    double worst = 0.0;
    bool plateau_ok = true;
    for (long long n = c.M; n < c.M + c.H; ++n) {
        if (c.f.contains(n)) continue;
        Wilson ci = wilson_interval(hits[n - c.M], trials);
        double est = static_cast<double>(hits[n - c.M]) / trials;
        double dev = std::fabs(est - m_b_hat / 2) / ci.sigma();
        worst = std::max(worst, dev);
        if (dev > 3.0) plateau_ok = false;
    }
    std::snprintf(buf, sizeof buf,
                  "dichotomy plateau: worst deviation %.2f Wilson-sigma from m_b_hat/2 = %.4f",
                  worst, m_b_hat / 2);
    report(2, plateau_ok, buf);

    // Criterion 3: complement identity on 10^4 samples per branch.
    long long f_checked = 0, f_bad = 0, off_checked = 0, off_bad = 0;
    for (long long i = 0; i < want && (f_checked < 10000 || off_checked < 10000); ++i) {
        for (long long j = 0; j < omegas && (f_checked < 10000 || off_checked < 10000); ++j) {
            OmegaOracle w(c.master_seed, static_cast<std::uint64_t>(i * omegas + j));
            for (long long n = c.M; n < c.M + c.H; ++n) {
                if (c.f.contains(n)) {
                    if (f_checked >= 10000) continue;
                    ++f_checked;
                    if (s_pullback_bit(states[i], w, n) !=
                        1 - t_pullback_bit(states[i], w, n))
                        ++f_bad;
                } else {
                    if (off_checked >= 10000) continue;
                    ++off_checked;
                    auto s_coord = s_read_coordinate(states[i], n);
                    if (!s_coord || *s_coord != t_read_coordinate(states[i], n)) ++off_bad;
                }
            }
        }
    }
    std::snprintf(buf, sizeof buf,
                  "complement identity: %lld/%lld mismatches (F), %lld/%lld coordinate "
                  "mismatches (off F)",
                  f_bad, f_checked, off_bad, off_checked);
    report(3, f_bad == 0 && off_bad == 0 && f_checked >= 10000 && off_checked >= 10000, buf);
}

void criterion_4() {
    SystemConfig c;
    c.M = 2;
    c.H = 12;
    c.f = FSet::list({3, 7});
    c.master_seed = 5;
    c.leftover_prefix = 4096;  // widen resolved coverage so shifted coordinates stay decidable

    long long pass = 0, undecided = 0, fail = 0, total = 0;
    std::uint64_t id = 0;
    while (total < 1000) {
        PointState st = certify_b(sample_point(c.base, c.master_seed, id), c);
        OmegaOracle w(c.master_seed, 90000 + id);
        ++id;
        if (st.certification == Certification::Rejected) continue;
        std::vector<i128> qs = {0};
        if (st.certification == Certification::CertifiedB)
            for (long long n = c.M; n < c.M + c.H; ++n) {
                qs.push_back(st.g1_at(n));
                qs.push_back(st.g2_at(n));
            }
        for (long long n = c.M; n < c.M + 4 && total < 1000; ++n)
            for (i128 q : qs) {
                if (total >= 1000) break;
                ++total;
                switch (conjugacy_check(st, c, w, n, q)) {
                    case CheckOutcome::Pass: ++pass; break;
                    case CheckOutcome::Undecided: ++undecided; break;
                    case CheckOutcome::Fail: ++fail; break;
                }
            }
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "conjugacy two-path: %lld pass, %lld undecided, %lld fail of %lld", pass,
                  undecided, fail, total);
    report(4, fail == 0 && undecided * 2 < total, buf);
}

void criterion_5() {
    auto t0 = std::chrono::steady_clock::now();
    // Reduced-horizon substitution: block family F = U [2*2^k, 3*2^k) with
    // p1 = p2 = n^5, so the N range stays inside the Birkhoff budget. The
    // density oracle below is recomputed for this family.
    SystemConfig c;
    c.p1 = IntPoly::parse("n^5");
    c.p2 = IntPoly::parse("n^5");
    c.M = 2;
    c.f = FSet::dyadic2();
    c.master_seed = 77;
    c.samples = 6;
    c.omega_per_point = 256;
    const long long n_max = 96;

    nlohmann::json r = cesaro_report(c, n_max);
    double m_b_hat = r["m_b_hat"].get<double>();
    auto average_at = [&r](long long N) {
        for (const auto& row : r["rows"])
            if (row["N"].get<long long>() == N) return row["average"].get<double>();
        return -1.0;
    };
    auto predicted_at = [&r](long long N) {
        for (const auto& row : r["rows"])
            if (row["N"].get<long long>() == N) return row["predicted"].get<double>();
        return -1.0;
    };

    bool ok = m_b_hat > 0;
    double min_gap = 1e9, max_oracle_err = 0.0;
    for (long long k = 3; k <= 5; ++k) {
        long long lo = 2LL << k, hi = 3LL << k;  // block boundaries 2*2^k, 3*2^k
        double gap = std::fabs(average_at(hi) - average_at(lo));
        min_gap = std::min(min_gap, gap);
        if (gap <= 0.05 * m_b_hat) ok = false;
        for (long long N : {lo, hi}) {
            double err = std::fabs(average_at(N) - predicted_at(N));
            max_oracle_err = std::max(max_oracle_err, err);
            if (err > 0.02) ok = false;
        }
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "Cesaro divergence (block family): min boundary gap %.4f vs 0.05*m_b_hat = "
                  "%.4f, oracle error %.4f (%.1fs)",
                  min_gap, 0.05 * m_b_hat, max_oracle_err, seconds_since(t0));
    report(5, ok, buf);
}

void criterion_6() {
    double prev = 1e9, last = 0;
    bool decreasing = true;
    for (long long n : {100LL, 400LL, 1600LL, 6400LL}) {
        last = llt_deviation(n);
        if (last >= prev) decreasing = false;
        prev = last;
    }
    bool parity_ok = true;
    for (long long n = 1; n <= 1000; ++n)
        if (parity_mass(n) != 0.0) parity_ok = false;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "local CLT: deviation decreasing, %.5f at n = 6400; parity mass 0 for n <= 1000",
                  last);
    report(6, decreasing && last < 0.05 && parity_ok, buf);
}

void criterion_7() {
    bool ok = true;
    double worst = 0.5;
    for (long long n : {100LL, 400LL, 1600LL}) {
        double ratio = w_mass(4 * n, 3) / w_mass(n, 3);
        if (ratio < 0.4 || ratio > 0.6) ok = false;
        if (std::fabs(ratio - 0.5) > std::fabs(worst - 0.5)) worst = ratio;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "W_n decay: worst m(W_4n)/m(W_n) = %.4f in [0.4, 0.6]", worst);
    report(7, ok, buf);
}

void criterion_8() {
    auto t0 = std::chrono::steady_clock::now();
    SystemConfig c;
    c.M = 2;
    c.H = 16;
    c.master_seed = 13;
    nlohmann::json r = e_measure_report(c, {2, 4, 8}, 2000, 4);
    bool ok = true;
    double prev_est = -1.0, prev_width = 0.0;
    for (const auto& row : r["rows"]) {
        double est = row["estimate"].get<double>();
        double width = row["wilson_hi"].get<double>() - row["wilson_lo"].get<double>();
        if (prev_est >= 0 && est < prev_est - 2 * std::max(width, prev_width)) ok = false;
        prev_est = est;
        prev_width = width;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "E_N growth: estimates nondecreasing within 2 CI widths over N = 2,4,8 "
                  "(last %.3f, %.1fs)",
                  prev_est, seconds_since(t0));
    report(8, ok, buf);
}

void criterion_9() {
    auto r1 = series_report(GrowthFn::parse("poly:n^5"), 100, 100);
    auto r2 = series_report(GrowthFn::parse("poly:n^5"), 200, 200);
    double t1 = r1["rows"][0]["total_bound"].get<double>();
    double t2 = r2["rows"][0]["total_bound"].get<double>();
    double rel = std::fabs(t2 - t1) / t1;

    auto rc = series_report(GrowthFn::parse("remarkcex"), 2001, 1);
    double sub = rc["rows"][0]["k1_subsum"].get<double>();
    long long evens = rc["rows"][0]["k1_even_terms"].get<long long>();

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "series: n^5 total bound %.4f, cap doubling moves it %.3f%%; counterexample "
                  "k=1 sub-sum %.1f over %lld even terms",
                  t2, 100 * rel, sub, evens);
    // even n in [3, 2001]: 4, 6, ..., 2000 -> 999 terms of exactly 1/sqrt(2)
    report(9, rel < 0.01 && sub > 500.0 && evens == 999, buf);
}

void criterion_10() {
    auto t0 = std::chrono::steady_clock::now();
    SystemConfig c;
    c.master_seed = 99;
    nlohmann::json r = entropy_report(c, {10000, 100000, 1000000}, 100);
    double prev = 1e9, last = 0;
    bool decreasing = true;
    for (const auto& row : r["rows"]) {
        last = row["median"].get<double>();
        if (last >= prev) decreasing = false;
        prev = last;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "entropy proxy: median a_N/N decreasing, %.5f at N = 10^6 (%.1fs)",
                  last, seconds_since(t0));
    report(10, decreasing && last < 0.05, buf);
}

void criterion_11() {
    SystemConfig c;
    c.M = 2;
    c.H = 8;
    c.master_seed = 42;
    c.samples = 10;
    c.omega_per_point = 16;
    c.f = FSet::list({3, 7});
    std::string w1 = triple_report(c, 2, 9).dump();
    c.workers = 3;
    std::string w3 = triple_report(c, 2, 9).dump();
    c.workers = 1;
    std::string again = triple_report(c, 2, 9).dump();
    report(11, w1 == w3 && w1 == again,
           "reproducibility: report bytes identical across reruns and worker counts");
}

}  // namespace

int main() {
    criteria_1_2_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
