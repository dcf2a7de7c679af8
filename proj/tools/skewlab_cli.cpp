// Command-line driver for the skewlab experiments.
//
// Exit codes: 0 success, 2 scientific assertion failure, 3 budget
// exhaustion, 64 malformed configuration.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "skewlab/config.hpp"
#include "skewlab/distribution.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/experiments.hpp"

using namespace skewlab;

namespace {

constexpr int kExitAssert = 2;
constexpr int kExitBudget = 3;
constexpr int kExitConfig = 64;

struct CommonOpts {
    std::string config_file;
    std::string out_dir = "out";
    std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_file, "key=value config file");
    cmd->add_option("--out", opts.out_dir, "output directory");
    for (const char* key : {"base", "p1", "p2", "m", "horizon", "f", "eta", "leftover_prefix", "seed", "samples",
                            "omega_per_point", "budget", "workers"}) {
        std::string flag = "--" + std::string(key);
        for (auto& c : flag)
            if (c == '_') c = '-';
        cmd->add_option_function<std::string>(
            flag, [&opts, key](const std::string& v) { opts.overrides[key] = v; },
            std::string("override config key ") + key);
    }
    cmd->add_flag_callback(
        "--unsafe-degree", [&opts] { opts.overrides["unsafe_degree"] = "true"; },
        "allow iterate polynomials of degree < 5");
}

SystemConfig resolve(const CommonOpts& opts) {
    SystemConfig config;
    if (!opts.config_file.empty()) apply_config(config, parse_config_file(opts.config_file));
    apply_config(config, opts.overrides);
    config.validate();
    return config;
}

std::string join_argv(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += " ";
        s += argv[i];
    }
    return s;
}

void emit(const CommonOpts& opts, const std::string& name, const nlohmann::json& report,
          double seconds, const SystemConfig* config, const std::string& command) {
    write_report(opts.out_dir, name, report, seconds);
    if (config) {
        std::ofstream f(std::filesystem::path(opts.out_dir) / (name + ".manifest.txt"));
        f << manifest_text(*config, command);
    }
    std::cout << "wrote " << opts.out_dir << "/" << name << ".json\n";
}

std::vector<long long> parse_ll_list(const std::string& csv) {
    std::vector<long long> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    if (out.empty()) throw ConfigError("expected a comma-separated integer list");
    return out;
}

int run_selftest() {
    SystemConfig config;
    config.samples = 8;
    config.omega_per_point = 8;
    config.H = 12;
    int failures = 0;
    auto expect = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
        if (!ok) ++failures;
    };

    // Dichotomy with F = all: the triple indicator must vanish identically.
    SystemConfig cf = config;
    cf.f = FSet::all();
    long long hits = 0, certified = 0;
    for (long long i = 0; i < cf.samples; ++i) {
        PointState st = certify_b(sample_point(cf.base, cf.master_seed, i), cf);
        if (st.certification != Certification::CertifiedB) continue;
        ++certified;
        for (long long j = 0; j < cf.omega_per_point; ++j) {
            OmegaOracle omega(cf.master_seed, i * cf.omega_per_point + j);
            for (long long n = cf.M; n < cf.M + cf.H; ++n)
                hits += triple_indicator(st, omega, n);
        }
    }
    expect(certified > 0, "some points certify B");
    expect(hits == 0, "triple indicator vanishes on F");

    // Conjugacy S = R^-1 T R, two-path check at several coordinates.
    int conj_pass = 0, conj_total = 0;
    for (long long i = 0; i < 4; ++i) {
        PointState st = certify_b(sample_point(config.base, config.master_seed, i), config);
        OmegaOracle omega(config.master_seed, 1000 + i);
        for (long long n = config.M; n < config.M + 4; ++n)
            for (i128 q : {i128(0), i128(1), i128(-1), i128(5)}) {
                ++conj_total;
                if (conjugacy_check(st, config, omega, n, q) != CheckOutcome::Fail) ++conj_pass;
            }
    }
    expect(conj_pass == conj_total, "conjugacy two-path check");

    // Exact distribution sanity.
    auto exact = walk_exact_distribution(3);
    mpz_class total = 0;
    for (const auto& v : exact.numer) total += v;
    expect(total == exact.denominator(), "exact walk distribution sums to 1");

    return failures == 0 ? 0 : kExitAssert;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skewlab: skew-product intersection laboratory"};
    app.require_subcommand(1);
    std::string command = join_argv(argc, argv);

    CommonOpts llt_opts, series_opts, em_opts, tri_opts, ces_opts, ent_opts, cert_opts;

    auto* llt = app.add_subcommand("llt", "local CLT deviation and W_n mass curves");
    std::string llt_ns = "8,16,32,64,128,256,512,1024";
    long long llt_w = 3;
    llt->add_option("--n", llt_ns, "comma-separated n values");
    llt->add_option("--w-bound", llt_w, "bound b in m(|f_n| <= b/2)");
    llt->add_option("--out", llt_opts.out_dir, "output directory");

    auto* series = app.add_subcommand("series", "gap-series partial sums and bounds");
    std::string series_growth = "poly:n^5";
    long long series_ncap = 200, series_kcap = 200;
    series->add_option("--growth", series_growth, "poly:<p> | powfloor:<a> | qlog:<s> | remarkcex");
    series->add_option("--n-cap", series_ncap, "partial-sum cap in n");
    series->add_option("--k-cap", series_kcap, "partial-sum cap in k");
    series->add_option("--out", series_opts.out_dir, "output directory");

    auto* em = app.add_subcommand("e-measure", "horizon-relative E_N measure estimates");
    std::string em_ns = "2,4,8,16";
    long long em_samples = 200, em_kcap = 8;
    add_common(em, em_opts);
    em->add_option("--n", em_ns, "comma-separated window starts N");
    em->add_option("--window-samples", em_samples, "points per window");
    em->add_option("--k-cap", em_kcap, "lag cap for the F_{n,k} breakdown");

    auto* tri = app.add_subcommand("triple", "triple-intersection measure dichotomy");
    long long tri_from = -1, tri_to = -1;
    add_common(tri, tri_opts);
    tri->add_option("--n-from", tri_from, "first n (default M)");
    tri->add_option("--n-to", tri_to, "last n (default M+H-1)");

    auto* ces = app.add_subcommand("cesaro", "Cesaro averages of the triple measure");
    long long ces_nmax = 64;
    add_common(ces, ces_opts);
    ces->add_option("--n-max", ces_nmax, "average over N up to this value");

    auto* ent = app.add_subcommand("entropy", "zero-entropy proxy a_N(y)/N");
    std::string ent_ns = "1000,10000,100000,1000000";
    long long ent_points = 50;
    add_common(ent, ent_opts);
    ent->add_option("--n", ent_ns, "comma-separated N values");
    ent->add_option("--points", ent_points, "sampled base points");

    auto* cert = app.add_subcommand("certify", "certify sampled points against B");
    add_common(cert, cert_opts);

    app.add_subcommand("selftest", "internal consistency battery");

    CLI11_PARSE(app, argc, argv);

    try {
        auto t0 = std::chrono::steady_clock::now();
        auto elapsed = [&t0] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        };

        if (llt->parsed()) {
            auto report = llt_curve_report(parse_ll_list(llt_ns), llt_w);
            emit(llt_opts, "llt", report, elapsed(), nullptr, command);
        } else if (series->parsed()) {
            auto report = series_report(GrowthFn::parse(series_growth), series_ncap, series_kcap);
            emit(series_opts, "series", report, elapsed(), nullptr, command);
        } else if (em->parsed()) {
            SystemConfig config = resolve(em_opts);
            auto report = e_measure_report(config, parse_ll_list(em_ns), em_samples, em_kcap);
            emit(em_opts, "e_measure", report, elapsed(), &config, command);
        } else if (tri->parsed()) {
            SystemConfig config = resolve(tri_opts);
            long long from = tri_from < 0 ? config.M : tri_from;
            long long to = tri_to < 0 ? config.M + config.H - 1 : tri_to;
            auto report = triple_report(config, from, to);
            emit(tri_opts, "triple", report, elapsed(), &config, command);
            if (report["dichotomy_violations"].get<long long>() > 0) {
                std::cerr << "dichotomy violated: nonzero triple mass on F\n";
                return kExitAssert;
            }
        } else if (ces->parsed()) {
            SystemConfig config = resolve(ces_opts);
            auto report = cesaro_report(config, ces_nmax);
            emit(ces_opts, "cesaro", report, elapsed(), &config, command);
        } else if (ent->parsed()) {
            SystemConfig config = resolve(ent_opts);
            auto report = entropy_report(config, parse_ll_list(ent_ns), ent_points);
            emit(ent_opts, "entropy", report, elapsed(), &config, command);
        } else if (cert->parsed()) {
            SystemConfig config = resolve(cert_opts);
            long long in_b = 0, not_b = 0, rejected = 0;
            nlohmann::json rows = nlohmann::json::array();
            for (long long i = 0; i < config.samples; ++i) {
                PointState st = certify_b(sample_point(config.base, config.master_seed,
                                                       static_cast<std::uint64_t>(i)),
                                          config);
                const char* label = "rejected";
                switch (st.certification) {
                    case Certification::CertifiedB: ++in_b; label = "B"; break;
                    case Certification::CertifiedNotB: ++not_b; label = "not-B"; break;
                    case Certification::Rejected: ++rejected; break;
                }
                nlohmann::json row{{"point", i}, {"certification", label}};
                if (!st.reject_reason.empty()) row["reason"] = st.reject_reason;
                if (st.tables) row["tables"] = nlohmann::json::parse(tables_to_json(*st.tables));
                rows.push_back(row);
            }
            Wilson ci = wilson_interval(in_b, config.samples);
            nlohmann::json report{{"experiment", "certify"},
                                  {"certified_b", in_b},
                                  {"certified_not_b", not_b},
                                  {"rejected", rejected},
                                  {"m_b_hat", static_cast<double>(in_b) / config.samples},
                                  {"wilson_lo", ci.lo()},
                                  {"wilson_hi", ci.hi()},
                                  {"rows", rows}};
            emit(cert_opts, "certify", report, elapsed(), &config, command);
        } else {
            return run_selftest();
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
