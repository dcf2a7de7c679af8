#include "skewlab/distribution.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skewlab {

namespace {

constexpr double kSigmaSq = 0.5;  // step variance of the (1/4,1/2,1/4) walk

void check_n(long long n, long long limit, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + ": n >= 1 required");
    if (n > limit)
        throw BudgetError(std::string(what) + ": n = " + std::to_string(n) +
                          " exceeds DP bound " + std::to_string(limit));
}

}  // namespace

const mpz_class& ExactLevelDistribution::at(long long x) const {
    static const mpz_class zero = 0;
    long long i = x - min_level;
    if (i < 0 || i >= static_cast<long long>(numer.size())) return zero;
    return numer[i];
}

LevelDistribution walk_distribution(long long n) {
    check_n(n, kWalkDpLimit, "walk_distribution");
    std::vector<double> cur{0.25, 0.5, 0.25};  // support [-1, 1] after one step
    cur.reserve(2 * n + 1);
    for (long long s = 2; s <= n; ++s) {
        std::vector<double> next(cur.size() + 2, 0.0);
        for (size_t i = 0; i < cur.size(); ++i) {
            next[i] += 0.25 * cur[i];
            next[i + 1] += 0.5 * cur[i];
            next[i + 2] += 0.25 * cur[i];
        }
        cur = std::move(next);
    }
    return {n, -n, std::move(cur)};
}

ExactLevelDistribution walk_exact_distribution(long long n) {
    check_n(n, kWalkExactLimit, "walk_exact_distribution");
    std::vector<mpz_class> cur{1, 2, 1};  // over denominator 4^1
    for (long long s = 2; s <= n; ++s) {
        std::vector<mpz_class> next(cur.size() + 2);
        for (size_t i = 0; i < cur.size(); ++i) {
            next[i] += cur[i];
            next[i + 1] += 2 * cur[i];
            next[i + 2] += cur[i];
        }
        cur = std::move(next);
    }
    return {n, -n, std::move(cur)};
}

double llt_deviation(long long n) {
    LevelDistribution d = walk_distribution(n);
    const double root_n = std::sqrt(static_cast<double>(n));
    const double norm = 1.0 / std::sqrt(2.0 * M_PI * kSigmaSq);
    double sup = 0.0;
    long long x = 0;
    while (true) {
        double gauss = norm * std::exp(-static_cast<double>(x) * static_cast<double>(x) /
                                       (2.0 * n * kSigmaSq));
        if (x > n && gauss < 1e-15) break;
        double dev_pos = std::fabs(root_n * d.at(x) - gauss);
        double dev_neg = std::fabs(root_n * d.at(-x) - gauss);
        sup = std::max({sup, dev_pos, dev_neg});
        ++x;
    }
    return sup;
}

double parity_mass(long long n) {
    // g_n = 2 f_n puts mass only on even levels; sum the odd ones anyway.
    LevelDistribution d = walk_distribution(n);
    double odd = 0.0;
    for (long long x = -n; x <= n; ++x) {
        long long level_of_g = 2 * x;
        if (level_of_g % 2 != 0) odd += d.at(x);
    }
    return odd;
}

double w_mass(long long n, long long bound) {
    if (bound < 0) throw std::invalid_argument("w_mass: bound >= 0 required");
    LevelDistribution d = walk_distribution(n);
    long long fmax = bound / 2;  // |2 f_n| <= bound iff |f_n| <= floor(bound/2)
    double total = 0.0;
    for (long long x = -fmax; x <= fmax; ++x) total += d.at(x);
    return total;
}

std::string to_csv(const LevelDistribution& d) {
    std::ostringstream os;
    os << "x,mass\n";
    os.precision(17);
    for (size_t i = 0; i < d.mass.size(); ++i)
        os << (d.min_level + static_cast<long long>(i)) << "," << d.mass[i] << "\n";
    return os.str();
}

std::string to_csv(const ExactLevelDistribution& d) {
    std::ostringstream os;
    os << "x,mass_numerator,mass_denominator\n";
    const mpz_class den = d.denominator();
    for (size_t i = 0; i < d.numer.size(); ++i)
        os << (d.min_level + static_cast<long long>(i)) << "," << d.numer[i].get_str() << ","
           << den.get_str() << "\n";
    return os.str();
}

}  // namespace skewlab
