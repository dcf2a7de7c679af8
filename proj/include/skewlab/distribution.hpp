#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "skewlab/errors.hpp"

namespace skewlab {

// Distribution of the walk Birkhoff sum f_n over levels [-n, n], computed as
// the exact n-fold convolution power of the step law (1/4, 1/2, 1/4).
// Float mode carries doubles; exact mode carries integer numerators over the
// implied denominator 4^n.
struct LevelDistribution {
    long long n = 0;
    long long min_level = 0;
    std::vector<double> mass;  // mass[i] = m(f_n = min_level + i)

    double at(long long x) const {
        long long i = x - min_level;
        if (i < 0 || i >= static_cast<long long>(mass.size())) return 0.0;
        return mass[i];
    }
};

struct ExactLevelDistribution {
    long long n = 0;
    long long min_level = 0;
    std::vector<mpz_class> numer;  // numer[i] / 4^n = m(f_n = min_level + i)

    mpz_class denominator() const { return mpz_class(1) << (2 * n); }
    const mpz_class& at(long long x) const;
};

// DP feasibility bounds; exceeding them raises BudgetError.
inline constexpr long long kWalkDpLimit = 100'000;
inline constexpr long long kWalkExactLimit = 5'000;

LevelDistribution walk_distribution(long long n);
ExactLevelDistribution walk_exact_distribution(long long n);

// sup_x |sqrt(n) * m(f_n = x) - exp(-x^2/(2 n sigma^2)) / sqrt(2 pi sigma^2)|
// with sigma^2 = 1/2, x scanned over the support and beyond it until the
// Gaussian term falls below 1e-15.
double llt_deviation(long long n);

// Total mass of g_n = 2 f_n on odd levels; identically zero.
double parity_mass(long long n);

// m(|g_n| <= bound) = m(|f_n| <= floor(bound/2)).
double w_mass(long long n, long long bound);

// CSV with columns (x, mass) or (x, mass_numerator, mass_denominator).
std::string to_csv(const LevelDistribution& d);
std::string to_csv(const ExactLevelDistribution& d);

}  // namespace skewlab
