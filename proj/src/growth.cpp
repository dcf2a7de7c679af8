#include "skewlab/growth.hpp"

#include <mpfr.h>

#include <sstream>
#include <stdexcept>

namespace skewlab {

namespace {

long long parse_rational_part(const std::string& s, long long& den) {
    auto slash = s.find('/');
    den = 1;
    if (slash == std::string::npos) return std::stoll(s);
    den = std::stoll(s.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("growth: denominator must be positive");
    return std::stoll(s.substr(0, slash));
}

// floor of value(n) where value is computed by `fill` under a given rounding
// mode. Starts at 256 bits (>= 96 fractional bits for our magnitudes) and
// doubles until the downward and upward floors agree.
template <typename Fill>
i128 certified_floor(Fill fill) {
    for (mpfr_prec_t prec = 256; prec <= 4096; prec *= 2) {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        fill(lo, MPFR_RNDD);
        fill(hi, MPFR_RNDU);
        mpfr_floor(lo, lo);
        mpfr_floor(hi, hi);
        bool equal = mpfr_cmp(lo, hi) == 0;
        i128 result = 0;
        if (equal) {
            mpfr_exp_t exp;
            char* digits = mpfr_get_str(nullptr, &exp, 10, 0, lo, MPFR_RNDN);
            std::string text(digits);
            mpfr_free_str(digits);
            bool neg = !text.empty() && text[0] == '-';
            if (neg) text.erase(0, 1);
            if (exp <= 0) {
                result = 0;
            } else {
                text.resize(static_cast<size_t>(exp), '0');
                result = parse_i128(text);
            }
            if (neg) result = -result;
        }
        mpfr_clear(lo);
        mpfr_clear(hi);
        if (equal) return result;
    }
    throw ArithmeticError("growth: floor not certified at 4096 bits (value too close to integer)");
}

}  // namespace

GrowthFn::GrowthFn(Kind kind, IntPoly p, long long num, long long den)
    : kind_(kind), poly_(std::move(p)), exp_num_(num), exp_den_(den) {}

GrowthFn GrowthFn::polynomial(IntPoly p) {
    if (p.leading() <= 0) throw std::invalid_argument("growth poly: positive leading coefficient required");
    return GrowthFn(Kind::Polynomial, std::move(p), 0, 1);
}

GrowthFn GrowthFn::power_floor(long long num, long long den) {
    if (den <= 0 || num * 1.0 / den <= 4.0)
        throw std::invalid_argument("powfloor: exponent a > 4 required");
    return GrowthFn(Kind::PowerFloor, IntPoly({0}), num, den);
}

GrowthFn GrowthFn::quartic_log(long long num, long long den) {
    if (den <= 0 || num <= 0) throw std::invalid_argument("qlog: s > 0 required");
    return GrowthFn(Kind::QuarticLog, IntPoly({0}), num, den);
}

GrowthFn GrowthFn::remark_counterexample() {
    return GrowthFn(Kind::RemarkCounterexample, IntPoly({0}), 0, 1);
}

GrowthFn GrowthFn::parse(const std::string& spec) {
    if (spec == "remarkcex") return remark_counterexample();
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("growth: bad spec " + spec);
    std::string head = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (head == "poly") return polynomial(IntPoly::parse(rest));
    long long den;
    long long num = parse_rational_part(rest, den);
    if (head == "powfloor") return power_floor(num, den);
    if (head == "qlog") return quartic_log(num, den);
    throw std::invalid_argument("growth: unknown family " + head);
}

const IntPoly& GrowthFn::poly() const {
    if (kind_ != Kind::Polynomial) throw std::logic_error("growth: not a polynomial");
    return poly_;
}

long long GrowthFn::domain_threshold() const {
    switch (kind_) {
        case Kind::Polynomial: return monotone_threshold(poly_);
        case Kind::PowerFloor: return 1;
        case Kind::QuarticLog: return 2;  // log 1 = 0; h increasing from 2 on
        case Kind::RemarkCounterexample: return 3;  // h: N_{>=3} -> N, as printed
    }
    throw std::logic_error("unreachable");
}

i128 GrowthFn::eval(long long n) const {
    switch (kind_) {
        case Kind::Polynomial:
            return poly_.eval(n);
        case Kind::PowerFloor:
            if (n < 1) throw std::invalid_argument("powfloor: n >= 1 required");
            return certified_floor([&](mpfr_t out, mpfr_rnd_t rnd) {
                mpfr_t e;
                mpfr_init2(e, mpfr_get_prec(out));
                mpfr_set_si(e, exp_num_, rnd);
                mpfr_div_si(e, e, exp_den_, rnd);
                mpfr_set_si(out, n, rnd);
                mpfr_pow(out, out, e, rnd);
                mpfr_clear(e);
            });
        case Kind::QuarticLog:
            if (n < 2) throw std::invalid_argument("qlog: n >= 2 required");
            return certified_floor([&](mpfr_t out, mpfr_rnd_t rnd) {
                mpfr_t lg, s;
                mpfr_init2(lg, mpfr_get_prec(out));
                mpfr_init2(s, mpfr_get_prec(out));
                mpfr_set_si(lg, n, rnd);
                mpfr_log(lg, lg, rnd);
                mpfr_set_si(s, exp_num_, rnd);
                mpfr_div_si(s, s, exp_den_, rnd);
                mpfr_pow(lg, lg, s, rnd);
                mpfr_set_si(out, n, rnd);
                mpfr_pow_ui(out, out, 4, rnd);
                mpfr_mul(out, out, lg, rnd);
                mpfr_clear(lg);
                mpfr_clear(s);
            });
        case Kind::RemarkCounterexample: {
            if (n < 3) throw std::invalid_argument("remarkcex: n >= 3 required");
            i128 half = n / 2;
            i128 fifth = checked_mul(checked_mul(checked_mul(half, half), checked_mul(half, half)), half);
            return checked_add(fifth, (n % 2 == 0) ? i128(-1) : i128(1));
        }
    }
    throw std::logic_error("unreachable");
}

i128 GrowthFn::gap(long long n, long long k) const {
    if (k < 1) throw std::invalid_argument("gap: k >= 1 required");
    if (n < domain_threshold()) throw std::invalid_argument("gap: n below domain threshold");
    i128 g = checked_sub(eval(n + k), eval(n));
    if (g <= 0) {
        throw ArithmeticError("gap: non-positive gap at n=" + std::to_string(n) +
                              ", k=" + std::to_string(k));
    }
    return g;
}

std::string GrowthFn::to_string() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Polynomial: os << "poly:" << poly_.to_string(); break;
        case Kind::PowerFloor:
            os << "powfloor:" << exp_num_;
            if (exp_den_ != 1) os << "/" << exp_den_;
            break;
        case Kind::QuarticLog:
            os << "qlog:" << exp_num_;
            if (exp_den_ != 1) os << "/" << exp_den_;
            break;
        case Kind::RemarkCounterexample: os << "remarkcex"; break;
    }
    return os.str();
}

}  // namespace skewlab
