#include "skewlab/poly.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skewlab {

IntPoly::IntPoly(std::vector<long long> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0);
}

namespace {

// One term of the textual form: [sign] [c] [* ] [n [^k]]
struct Term {
    long long coeff;
    int power;
};

Term parse_term(const std::string& t) {
    size_t pos = 0;
    long long sign = 1;
    while (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
        if (t[pos] == '-') sign = -sign;
        ++pos;
    }
    long long coeff = 1;
    bool saw_coeff = false;
    if (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
        coeff = 0;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
            coeff = coeff * 10 + (t[pos] - '0');
            ++pos;
        }
        saw_coeff = true;
    }
    if (pos < t.size() && t[pos] == '*') ++pos;
    int power = 0;
    if (pos < t.size() && t[pos] == 'n') {
        ++pos;
        power = 1;
        if (pos < t.size() && t[pos] == '^') {
            ++pos;
            if (pos >= t.size() || !std::isdigit(static_cast<unsigned char>(t[pos])))
                throw std::invalid_argument("polynomial: missing exponent");
            power = 0;
            while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
                power = power * 10 + (t[pos] - '0');
                ++pos;
            }
        }
    } else if (!saw_coeff) {
        throw std::invalid_argument("polynomial: bad term");
    }
    if (pos != t.size()) throw std::invalid_argument("polynomial: trailing junk in term");
    return {sign * coeff, power};
}

}  // namespace

IntPoly IntPoly::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("polynomial: empty");

    std::vector<std::string> terms;
    std::string cur;
    for (size_t i = 0; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && i > 0 && s[i - 1] != '^' && s[i - 1] != '+' &&
            s[i - 1] != '-' && s[i - 1] != '*') {
            terms.push_back(cur);
            cur.clear();
        }
        cur.push_back(s[i]);
    }
    terms.push_back(cur);

    std::vector<long long> coeffs;
    for (const auto& t : terms) {
        Term term = parse_term(t);
        if (static_cast<size_t>(term.power) >= coeffs.size()) coeffs.resize(term.power + 1, 0);
        coeffs[term.power] += term.coeff;
    }
    return IntPoly(std::move(coeffs));
}

i128 IntPoly::eval(i128 n) const {
    i128 acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = checked_add(checked_mul(acc, n), static_cast<i128>(*it));
    return acc;
}

IntPoly IntPoly::difference() const {
    // p(n+1) via binomial expansion, then subtract p(n).
    std::vector<long long> shifted(coeffs_.size(), 0);
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        long long binom = 1;  // C(j, i)
        for (size_t i = 0; i <= j; ++i) {
            i128 add = checked_mul(static_cast<i128>(coeffs_[j]), static_cast<i128>(binom));
            i128 next = checked_add(static_cast<i128>(shifted[i]), add);
            if (next > std::numeric_limits<long long>::max() ||
                next < std::numeric_limits<long long>::min())
                throw ArithmeticError("difference coefficient overflow");
            shifted[i] = static_cast<long long>(next);
            binom = binom * static_cast<long long>(j - i) / static_cast<long long>(i + 1);
        }
    }
    std::vector<long long> diff(coeffs_.size(), 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) diff[i] = shifted[i] - coeffs_[i];
    return IntPoly(std::move(diff));
}

IntPoly IntPoly::scaled(long long c) const {
    std::vector<long long> out = coeffs_;
    for (auto& v : out) {
        i128 next = checked_mul(static_cast<i128>(v), static_cast<i128>(c));
        if (next > std::numeric_limits<long long>::max() ||
            next < std::numeric_limits<long long>::min())
            throw ArithmeticError("scaled coefficient overflow");
        v = static_cast<long long>(next);
    }
    return IntPoly(std::move(out));
}

IntPoly IntPoly::operator-(const IntPoly& other) const {
    std::vector<long long> out(std::max(coeffs_.size(), other.coeffs_.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        long long a = i < coeffs_.size() ? coeffs_[i] : 0;
        long long b = i < other.coeffs_.size() ? other.coeffs_[i] : 0;
        out[i] = a - b;
    }
    return IntPoly(std::move(out));
}

std::string IntPoly::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int j = degree(); j >= 0; --j) {
        long long c = coeffs_[j];
        if (c == 0 && degree() > 0) continue;
        if (!first) os << (c < 0 ? "-" : "+");
        else if (c < 0) os << "-";
        long long a = std::abs(c);
        if (a != 1 || j == 0) os << a;
        if (j >= 1) {
            if (a != 1) os << "*";
            os << "n";
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    return os.str();
}

long long positivity_threshold(const IntPoly& p) {
    if (p.degree() == 0) {
        if (p.leading() <= 0) throw std::invalid_argument("constant polynomial never positive");
        return 1;
    }
    if (p.leading() <= 0) throw std::invalid_argument("leading coefficient must be positive");
    IntPoly q = p.difference();
    long long t = positivity_threshold(q);  // q > 0 on [t, inf): p strictly increasing there
    long long a = t;
    while (p.eval(a) <= 0) ++a;
    while (a > 1 && p.eval(a - 1) > 0) --a;
    return a;
}

long long monotone_threshold(const IntPoly& p) {
    if (p.leading() <= 0) throw std::invalid_argument("leading coefficient must be positive");
    if (p.degree() == 0) return 1;
    long long np = positivity_threshold(p);
    long long nq = positivity_threshold(p.difference());
    return std::max(np, nq);
}

long long gap_bound_threshold(const IntPoly& p) {
    const int t = p.degree();
    if (t < 1 || p.leading() <= 0)
        throw std::invalid_argument("gap bound needs positive leading coefficient, degree >= 1");
    // r(n) = 2*q(n) - a_t*((n+1)^t - n^t) >= 0 eventually; its leading term is
    // a_t * t * n^{t-1}, so the positivity scan terminates.
    std::vector<long long> mono(t + 1, 0);
    mono[t] = 1;
    IntPoly nt(std::move(mono));
    IntPoly r = p.difference().scaled(2) - nt.difference().scaled(p.leading());
    if (r.degree() == 0 && r.leading() == 0) return 1;  // exact equality everywhere
    return positivity_threshold(r);
}

double gap_lower_bound(const IntPoly& p, long long n, long long k) {
    if (k < 1) throw std::invalid_argument("gap_lower_bound: k >= 1 required");
    if (n < gap_bound_threshold(p))
        throw std::invalid_argument("gap_lower_bound: n below certified threshold");
    const int t = p.degree();
    return static_cast<double>(p.leading()) * t *
           std::pow(static_cast<double>(n), t / 2.0) * std::pow(static_cast<double>(k), t / 2.0);
}

long long l_enumerate(long long i) {
    if (i < 1) throw std::invalid_argument("l_enumerate: i >= 1 required");
    long long mag = (i + 1) / 2;
    return (i % 2 == 1) ? mag : -mag;
}

}  // namespace skewlab
