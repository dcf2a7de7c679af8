#include "skewlab/fset.hpp"

#include <sstream>
#include <stdexcept>

#include "skewlab/errors.hpp"

namespace skewlab {

FSet FSet::none() { return FSet(); }

FSet FSet::all() {
    FSet f;
    f.kind_ = Kind::All;
    return f;
}

FSet FSet::list(std::vector<long long> values) {
    FSet f;
    f.kind_ = Kind::List;
    f.values_.insert(values.begin(), values.end());
    return f;
}

FSet FSet::dyadic() {
    FSet f;
    f.kind_ = Kind::Dyadic;
    return f;
}

FSet FSet::dyadic2() {
    FSet f;
    f.kind_ = Kind::Dyadic2;
    return f;
}

FSet FSet::residue(long long r, long long m) {
    if (m <= 0) throw ConfigError("fset mod: modulus must be positive");
    FSet f;
    f.kind_ = Kind::Residue;
    f.r_ = ((r % m) + m) % m;
    f.m_ = m;
    return f;
}

FSet FSet::parse(const std::string& spec) {
    if (spec == "none") return none();
    if (spec == "all") return all();
    if (spec == "dyadic") return dyadic();
    if (spec == "dyadic2") return dyadic2();
    if (spec.rfind("list:", 0) == 0) {
        std::vector<long long> vals;
        std::stringstream ss(spec.substr(5));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) vals.push_back(std::stoll(item));
        }
        return list(std::move(vals));
    }
    if (spec.rfind("mod:", 0) == 0) {
        std::stringstream ss(spec.substr(4));
        std::string r, m;
        if (!std::getline(ss, r, ',') || !std::getline(ss, m))
            throw ConfigError("fset mod: expected mod:r,m");
        return residue(std::stoll(r), std::stoll(m));
    }
    throw ConfigError("fset: unknown spec '" + spec + "'");
}

bool FSet::contains(long long n) const {
    if (n < 0) return false;
    switch (kind_) {
        case Kind::None: return false;
        case Kind::All: return true;
        case Kind::List: return values_.count(n) > 0;
        case Kind::Dyadic:
            for (long long lo = 1; lo <= n; lo *= 4)
                if (n >= lo && n < 2 * lo) return true;
            return false;
        case Kind::Dyadic2:
            for (long long lo = 2; lo <= n; lo *= 2)
                if (n >= lo && n < lo + lo / 2) return true;
            return false;
        case Kind::Residue: return n % m_ == r_;
    }
    return false;
}

long long FSet::complement_count(long long lo, long long hi) const {
    long long count = 0;
    for (long long n = lo; n <= hi; ++n)
        if (!contains(n)) ++count;
    return count;
}

std::string FSet::to_string() const {
    switch (kind_) {
        case Kind::None: return "none";
        case Kind::All: return "all";
        case Kind::List: {
            std::string s = "list:";
            bool first = true;
            for (long long v : values_) {
                if (!first) s += ",";
                s += std::to_string(v);
                first = false;
            }
            return s;
        }
        case Kind::Dyadic: return "dyadic";
        case Kind::Dyadic2: return "dyadic2";
        case Kind::Residue: return "mod:" + std::to_string(r_) + "," + std::to_string(m_);
    }
    return "none";
}

}  // namespace skewlab
