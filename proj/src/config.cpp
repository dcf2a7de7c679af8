#include "skewlab/config.hpp"

#include <fstream>
#include <sstream>

#include "skewlab/errors.hpp"

namespace skewlab {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long long parse_ll(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': expected integer, got '" + value + "'");
    }
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: " + path + ":" + std::to_string(lineno) + ": empty key");
        if (kv.count(key))
            throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

BaseKind parse_base(const std::string& spec) {
    if (spec == "walk") return BaseKind::walk();
    if (spec == "rotation") {
        CirclePoint half{u128(1) << 127};
        return BaseKind::rotation(CirclePoint::golden(), {CirclePoint{0}, half}, {1, -1});
    }
    throw ConfigError("config: base must be 'walk' or 'rotation', got '" + spec + "'");
}

void apply_config(SystemConfig& config, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        try {
            if (key == "base") {
                config.base = parse_base(value);
            } else if (key == "p1") {
                config.p1 = IntPoly::parse(value);
            } else if (key == "p2") {
                config.p2 = IntPoly::parse(value);
            } else if (key == "m") {
                config.M = parse_ll(key, value);
            } else if (key == "horizon") {
                config.H = parse_ll(key, value);
            } else if (key == "leftover_prefix") {
                config.leftover_prefix = parse_ll(key, value);
            } else if (key == "f") {
                config.f = FSet::parse(value);
            } else if (key == "eta") {
                config.eta = value == "full" ? -1.0 : std::stod(value);
            } else if (key == "seed") {
                config.master_seed = static_cast<std::uint64_t>(parse_ll(key, value));
            } else if (key == "samples") {
                config.samples = parse_ll(key, value);
            } else if (key == "omega_per_point") {
                config.omega_per_point = parse_ll(key, value);
            } else if (key == "budget") {
                config.budget = parse_ll(key, value);
            } else if (key == "workers") {
                config.workers = static_cast<int>(parse_ll(key, value));
            } else if (key == "unsafe_degree") {
                if (value != "true" && value != "false")
                    throw ConfigError("config: key 'unsafe_degree': expected true/false, got '" +
                                      value + "'");
                config.unsafe_degree = value == "true";
            } else {
                throw ConfigError("config: unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("config: key '" + key + "' = '" + value + "': " + e.what());
        }
    }
}

std::string manifest_text(const SystemConfig& config, const std::string& command) {
    std::ostringstream os;
    os << "command=" << command << "\n";
    os << "base=" << (config.base.family == BaseKind::Family::Walk ? "walk" : "rotation") << "\n";
    os << "p1=" << config.p1.to_string() << "\n";
    os << "p2=" << config.p2.to_string() << "\n";
    os << "m=" << config.M << "\n";
    os << "horizon=" << config.H << "\n";
    os << "leftover_prefix=" << (config.leftover_prefix > 0 ? config.leftover_prefix : config.H)
       << "\n";
    os << "f=" << config.f.to_string() << "\n";
    if (config.eta_full())
        os << "eta=full\n";
    else
        os << "eta=" << config.eta << "\n";
    os << "seed=" << config.master_seed << "\n";
    os << "samples=" << config.samples << "\n";
    os << "omega_per_point=" << config.omega_per_point << "\n";
    os << "budget=" << config.budget << "\n";
    os << "workers=" << config.workers << "\n";
    os << "unsafe_degree=" << (config.unsafe_degree ? "true" : "false") << "\n";
    return os.str();
}

}  // namespace skewlab
