#pragma once

#include <map>
#include <string>

#include "skewlab/dynamics.hpp"

namespace skewlab {

// Flat key=value config file. '#' starts a comment; blank lines are
// ignored; unknown keys are a hard error. CLI flags override file values.
// Recognized keys: base, p1, p2, m, horizon, f, eta, seed, samples,
// omega_per_point, budget, workers, unsafe_degree.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies key=value pairs onto a SystemConfig. Throws ConfigError on an
// unknown key or unparseable value, naming both.
void apply_config(SystemConfig& config, const std::map<std::string, std::string>& kv);

// "walk", or "rotation" (golden rotation, step +1 on [0,1/2), -1 on [1/2,1)).
BaseKind parse_base(const std::string& spec);

// The fully-resolved configuration echoed back as key=value lines, plus a
// command= line recording the invocation. Written next to the reports.
std::string manifest_text(const SystemConfig& config, const std::string& command);

}  // namespace skewlab
