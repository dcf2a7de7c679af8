#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skewlab/config.hpp"
#include "skewlab/distribution.hpp"
#include "skewlab/experiments.hpp"

namespace py = pybind11;
using namespace skewlab;

namespace {

SystemConfig config_from(const std::map<std::string, std::string>& kv) {
    SystemConfig c;
    apply_config(c, kv);
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_skewlab, m) {
    m.doc() = "skew-product intersection laboratory (C++ core)";

    py::register_exception<BudgetError>(m, "BudgetError");
    py::register_exception<ConfigError>(m, "ConfigError");

    m.def("llt_deviation", &llt_deviation, py::arg("n"),
          "sup-norm deviation of the exact walk law from the Gaussian profile");
    m.def("w_mass", &w_mass, py::arg("n"), py::arg("bound"), "m(|g_n| <= bound)");
    m.def("parity_mass", &parity_mass, py::arg("n"), "mass of g_n on odd levels (exactly 0)");

    m.def(
        "wilson",
        [](long long successes, long long trials) {
            Wilson w = wilson_interval(successes, trials);
            return py::make_tuple(w.lo(), w.hi());
        },
        py::arg("successes"), py::arg("trials"), "95% Wilson score interval");

    m.def(
        "birkhoff",
        [](std::uint64_t seed, std::uint64_t point_id, long long n) {
            BasePoint y = sample_point(BaseKind::walk(), seed, point_id);
            return y.birkhoff(n);
        },
        py::arg("seed"), py::arg("point_id"), py::arg("n"),
        "walk cocycle f_n of the keyed point stream");

    m.def(
        "omega_bit",
        [](std::uint64_t seed, std::uint64_t omega_id, long long q) {
            return OmegaOracle(seed, omega_id).bit(q);
        },
        py::arg("seed"), py::arg("omega_id"), py::arg("q"), "coordinate q of the lazy sequence");

    m.def(
        "certify",
        [](const std::map<std::string, std::string>& kv, std::uint64_t point_id) {
            SystemConfig c = config_from(kv);
            PointState st = certify_b(sample_point(c.base, c.master_seed, point_id), c);
            switch (st.certification) {
                case Certification::CertifiedB: return std::string("B");
                case Certification::CertifiedNotB: return std::string("not-B");
                default: return std::string("rejected");
            }
        },
        py::arg("config"), py::arg("point_id"), "B-certification of one sampled point");

    m.def(
        "series_report",
        [](const std::string& growth, long long n_cap, long long k_cap) {
            return series_report(GrowthFn::parse(growth), n_cap, k_cap).dump();
        },
        py::arg("growth"), py::arg("n_cap"), py::arg("k_cap"), "JSON report");

    m.def(
        "llt_report",
        [](const std::vector<long long>& n_list, long long w_bound) {
            return llt_curve_report(n_list, w_bound).dump();
        },
        py::arg("n_list"), py::arg("w_bound"), "JSON report");

    m.def(
        "triple_report",
        [](const std::map<std::string, std::string>& kv, long long n_from, long long n_to) {
            return triple_report(config_from(kv), n_from, n_to).dump();
        },
        py::arg("config"), py::arg("n_from"), py::arg("n_to"), "JSON report");

    m.def(
        "cesaro_report",
        [](const std::map<std::string, std::string>& kv, long long n_max) {
            return cesaro_report(config_from(kv), n_max).dump();
        },
        py::arg("config"), py::arg("n_max"), "JSON report");

    m.def(
        "entropy_report",
        [](const std::map<std::string, std::string>& kv, const std::vector<long long>& n_values,
           long long points) { return entropy_report(config_from(kv), n_values, points).dump(); },
        py::arg("config"), py::arg("n_values"), py::arg("points"), "JSON report");

    m.def(
        "e_measure_report",
        [](const std::map<std::string, std::string>& kv, const std::vector<long long>& n_values,
           long long samples, long long k_cap) {
            return e_measure_report(config_from(kv), n_values, samples, k_cap).dump();
        },
        py::arg("config"), py::arg("n_values"), py::arg("samples"), py::arg("k_cap"),
        "JSON report");
}
