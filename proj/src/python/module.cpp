#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnetcap/bounds.hpp"
#include "qnetcap/channels.hpp"
#include "qnetcap/cli.hpp"
#include "qnetcap/io.hpp"
#include "qnetcap/qkd.hpp"
#include "qnetcap/routing.hpp"
#include "qnetcap/wrn.hpp"

namespace py = pybind11;
using namespace qnetcap;

namespace {

io::Json parse(const std::string& text) { return io::parse_json(text); }

BoundedGraph value_graph(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
                         std::size_t alpha, std::size_t beta) {
    return BoundedGraph::from_values(n, edges, alpha, beta);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Capacity bounds and thresholds for quantum repeater networks";

    auto base = py::register_exception<Error>(m, "QnetcapError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<FamilyError>(m, "FamilyError", base.ptr());
    py::register_exception<NotFound>(m, "NotFound", base.ptr());
    py::register_exception<NotAttainable>(m, "NotAttainable", base.ptr());
    py::register_exception<MonotonicityError>(m, "MonotonicityError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<io::InputError>(m, "InputError", base.ptr());

    m.def("h2", &h2, py::arg("u"));
    m.def("bosonic_h", &bosonic_h, py::arg("x"));
    m.def("ad_rci", &ad_rci, py::arg("p"));
    m.def("ad_squashed", &ad_squashed, py::arg("p"));
    m.def("tl_rci", &tl_rci, py::arg("eta"), py::arg("nbar"));
    m.def("tl_ree", &tl_ree, py::arg("eta"), py::arg("nbar"));
    m.def("plob_pure_loss", &plob_pure_loss, py::arg("eta"));

    m.def("compose_ad", [](const std::vector<double>& p) { return compose_ad(p); }, py::arg("probs"));
    m.def(
        "compose_tl",
        [](const std::vector<std::pair<double, double>>& links) {
            std::vector<ThermalLoss> parts;
            for (const auto& [tau, nbar] : links) parts.push_back({tau, nbar});
            const auto total = compose_tl(parts);
            return std::pair{total.tau, total.nbar};
        },
        py::arg("links"));

    m.def(
        "max_flow",
        [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
           std::size_t alpha, std::size_t beta) {
            return max_flow(value_graph(n, edges, alpha, beta), Selector::Lower).value;
        },
        py::arg("n"), py::arg("edges"), py::arg("alpha"), py::arg("beta"));
    m.def(
        "widest_path",
        [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
           std::size_t alpha, std::size_t beta) {
            const auto r = widest_path(value_graph(n, edges, alpha, beta), Selector::Lower);
            return std::pair{r.value, r.nodes};
        },
        py::arg("n"), py::arg("edges"), py::arg("alpha"), py::arg("beta"));

    m.def("delta", [](const std::string& cell) {
        const auto c = wrn::parse_cell(cell);
        return wrn::delta(wrn::degree(c), wrn::commonality_set(c));
    }, py::arg("cell"));
    m.def("omega", [](const std::string& cell) {
        const auto c = wrn::parse_cell(cell);
        const auto r = wrn::omega(wrn::degree(c), wrn::delta(wrn::degree(c), wrn::commonality_set(c)));
        return std::pair{r.numerator, r.denominator};
    }, py::arg("cell"));
    m.def("min_nodal_density", [](double d, const std::string& cell) {
        return wrn::min_nodal_density(d, wrn::parse_cell(cell)).rho_min;
    }, py::arg("d_max"), py::arg("cell"));

    m.def("theta_ph", [](const std::string& preset) { return qkd::theta_ph(qkd::preset(preset)); },
          py::arg("preset") = "table1-heterodyne-llo");
    m.def("theta_el", [](const std::string& preset) {
        const auto s = qkd::preset(preset);
        return qkd::theta_el(s, s.lo_power_w);
    }, py::arg("preset") = "table1-heterodyne-llo");
    m.def("receiver_noise", [](const std::string& preset, double eta) {
        return qkd::receiver_noise(qkd::preset(preset), eta);
    }, py::arg("preset"), py::arg("eta"));

    m.def("analyze_json", [](const std::string& text) { return cli::analyze(parse(text)).dump(); },
          py::arg("network"));
    m.def(
        "threshold_json",
        [](const std::string& text, std::optional<double> target, std::optional<std::string> param) {
            return cli::threshold(parse(text), target, param).dump();
        },
        py::arg("spec"), py::arg("target") = py::none(), py::arg("param") = py::none());
    m.def("sweep_csv", [](const std::string& text) { return cli::sweep_csv(io::sweep_from_json(parse(text))); },
          py::arg("spec"));
    m.def(
        "generate_json",
        [](const std::string& cell, int radius, double d, const std::string& family) {
            wrn::WrnSpec spec;
            spec.cell = wrn::parse_cell(cell);
            spec.radius = radius;
            spec.edge_length_km = d;
            spec.family = family == "qubit" ? Family::Qubit : Family::Bosonic;
            return io::to_json(wrn::generate(spec)).dump();
        },
        py::arg("cell"), py::arg("radius"), py::arg("d"), py::arg("family") = "bosonic");
    m.def("validate_json", [](const std::string& text) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : validate(io::network_from_json(parse(text)))) out.emplace_back(v.path, v.message);
        return out;
    }, py::arg("network"));
}
