#include "qnetcap/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qnetcap::io {

namespace {

const Json& require(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw InputError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(path + "." + key + ": required");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw InputError(path + ": expected a number");
    return j.get<double>();
}

double number_or(const Json& j, const char* key, double fallback, const std::string& path) {
    if (!j.contains(key)) return fallback;
    return number(j.at(key), path + "." + key);
}

std::string text(const Json& j, const std::string& path) {
    if (!j.is_string()) throw InputError(path + ": expected a string");
    return j.get<std::string>();
}

int integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
    return j.get<int>();
}

bool boolean(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw InputError(path + ": expected true or false");
    return j.get<bool>();
}

Family family_from(const Json& j, const std::string& path) {
    const auto name = text(j, path);
    if (name == "qubit") return Family::Qubit;
    if (name == "bosonic") return Family::Bosonic;
    throw InputError(path + ": unknown family '" + name + "'");
}

Json optional_number(const std::optional<double>& v) {
    return v && std::isfinite(*v) ? Json(*v) : Json(nullptr);
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string orientation(const Orientation& o) { return o.from + "->" + o.to; }

Json ids_of(const std::vector<std::size_t>& idx, const BoundedGraph& graph) {
    Json out = Json::array();
    for (auto i : idx) out.push_back(graph.id(i));
    return out;
}

/// Rethrows library domain errors as input errors tagged with the JSON path.
template <class F>
auto tagged(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const DomainError& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace

Json parse_json(const std::string& content) {
    try {
        return Json::parse(content);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const ChannelSpec& ch) {
    switch (ch.kind()) {
        case ChannelKind::AmplitudeDamping: return {{"kind", "ad"}, {"p", ch.damping()}};
        case ChannelKind::ThermalLoss:
            return {{"kind", "tl"}, {"tau", ch.thermal().tau}, {"nbar", ch.thermal().nbar}};
        case ChannelKind::PureLoss: return {{"kind", "pl"}, {"eta", ch.thermal().tau}};
        case ChannelKind::Identity: return {{"kind", "id"}};
    }
    return {};
}

ChannelSpec channel_from_json(const Json& j, const std::string& path) {
    const auto kind = text(require(j, "kind", path), path + ".kind");
    return tagged(path, [&] {
        if (kind == "ad") return ChannelSpec::amplitude_damping(number(require(j, "p", path), path + ".p"));
        if (kind == "tl") {
            return ChannelSpec::thermal_loss(number(require(j, "tau", path), path + ".tau"),
                                             number(require(j, "nbar", path), path + ".nbar"));
        }
        if (kind == "pl") return ChannelSpec::pure_loss(number(require(j, "eta", path), path + ".eta"));
        if (kind == "id") return ChannelSpec::identity();
        throw InputError(path + ".kind: unknown channel kind '" + kind + "'");
    });
}

Json to_json(const NetworkGraph& graph) {
    Json j;
    if (graph.family) j["family"] = to_string(*graph.family);
    Json nodes = Json::array();
    for (const auto& [id, node] : graph.nodes) {
        Json n{{"id", id}, {"recv", to_json(node.recv)}, {"send", to_json(node.send)},
               {"role", node.role == NodeRole::User ? "user" : "repeater"}};
        if (!node.split) n["split"] = false;
        nodes.push_back(std::move(n));
    }
    j["nodes"] = std::move(nodes);
    Json edges = Json::array();
    for (const auto& e : graph.edges) {
        Json ej{{"a", e.a}, {"b", e.b}};
        if (const auto* f = std::get_if<FibreParams>(&e.link)) {
            ej["fibre"] = {{"length_km", f->length_km}, {"gamma", f->gamma}, {"nbar_B", f->nbar_b}};
        } else {
            ej["channel"] = to_json(std::get<ChannelSpec>(e.link));
        }
        edges.push_back(std::move(ej));
    }
    j["edges"] = std::move(edges);
    if (graph.users) j["users"] = {graph.users->first, graph.users->second};
    return j;
}

NetworkGraph network_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("network: expected an object");
    NetworkGraph graph;
    if (j.contains("family")) graph.family = family_from(j["family"], "family");

    const auto& nodes = require(j, "nodes", "network");
    if (!nodes.is_array()) throw InputError("nodes: expected an array");
    std::vector<Violation> duplicates;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string path = "nodes[" + std::to_string(i) + "]";
        const auto& n = nodes[i];
        NodeSpec node;
        node.id = text(require(n, "id", path), path + ".id");
        if (n.contains("recv")) node.recv = channel_from_json(n["recv"], path + ".recv");
        if (n.contains("send")) node.send = channel_from_json(n["send"], path + ".send");
        if (n.contains("role")) {
            const auto role = text(n["role"], path + ".role");
            if (role == "user") {
                node.role = NodeRole::User;
            } else if (role != "repeater") {
                throw InputError(path + ".role: expected 'user' or 'repeater'");
            }
        }
        if (n.contains("split")) node.split = boolean(n["split"], path + ".split");
        if (graph.nodes.contains(node.id)) duplicates.push_back({path, "duplicate id '" + node.id + "'"});
        graph.add_node(std::move(node));
    }
    if (!duplicates.empty()) throw ValidationError(std::move(duplicates));

    const auto& edges = require(j, "edges", "network");
    if (!edges.is_array()) throw InputError("edges: expected an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string path = "edges[" + std::to_string(i) + "]";
        const auto& e = edges[i];
        auto a = text(require(e, "a", path), path + ".a");
        auto b = text(require(e, "b", path), path + ".b");
        if (e.contains("fibre") == e.contains("channel")) {
            throw InputError(path + ": exactly one of 'fibre' or 'channel' is required");
        }
        if (e.contains("fibre")) {
            const auto& f = e["fibre"];
            const std::string fp = path + ".fibre";
            FibreParams fibre;
            fibre.length_km = number(require(f, "length_km", fp), fp + ".length_km");
            fibre.gamma = number_or(f, "gamma", fibre.gamma, fp);
            fibre.nbar_b = number_or(f, "nbar_B", fibre.nbar_b, fp);
            graph.add_edge(std::move(a), std::move(b), fibre);
        } else {
            graph.add_edge(std::move(a), std::move(b), channel_from_json(e["channel"], path + ".channel"));
        }
    }

    if (j.contains("users")) {
        const auto& u = j["users"];
        if (!u.is_array() || u.size() != 2) throw InputError("users: expected [alpha, beta]");
        graph.users = std::pair{text(u[0], "users[0]"), text(u[1], "users[1]")};
    }
    return graph;
}

Json to_json(const EdgeBounds& b) {
    Json j{{"lower", b.lower}, {"upper", b.upper}, {"orientation", orientation(b.lower_orientation)}};
    j["lower_kind"] = to_string(b.lower_kind);
    j["upper_kind"] = to_string(b.upper_kind);
    if (!(b.upper_orientation == b.lower_orientation)) {
        j["upper_orientation"] = orientation(b.upper_orientation);
    }
    return j;
}

Json to_json(const FlowResult& flow, const BoundedGraph& graph) {
    Json cut_edges = Json::array();
    for (auto e : flow.mincut.edges) {
        const auto& edge = graph.edges()[e];
        cut_edges.push_back({graph.id(edge.u), graph.id(edge.v)});
    }
    Json flows = Json::array();
    for (const auto& f : flow.flows) {
        flows.push_back({{"from", graph.id(f.from)}, {"to", graph.id(f.to)}, {"amount", f.amount}});
    }
    return {{"value", flow.value},
            {"mincut",
             {{"A", ids_of(flow.mincut.source_side, graph)},
              {"B", ids_of(flow.mincut.sink_side, graph)},
              {"edges", std::move(cut_edges)}}},
            {"flows", std::move(flows)}};
}

Json to_json(const PathResult& path, const BoundedGraph& graph) {
    return {{"value", path.value}, {"nodes", ids_of(path.nodes, graph)}};
}

Json report_json(const BoundedGraph& graph, const CapacityReport& report) {
    Json edges = Json::array();
    for (const auto& e : graph.edges()) {
        Json ej{{"a", graph.id(e.u)}, {"b", graph.id(e.v)}};
        ej.update(to_json(e.bounds));
        edges.push_back(std::move(ej));
    }
    return {{"users", {graph.id(graph.alpha()), graph.id(graph.beta())}},
            {"single_path", {{"lower", report.single_path.lower}, {"upper", report.single_path.upper}}},
            {"flooding", {{"lower", report.flooding.lower}, {"upper", report.flooding.upper}}},
            {"min_neighbourhood",
             {{"lower", report.min_neighbourhood.lower}, {"upper", report.min_neighbourhood.upper}}},
            {"widest_path", {{"lower", to_json(report.path_lower, graph)}, {"upper", to_json(report.path_upper, graph)}}},
            {"max_flow", {{"lower", to_json(report.flow_lower, graph)}, {"upper", to_json(report.flow_upper, graph)}}},
            {"edges", std::move(edges)}};
}

qkd::QkdSetup qkd_from_json(const Json& j) {
    if (j.is_string()) {
        try {
            return qkd::preset(j.get<std::string>());
        } catch (const NotFound& e) {
            throw InputError(std::string("qkd_setup: ") + e.what());
        }
    }
    if (!j.is_object()) throw InputError("qkd_setup: expected a preset name or an object");
    const std::string p = "qkd_setup";
    qkd::QkdSetup s = j.contains("preset") ? qkd_from_json(j["preset"]) : qkd::QkdSetup{};
    s.wavelength_m = number_or(j, "wavelength_m", s.wavelength_m, p);
    s.tau_eff = number_or(j, "tau_eff", s.tau_eff, p);
    s.bandwidth_hz = number_or(j, "bandwidth_hz", s.bandwidth_hz, p);
    s.nbar_b = number_or(j, "nbar_B", s.nbar_b, p);
    s.nep = number_or(j, "nep", s.nep, p);
    s.lo_power_w = number_or(j, "lo_power_w", s.lo_power_w, p);
    s.linewidth_hz = number_or(j, "linewidth_hz", s.linewidth_hz, p);
    s.clock_hz = number_or(j, "clock_hz", s.clock_hz, p);
    s.lo_pulse_s = number_or(j, "lo_pulse_s", s.lo_pulse_s, p);
    s.signal_pulse_s = number_or(j, "signal_pulse_s", s.signal_pulse_s, p);
    s.modulation = number_or(j, "modulation", s.modulation, p);
    if (j.contains("detection")) {
        const auto d = text(j["detection"], p + ".detection");
        if (d == "homodyne") {
            s.detection = qkd::Detection::Homodyne;
        } else if (d == "heterodyne") {
            s.detection = qkd::Detection::Heterodyne;
        } else {
            throw InputError(p + ".detection: expected 'homodyne' or 'heterodyne'");
        }
    }
    if (j.contains("scheme")) {
        const auto sc = text(j["scheme"], p + ".scheme");
        if (sc == "LLO" || sc == "llo") {
            s.scheme = qkd::LoScheme::Local;
        } else if (sc == "TLO" || sc == "tlo") {
            s.scheme = qkd::LoScheme::Transmitted;
        } else {
            throw InputError(p + ".scheme: expected 'LLO' or 'TLO'");
        }
    }
    tagged(p, [&] { s.validate(); return 0; });
    return s;
}

Json to_json(const qkd::QkdSetup& s) {
    return {{"wavelength_m", s.wavelength_m},
            {"tau_eff", s.tau_eff},
            {"detection", s.detection == qkd::Detection::Homodyne ? "homodyne" : "heterodyne"},
            {"bandwidth_hz", s.bandwidth_hz},
            {"nbar_B", s.nbar_b},
            {"nep", s.nep},
            {"lo_power_w", s.lo_power_w},
            {"linewidth_hz", s.linewidth_hz},
            {"clock_hz", s.clock_hz},
            {"lo_pulse_s", s.lo_pulse_s},
            {"signal_pulse_s", s.signal_pulse_s},
            {"modulation", s.modulation},
            {"scheme", s.scheme == qkd::LoScheme::Local ? "LLO" : "TLO"}};
}

wrn::WrnSpec wrn_spec_from_json(const Json& j) {
    const std::string p = "wrn";
    if (!j.is_object()) throw InputError(p + ": expected an object");
    wrn::WrnSpec s;
    if (j.contains("cell")) {
        const auto cell = text(j["cell"], p + ".cell");
        s.cell = tagged(p + ".cell", [&] { return wrn::parse_cell(cell); });
    }
    if (j.contains("radius")) s.radius = integer(j["radius"], p + ".radius");
    s.edge_length_km = number_or(j, "edge_length_km", s.edge_length_km, p);
    if (j.contains("family")) s.family = family_from(j["family"], p + ".family");
    s.gamma = number_or(j, "gamma", s.gamma, p);
    s.nbar_b = number_or(j, "nbar_B", s.nbar_b, p);
    if (j.contains("node")) {
        const auto& n = j["node"];
        if (!n.is_object()) throw InputError(p + ".node: expected an object");
        if (n.contains("recv")) s.node_recv = channel_from_json(n["recv"], p + ".node.recv");
        if (n.contains("send")) s.node_send = channel_from_json(n["send"], p + ".node.send");
    }
    if (j.contains("user_separation")) s.user_separation = integer(j["user_separation"], p + ".user_separation");
    if (j.contains("split_users")) s.split_users = boolean(j["split_users"], p + ".split_users");
    for (const auto* ch : {&s.node_recv, &s.node_send}) {
        if (auto f = ch->family(); f && *f != s.family) {
            throw InputError(p + ".node: channel family does not match '" + std::string(to_string(s.family)) + "'");
        }
    }
    if (!(s.gamma > 0.0)) throw InputError(p + ".gamma: must be positive");
    if (!(s.nbar_b >= 0.0)) throw InputError(p + ".nbar_B: must be non-negative");
    if (!(s.edge_length_km >= 0.0)) throw InputError(p + ".edge_length_km: must be non-negative");
    return s;
}

Json to_json(const wrn::WrnSpec& s) {
    return {{"cell", wrn::to_string(s.cell)},
            {"radius", s.radius},
            {"edge_length_km", s.edge_length_km},
            {"family", to_string(s.family)},
            {"gamma", s.gamma},
            {"nbar_B", s.nbar_b},
            {"node", {{"recv", to_json(s.node_recv)}, {"send", to_json(s.node_send)}}},
            {"user_separation", s.user_separation},
            {"split_users", s.split_users}};
}

Json to_json(const wrn::ThresholdResult& r) {
    return {{"param", wrn::to_string(r.param)},
            {"x", wrn::to_string(r.scale_kind)},
            {"bracket", {finite_or_null(r.bracket[0]), finite_or_null(r.bracket[1])}},
            {"direction", wrn::to_string(r.direction)},
            {"target", r.target},
            {"scale", r.scale},
            {"fromLowerBound", optional_number(r.from_lower_bound)},
            {"fromUpperBound", optional_number(r.from_upper_bound)}};
}

Json to_json(const wrn::ThresholdReport& report, const std::optional<wrn::DensityResult>& density) {
    Json j{{"k", report.k},
           {"delta", report.delta},
           {"omega", {{"numerator", report.omega.numerator},
                      {"denominator", report.omega.denominator},
                      {"value", report.omega.value()}}},
           {"performanceLowerCoefficient", report.performance_lower_coefficient},
           {"bulk", to_json(report.bulk)},
           {"userEdges", to_json(report.user_edges)}};
    if (density) {
        j["rhoMin"] = {{"dMax", density->d_max}, {"xiGeom", density->xi_geom}, {"value", density->rho_min}};
    }
    j["warnings"] = report.warnings;
    return j;
}

std::string_view to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::EdgeLength: return "edgeLength";
        case SweepVariable::InternalLoss: return "internalLoss";
        case SweepVariable::ReceiverNoise: return "receiverNoise";
        case SweepVariable::TargetCapacity: return "targetCapacity";
    }
    return "";
}

std::vector<double> SweepSpec::points() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / (steps - 1);
        if (i == steps - 1) {
            out.push_back(stop);
        } else if (log_scale) {
            out.push_back(std::exp(std::log(start) + t * (std::log(stop) - std::log(start))));
        } else {
            out.push_back(start + t * (stop - start));
        }
    }
    return out;
}

SweepSpec sweep_from_json(const Json& j) {
    const std::string p = "sweep";
    if (!j.is_object()) throw InputError(p + ": expected an object");
    SweepSpec s;
    const auto var = text(require(j, "variable", p), p + ".variable");
    if (var == "edgeLength") {
        s.variable = SweepVariable::EdgeLength;
    } else if (var == "internalLoss") {
        s.variable = SweepVariable::InternalLoss;
    } else if (var == "receiverNoise") {
        s.variable = SweepVariable::ReceiverNoise;
    } else if (var == "targetCapacity") {
        s.variable = SweepVariable::TargetCapacity;
    } else {
        throw InputError(p + ".variable: unknown sweep variable '" + var + "'");
    }

    const auto& range = require(j, "range", p);
    s.start = number(require(range, "start", p + ".range"), p + ".range.start");
    s.stop = number(require(range, "stop", p + ".range"), p + ".range.stop");
    s.steps = integer(require(range, "steps", p + ".range"), p + ".range.steps");
    if (range.contains("scale")) {
        const auto sc = text(range["scale"], p + ".range.scale");
        if (sc != "linear" && sc != "log") throw InputError(p + ".range.scale: expected 'linear' or 'log'");
        s.log_scale = sc == "log";
    }
    if (s.steps < 2) throw InputError(p + ".range.steps: at least 2 points required");
    if (!(s.start < s.stop)) throw InputError(p + ".range: start must be below stop");
    if (s.log_scale && !(s.start > 0.0)) throw InputError(p + ".range: log scale needs positive endpoints");
    if (!std::isfinite(s.start) || !std::isfinite(s.stop)) throw InputError(p + ".range: endpoints must be finite");

    s.context.spec = wrn_spec_from_json(require(j, "wrn", p));
    s.context.target = number_or(j, "target", s.context.target, p);
    if (j.contains("qkd_setup")) s.context.qkd = qkd_from_json(j["qkd_setup"]);
    if (j.contains("solve_for")) {
        const auto name = text(j["solve_for"], p + ".solve_for");
        s.solve_for = tagged(p + ".solve_for", [&] { return wrn::parse_parameter(name); });
    }
    switch (s.variable) {
        case SweepVariable::EdgeLength: s.context.param = wrn::ParameterKind::EdgeLength; break;
        case SweepVariable::InternalLoss: s.context.param = wrn::ParameterKind::InternalLoss; break;
        case SweepVariable::ReceiverNoise: s.context.param = wrn::ParameterKind::ReceiverNoise; break;
        case SweepVariable::TargetCapacity: s.context.param = s.solve_for; break;
    }
    if (s.variable == SweepVariable::TargetCapacity && !(s.start > 0.0)) {
        throw InputError(p + ".range: target capacities must be positive");
    }
    return s;
}

}  // namespace qnetcap::io
