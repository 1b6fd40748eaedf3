#include "qnetcap/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

namespace qnetcap::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string format_value(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double edge_transmissivity(const wrn::WrnSpec& spec, double length) {
    FibreParams f = spec.fibre();
    f.length_km = length;
    return f.transmissivity();
}

/// Tolerable receiver noise for one edge length, from both bounds.
std::pair<double, double> tolerable_noise(const wrn::ThresholdQuery& context, double length) {
    wrn::ThresholdQuery q = context;
    q.param = wrn::ParameterKind::ReceiverNoise;
    q.spec.edge_length_km = length;
    if (q.qkd) {
        q.spec.nbar_b = q.qkd->nbar_b;
        q.spec.node_recv = ChannelSpec::thermal_loss(q.qkd->tau_eff, 0.0);
        q.spec.node_send = ChannelSpec::identity();
        q.qkd.reset();
    }
    const auto f = wrn::bound_functions(q);
    const double scale = wrn::delta(q.spec.k(), q.spec.lambda());
    auto solve = [&](const std::function<double(double)>& g) {
        try {
            return wrn::solve_threshold(g, q.target, scale, f.domain).xi;
        } catch (const NotAttainable&) {
            return kNan;
        }
    };
    return {solve(f.lower), solve(f.upper)};
}

void write_error(std::ostream& err, const char* kind, const std::string& message) {
    io::Json j{{"error", kind}, {"message", message}};
    err << j.dump() << "\n";
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
    } else {
        io::write_text_file(path, content);
    }
}

// Longest-bottleneck simple path by exhaustive DFS.
double enumerate_widest(const BoundedGraph& g) {
    std::vector<bool> on_path(g.node_count(), false);
    double best = 0.0;
    std::function<void(std::size_t, double)> dfs = [&](std::size_t u, double bottleneck) {
        if (u == g.beta()) {
            best = std::max(best, bottleneck);
            return;
        }
        on_path[u] = true;
        for (auto ei : g.incident(u)) {
            const auto& e = g.edges()[ei];
            const auto w = e.u == u ? e.v : e.u;
            if (!on_path[w]) dfs(w, std::min(bottleneck, e.value(Selector::Lower)));
        }
        on_path[u] = false;
    };
    dfs(g.alpha(), std::numeric_limits<double>::infinity());
    return best;
}

}  // namespace

io::Json analyze(const io::Json& network) {
    const auto graph = io::network_from_json(network);
    const auto bounded = apply_split(graph);
    return io::report_json(bounded, capacity_report(bounded));
}

io::Json threshold(const io::Json& spec, std::optional<double> target, std::optional<std::string> param) {
    wrn::ThresholdQuery q;
    q.spec = io::wrn_spec_from_json(spec);
    if (spec.contains("target")) {
        if (!spec["target"].is_number()) throw io::InputError("target: expected a number");
        q.target = spec["target"].get<double>();
    }
    if (target) q.target = *target;
    if (!(q.target > 0.0) || !std::isfinite(q.target)) throw io::InputError("target: must be positive");
    std::string name = "edgeLength";
    if (spec.contains("param")) {
        if (!spec["param"].is_string()) throw io::InputError("param: expected a string");
        name = spec["param"].get<std::string>();
    }
    if (param) name = *param;
    try {
        q.param = wrn::parse_parameter(name);
    } catch (const DomainError& e) {
        throw io::InputError(std::string("param: ") + e.what());
    }
    if (spec.contains("qkd_setup")) q.qkd = io::qkd_from_json(spec["qkd_setup"]);

    wrn::ThresholdReport report;
    try {
        report = wrn::threshold_report(q);
    } catch (const FamilyError& e) {
        throw io::InputError(e.what());
    }
    std::optional<wrn::DensityResult> density;
    const auto& b = report.bulk;
    if (q.param == wrn::ParameterKind::EdgeLength && b.from_lower_bound && *b.from_lower_bound > 0.0) {
        density = wrn::min_nodal_density(*b.from_lower_bound, q.spec.cell);
    }
    auto j = io::to_json(report, density);
    if (density && b.from_upper_bound && *b.from_upper_bound > 0.0) {
        const double xi = density->xi_geom;
        const double d_lo = std::min(*b.from_lower_bound, *b.from_upper_bound);
        const double d_hi = std::max(*b.from_lower_bound, *b.from_upper_bound);
        j["rhoMin"]["bracket"] = {xi / (d_hi * d_hi), xi / (d_lo * d_lo)};
    }
    return j;
}

std::string sweep_csv(const io::SweepSpec& spec) {
    std::ostringstream out;
    out << kSweepSchema << " variable=" << io::to_string(spec.variable) << "\n" << kSweepHeader << "\n";

    const auto points = spec.points();
    std::optional<wrn::BoundFunctions> f;
    if (spec.variable != io::SweepVariable::TargetCapacity) f = wrn::bound_functions(spec.context);
    const bool bosonic = spec.context.spec.family == Family::Bosonic;

    for (double x : points) {
        std::array<double, 6> row;
        row.fill(kNan);
        if (spec.variable == io::SweepVariable::TargetCapacity) {
            wrn::ThresholdQuery q = spec.context;
            q.target = x;
            try {
                const auto r = wrn::threshold_report(q).bulk;
                row[0] = r.from_lower_bound.value_or(kNan);
                row[1] = r.from_upper_bound.value_or(kNan);
                if (q.param == wrn::ParameterKind::EdgeLength && row[0] > 0.0) {
                    row[2] = wrn::min_nodal_density(row[0], q.spec.cell).rho_min;
                }
            } catch (const NotAttainable&) {
            }
        } else {
            row[0] = f->lower(x);
            row[1] = f->upper(x);
            if (spec.variable == io::SweepVariable::EdgeLength) {
                if (x > 0.0) row[2] = wrn::min_nodal_density(x, spec.context.spec.cell).rho_min;
                const double eta = edge_transmissivity(spec.context.spec, x);
                if (spec.context.qkd && (eta > 0.0 || spec.context.qkd->scheme == qkd::LoScheme::Local)) {
                    row[3] = qkd::receiver_noise(*spec.context.qkd, eta);
                }
                if (bosonic) std::tie(row[4], row[5]) = tolerable_noise(spec.context, x);
            }
        }
        out << format_value(x);
        for (double v : row) out << "," << format_value(v);
        out << "\n";
    }
    return out.str();
}

SelftestSummary selftest(std::uint64_t seed, int cases) {
    SelftestSummary summary;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value(0.0, 1.0);
    for (int c = 0; c < cases; ++c) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 10)(rng);
        std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
        // random spanning tree, then extra edges
        for (std::size_t v = 1; v < n; ++v) {
            edges.emplace_back(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v, value(rng));
        }
        const double density = value(rng);
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                const bool present = std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
                    return std::get<0>(e) == u && std::get<1>(e) == v;
                });
                if (!present && value(rng) < density) edges.emplace_back(u, v, value(rng));
            }
        }
        const auto g = BoundedGraph::from_values(n, edges, 0, n - 1);
        ++summary.cases;
        const double flow = max_flow(g, Selector::Lower).value;
        const double cut = brute_force_min_cut(g, Selector::Lower).value;
        const double path = widest_path(g, Selector::Lower).value;
        const double path_ref = enumerate_widest(g);
        std::ostringstream msg;
        if (std::abs(flow - cut) > 1e-9) msg << "case " << c << ": max flow " << flow << " vs min cut " << cut << ". ";
        if (path != path_ref) msg << "case " << c << ": widest path " << path << " vs " << path_ref << ". ";
        if (!msg.str().empty()) {
            ++summary.failures;
            summary.messages.push_back(msg.str());
        }
    }
    return summary;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Capacity bounds and thresholds for quantum repeater networks", "qnetcap"};
    app.require_subcommand(1);

    std::string in_path, out_path, spec_path, param, cell = "triangular6", family = "bosonic";
    double target = 0.0;
    int radius = 2;
    double d = 50.0;
    double nbar_b = 0.002;
    std::uint64_t seed = 1;
    int cases = 200;

    auto* analyze_cmd = app.add_subcommand("analyze", "Capacity report for a network");
    analyze_cmd->add_option("--in", in_path, "Network JSON")->required();
    analyze_cmd->add_option("--out", out_path, "Report JSON (default stdout)");

    auto* threshold_cmd = app.add_subcommand("threshold", "Threshold report for a weakly-regular lattice");
    threshold_cmd->add_option("--spec", spec_path, "Lattice spec JSON")->required();
    auto* target_opt = threshold_cmd->add_option("--target", target, "Target flooding capacity");
    auto* param_opt = threshold_cmd->add_option("--param", param, "edge-length | internal-loss | receiver-noise");
    threshold_cmd->add_option("--out", out_path, "Report JSON (default stdout)");

    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate bounds or thresholds as CSV");
    sweep_cmd->add_option("--spec", spec_path, "Sweep spec JSON")->required();
    sweep_cmd->add_option("--out", out_path, "CSV (default stdout)");

    auto* generate_cmd = app.add_subcommand("generate", "Write a lattice network");
    generate_cmd->add_option("--cell", cell, "triangular6 | manhattan8");
    generate_cmd->add_option("--radius", radius, "Hops kept around each user (>= 2)");
    generate_cmd->add_option("--d", d, "Edge length in km");
    generate_cmd->add_option("--family", family, "qubit | bosonic");
    generate_cmd->add_option("--nbar-b", nbar_b, "Fibre thermal photons");
    generate_cmd->add_option("--out", out_path, "Network JSON (default stdout)");

    auto* validate_cmd = app.add_subcommand("validate", "Check a network document");
    validate_cmd->add_option("--in", in_path, "Network JSON")->required();

    auto* selftest_cmd = app.add_subcommand("selftest", "Randomized routing cross-checks");
    selftest_cmd->add_option("--seed", seed, "RNG seed");
    selftest_cmd->add_option("--cases", cases, "Number of random graphs")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*analyze_cmd) {
            write_output(out_path, io::dump(analyze(io::read_json_file(in_path))), out);
        } else if (*threshold_cmd) {
            std::optional<double> t;
            std::optional<std::string> p;
            if (*target_opt) t = target;
            if (*param_opt) p = param;
            write_output(out_path, io::dump(threshold(io::read_json_file(spec_path), t, p)), out);
        } else if (*sweep_cmd) {
            write_output(out_path, sweep_csv(io::sweep_from_json(io::read_json_file(spec_path))), out);
        } else if (*generate_cmd) {
            wrn::WrnSpec spec;
            spec.cell = wrn::parse_cell(cell);
            spec.radius = radius;
            spec.edge_length_km = d;
            spec.nbar_b = nbar_b;
            if (family == "qubit") {
                spec.family = Family::Qubit;
            } else if (family != "bosonic") {
                throw io::InputError("--family: expected 'qubit' or 'bosonic'");
            }
            write_output(out_path, io::dump(io::to_json(wrn::generate(spec))), out);
        } else if (*validate_cmd) {
            const auto graph = io::network_from_json(io::read_json_file(in_path));
            const auto violations = validate(graph);
            if (!violations.empty()) throw ValidationError(violations);
            out << io::Json{{"valid", true}, {"violations", io::Json::array()}}.dump() << "\n";
        } else if (*selftest_cmd) {
            const auto s = selftest(seed, cases);
            out << io::Json{{"seed", seed}, {"cases", s.cases}, {"failures", s.failures},
                            {"messages", s.messages}}
                       .dump()
                << "\n";
            return s.failures == 0 ? kOk : kNumericFailure;
        }
    } catch (const ValidationError& e) {
        io::Json list = io::Json::array();
        for (const auto& v : e.violations()) list.push_back({{"path", v.path}, {"message", v.message}});
        err << io::Json{{"error", "validation"}, {"violations", list}}.dump() << "\n";
        return kValidationFailure;
    } catch (const NotAttainable& e) {
        write_error(err, "not_attainable", e.what());
        return kNotAttainable;
    } catch (const io::InputError& e) {
        write_error(err, "input", e.what());
        return kInputError;
    } catch (const DomainError& e) {
        write_error(err, "input", e.what());
        return kInputError;
    } catch (const FamilyError& e) {
        write_error(err, "input", e.what());
        return kInputError;
    } catch (const NotFound& e) {
        write_error(err, "input", e.what());
        return kInputError;
    } catch (const std::exception& e) {
        write_error(err, "numeric", e.what());
        return kNumericFailure;
    }
    return kOk;
}

}  // namespace qnetcap::cli
