#include "qnetcap/wrn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "qnetcap/bounds.hpp"
#include "qnetcap/errors.hpp"
#include "qnetcap/routing.hpp"

namespace qnetcap::wrn {

namespace {

using Coord = std::pair<int, int>;

constexpr Coord kTriangularSteps[] = {{1, 0}, {0, 1}, {1, -1}};
constexpr Coord kManhattanSteps[] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};

int hops(CellType cell, Coord a, Coord b) {
    const int dx = b.first - a.first;
    const int dy = b.second - a.second;
    if (cell == CellType::Manhattan8) return std::max(std::abs(dx), std::abs(dy));
    // axial coordinates
    return (std::abs(dx) + std::abs(dy) + std::abs(dx + dy)) / 2;
}

std::string node_id(Coord c) {
    return "n" + std::to_string(c.first) + "_" + std::to_string(c.second);
}

std::set<std::string> neighbours(const NetworkGraph& graph, const std::string& id) {
    std::set<std::string> out;
    for (const auto& e : graph.edges) {
        if (e.a == id) out.insert(e.b);
        if (e.b == id) out.insert(e.a);
    }
    return out;
}

constexpr double kStartLow = 1e-6;
constexpr double kStartHigh = 1e3;
constexpr int kMaxExpansions = 60;
constexpr int kScanPoints = 64;
constexpr double kXiTolerance = 1e-9;
constexpr double kValueTolerance = 1e-6;

bool brackets(double f_lo, double f_hi, double y) {
    return std::min(f_lo, f_hi) <= y && y <= std::max(f_lo, f_hi);
}

}  // namespace

std::string_view to_string(CellType cell) {
    return cell == CellType::Triangular6 ? "triangular6" : "manhattan8";
}

CellType parse_cell(std::string_view name) {
    if (name == "triangular6") return CellType::Triangular6;
    if (name == "manhattan8") return CellType::Manhattan8;
    throw DomainError("unknown cell type '" + std::string(name) + "'");
}

int degree(CellType cell) { return cell == CellType::Triangular6 ? 6 : 8; }

CommonalitySet commonality_set(CellType cell) {
    if (cell == CellType::Triangular6) return {{2, 2, 2, 2, 2, 2}};
    return {{2, 2, 2, 2, 4, 4, 4, 4}};
}

int delta(int k, const CommonalitySet& lambda) {
    if (lambda.empty()) throw DomainError("commonality set is empty");
    int best = 0;
    bool first = true;
    for (const auto& multiset : lambda) {
        if (static_cast<int>(multiset.size()) != k) {
            throw DomainError("commonality multiset must have k entries");
        }
        int sum = 0;
        for (int l : multiset) {
            if (l < 0 || l > k - 1) throw DomainError("commonality out of range [0, k-1]");
            sum += k - l - 1;
        }
        if (first || sum < best) best = sum;
        first = false;
    }
    return best;
}

Ratio omega(int k, int d) {
    if (d <= k - 1) throw DomainError("omega requires delta > k - 1");
    long long num = static_cast<long long>(d) * (k - 1);
    long long den = d - k + 1;
    const long long g = std::gcd(num, den);
    return {num / g, den / g};
}

NetworkGraph generate(const WrnSpec& spec) {
    if (spec.radius < 2) throw DomainError("radius must be at least 2");
    if (spec.user_separation < 2) throw DomainError("users must be at least 2 hops apart");
    if (!(spec.edge_length_km >= 0.0)) throw DomainError("edge length must be non-negative");

    const Coord alpha{-(spec.user_separation / 2), 0};
    const Coord beta{alpha.first + spec.user_separation, 0};
    const int r = spec.radius;

    std::set<Coord> present;
    for (int x = alpha.first - r; x <= beta.first + r; ++x) {
        for (int y = -r; y <= r; ++y) {
            const Coord c{x, y};
            if (hops(spec.cell, c, alpha) <= r || hops(spec.cell, c, beta) <= r) present.insert(c);
        }
    }

    NetworkGraph graph;
    graph.family = spec.family;
    for (const auto& c : present) {
        NodeSpec node;
        node.id = node_id(c);
        node.recv = spec.node_recv;
        node.send = spec.node_send;
        if (c == alpha || c == beta) {
            node.role = NodeRole::User;
            node.split = spec.split_users;
        }
        graph.add_node(std::move(node));
    }
    const auto& steps = spec.cell == CellType::Triangular6
                            ? std::vector<Coord>(std::begin(kTriangularSteps), std::end(kTriangularSteps))
                            : std::vector<Coord>(std::begin(kManhattanSteps), std::end(kManhattanSteps));
    const FibreParams fibre = spec.fibre();
    for (const auto& c : present) {
        for (const auto& s : steps) {
            const Coord n{c.first + s.first, c.second + s.second};
            if (present.count(n)) graph.add_edge(node_id(c), node_id(n), fibre);
        }
    }
    graph.users = std::pair{node_id(alpha), node_id(beta)};
    return graph;
}

Commonality adjacent_commonality(const NetworkGraph& graph, const std::string& id) {
    graph.node(id);
    const auto nx = neighbours(graph, id);
    Commonality out;
    for (const auto& y : nx) {
        const auto ny = neighbours(graph, y);
        int common = 0;
        for (const auto& z : ny) common += static_cast<int>(nx.count(z));
        out.push_back(common);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string_view to_string(Direction d) {
    return d == Direction::MaxTolerable ? "maxTolerable" : "minRequired";
}

ThresholdSolution solve_threshold(const std::function<double(double)>& bound, double target,
                                  double scale, SearchDomain domain) {
    if (!(target > 0.0) || !std::isfinite(target)) throw DomainError("target must be positive");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("scale must be positive");
    if (!(domain.min < domain.max)) throw DomainError("empty search domain");

    const double y = target / scale;
    double lo = std::max(domain.min, kStartLow);
    double hi = std::min(domain.max, kStartHigh);
    if (lo >= hi) {
        lo = domain.min;
        hi = domain.max;
    }
    double f_lo = bound(lo);
    double f_hi = bound(hi);
    for (int i = 0; i < kMaxExpansions && !brackets(f_lo, f_hi, y); ++i) {
        const double next_lo = std::max(domain.min, lo / 2.0);
        const double next_hi = std::min(domain.max, hi * 2.0);
        if (next_lo == lo && next_hi == hi) break;
        if (next_lo != lo) f_lo = bound(lo = next_lo);
        if (next_hi != hi) f_hi = bound(hi = next_hi);
    }
    if (!brackets(f_lo, f_hi, y) && lo != domain.min) f_lo = bound(lo = domain.min);
    if (!brackets(f_lo, f_hi, y) && std::isfinite(domain.max) && hi != domain.max) {
        f_hi = bound(hi = domain.max);
    }
    if (!brackets(f_lo, f_hi, y) || f_lo == f_hi) {
        throw NotAttainable("target is outside the range of the bound on the search domain");
    }

    const bool decreasing = f_hi < f_lo;
    const double tol = 1e-12 * std::max(std::abs(f_lo), std::abs(f_hi));
    double prev = f_lo;
    for (int i = 1; i <= kScanPoints; ++i) {
        const double xi = lo + (hi - lo) * i / kScanPoints;
        const double f = i == kScanPoints ? f_hi : bound(xi);
        if (decreasing ? f > prev + tol : f < prev - tol) {
            throw MonotonicityError("bound is not monotone on the search bracket");
        }
        prev = f;
    }

    const double log_y = std::log(target);
    auto cost = [&](double f) { return f > 0.0 ? std::log(scale * f) - log_y : -HUGE_VAL; };
    const bool lo_above = cost(f_lo) > 0.0;
    double best = std::abs(cost(f_lo)) < std::abs(cost(f_hi)) ? lo : hi;
    double best_f = best == lo ? f_lo : f_hi;
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f = bound(mid);
        const double c = cost(f);
        if (std::abs(c) < std::abs(cost(best_f))) {
            best = mid;
            best_f = f;
        }
        if (c == 0.0) break;
        if ((c > 0.0) == lo_above) {
            lo = mid;
        } else {
            hi = mid;
        }
        const double width_ok = hi - lo <= kXiTolerance * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
        if (width_ok && std::abs(best_f - y) <= kValueTolerance * y) break;
    }
    if (!(std::abs(best_f - y) <= kValueTolerance * y)) {
        throw NotAttainable("bisection did not reach the target value");
    }
    return {best, best_f, decreasing ? Direction::MaxTolerable : Direction::MinRequired};
}

std::string_view to_string(ParameterKind kind) {
    switch (kind) {
        case ParameterKind::EdgeLength: return "edgeLength";
        case ParameterKind::InternalLoss: return "internalLoss";
        case ParameterKind::ReceiverNoise: return "receiverNoise";
    }
    return "";
}

ParameterKind parse_parameter(std::string_view name) {
    if (name == "edgeLength" || name == "edge-length") return ParameterKind::EdgeLength;
    if (name == "internalLoss" || name == "internal-loss") return ParameterKind::InternalLoss;
    if (name == "receiverNoise" || name == "receiver-noise") return ParameterKind::ReceiverNoise;
    throw DomainError("unknown parameter '" + std::string(name) + "'");
}

std::string_view to_string(ScaleKind kind) { return kind == ScaleKind::Delta ? "delta" : "omega"; }

BoundFunctions bound_functions(const ThresholdQuery& query) {
    const WrnSpec spec = query.spec;
    const auto qkd = query.qkd;
    if (qkd) {
        qkd->validate();
        if (query.param != ParameterKind::EdgeLength) {
            throw DomainError("a QKD receiver model only supports the edge-length parameter");
        }
        if (spec.family != Family::Bosonic) throw FamilyError("a QKD receiver model needs a bosonic network");
    }
    if (query.param == ParameterKind::ReceiverNoise && spec.family != Family::Bosonic) {
        throw FamilyError("receiver noise is defined for bosonic networks only");
    }

    // Evaluates the edge bounds with every node given the internal channels (recv, send).
    auto evaluate = [](const ChannelSpec& edge, const ChannelSpec& recv, const ChannelSpec& send) {
        NodeSpec x{"x", recv, send};
        NodeSpec y{"y", recv, send};
        return oriented_edge_bounds(edge, x, y);
    };

    std::function<EdgeBounds(double)> at;
    SearchDomain domain;
    switch (query.param) {
        case ParameterKind::EdgeLength:
            domain = {1e-9, std::numeric_limits<double>::infinity()};
            at = [spec, qkd, evaluate](double d) {
                FibreParams fibre = spec.fibre();
                fibre.length_km = d;
                if (qkd) fibre.nbar_b = qkd->nbar_b;
                const double eta = fibre.transmissivity();
                if (eta <= 0.0) return EdgeBounds{};
                const ChannelSpec edge = fibre_channel(fibre, spec.family);
                if (qkd) {
                    const NodeSpec node = qkd::receiver_node(*qkd, eta);
                    return evaluate(edge, node.recv, node.send);
                }
                return evaluate(edge, spec.node_recv, spec.node_send);
            };
            break;
        case ParameterKind::InternalLoss:
            domain = {0.0, 1.0};
            at = [spec, evaluate](double p) {
                const ChannelSpec edge = fibre_channel(spec.fibre(), spec.family);
                ChannelSpec recv;
                if (spec.family == Family::Qubit) {
                    recv = ChannelSpec::amplitude_damping(p);
                } else {
                    if (p >= 1.0) return EdgeBounds{};
                    const double nbar = spec.node_recv.kind() == ChannelKind::AmplitudeDamping
                                            ? 0.0
                                            : spec.node_recv.thermal().nbar;
                    recv = ChannelSpec::thermal_loss(1.0 - p, nbar);
                }
                return evaluate(edge, recv, ChannelSpec::identity());
            };
            break;
        case ParameterKind::ReceiverNoise:
            domain = {0.0, std::numeric_limits<double>::infinity()};
            at = [spec, evaluate](double n) {
                const ChannelSpec edge = fibre_channel(spec.fibre(), spec.family);
                const double tau = spec.node_recv.thermal().tau;
                return evaluate(edge, ChannelSpec::thermal_loss(tau, n), spec.node_send);
            };
            break;
    }
    return {[at](double xi) { return at(xi).lower; }, [at](double xi) { return at(xi).upper; },
            domain};
}

namespace {

ThresholdResult solve_pair(const BoundFunctions& f, const ThresholdQuery& query, ScaleKind kind,
                           double scale) {
    ThresholdResult result;
    result.param = query.param;
    result.scale_kind = kind;
    result.scale = scale;
    result.target = query.target;

    std::optional<Direction> dir_lower;
    std::optional<Direction> dir_upper;
    try {
        const auto s = solve_threshold(f.lower, query.target, scale, f.domain);
        result.from_lower_bound = s.xi;
        dir_lower = s.direction;
    } catch (const NotAttainable&) {
    }
    try {
        const auto s = solve_threshold(f.upper, query.target, scale, f.domain);
        result.from_upper_bound = s.xi;
        dir_upper = s.direction;
    } catch (const NotAttainable&) {
    }
    if (!dir_lower && !dir_upper) {
        throw NotAttainable("target " + std::to_string(query.target) +
                            " is not attainable by either bound");
    }
    if (dir_lower && dir_upper && *dir_lower != *dir_upper) {
        throw MonotonicityError("lower and upper bounds vary in opposite directions");
    }
    result.direction = dir_lower ? *dir_lower : *dir_upper;

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double l = result.from_lower_bound.value_or(nan);
    const double u = result.from_upper_bound.value_or(nan);
    // F_l <= F_u: a decreasing bound reaches the target sooner from below.
    result.bracket = result.direction == Direction::MaxTolerable ? std::array{l, u} : std::array{u, l};
    return result;
}

}  // namespace

ThresholdReport threshold_report(const ThresholdQuery& query) {
    ThresholdReport report;
    report.k = query.spec.k();
    report.delta = delta(report.k, query.spec.lambda());
    report.omega = omega(report.k, report.delta);
    report.performance_lower_coefficient = 2.0 * (report.k - 1) / report.delta;
    if (report.delta <= report.k) {
        report.warnings.push_back("delta <= k: the bulk threshold gives no guarantee beyond single-edge capacity");
    }
    const BoundFunctions f = bound_functions(query);
    report.bulk = solve_pair(f, query, ScaleKind::Delta, report.delta);
    report.user_edges = solve_pair(f, query, ScaleKind::Omega, report.omega.value());
    return report;
}

DensityResult min_nodal_density(double d_max, CellType cell) {
    if (!(d_max > 0.0) || !std::isfinite(d_max)) throw DomainError("edge length must be positive");
    const double xi = cell == CellType::Triangular6 ? 2.0 / std::sqrt(3.0) : 2.0;
    return {d_max, xi, xi / (d_max * d_max)};
}

Theorem2Check verify_theorem2(const NetworkGraph& graph, int k, const CommonalitySet& lambda,
                              double edge_value) {
    if (!(edge_value > 0.0) || !std::isfinite(edge_value)) throw DomainError("edge value must be positive");
    if (!graph.users) throw DomainError("graph has no end users");
    auto fits = [&](const std::string& id) {
        if (static_cast<int>(neighbours(graph, id).size()) != k) return false;
        const auto c = adjacent_commonality(graph, id);
        return std::find(lambda.begin(), lambda.end(), c) != lambda.end();
    };
    const auto& [a, b] = *graph.users;
    for (const auto& user : {a, b}) {
        if (!fits(user)) throw DomainError("graph is not weakly regular at user '" + user + "'");
        for (const auto& n : neighbours(graph, user)) {
            if (!fits(n)) throw DomainError("graph is not weakly regular at node '" + n + "'");
        }
    }
    if (neighbours(graph, a).count(b)) throw DomainError("end users must not be adjacent");

    std::vector<std::string> ids;
    for (const auto& [id, node] : graph.nodes) ids.push_back(id);
    auto index = [&](const std::string& id) {
        return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
    for (const auto& e : graph.edges) edges.emplace_back(index(e.a), index(e.b), edge_value);
    const auto bg = BoundedGraph::from_values(ids.size(), edges, index(a), index(b));
    const double flow = max_flow(bg, Selector::Lower).value;
    const double expected = k * edge_value;
    return {std::abs(flow - expected) <= 1e-9 * std::max(1.0, expected), flow, expected};
}

Theorem2Check verify_theorem2(const WrnSpec& spec, double edge_value) {
    return verify_theorem2(generate(spec), spec.k(), spec.lambda(), edge_value);
}

}  // namespace qnetcap::wrn
