#include "qnetcap/routing.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <tuple>

namespace qnetcap {

namespace {

constexpr double kResidualTolerance = 1e-12;
constexpr std::size_t kBruteForceLimit = 22;

/// Level-graph blocking-flow solver. Each undirected edge e becomes arcs 2e
/// (u -> v) and 2e + 1 (v -> u), each the other's reverse, both starting at
/// the edge capacity.
class Dinic {
public:
    Dinic(const BoundedGraph& graph, Selector selector)
        : graph_(graph), n_(graph.node_count()), residual_(2 * graph.edges().size()),
          level_(n_), cursor_(n_) {
        double max_capacity = 0.0;
        for (std::size_t e = 0; e < graph.edges().size(); ++e) {
            const double c = graph.edges()[e].value(selector);
            residual_[2 * e] = residual_[2 * e + 1] = c;
            max_capacity = std::max(max_capacity, c);
        }
        eps_ = kResidualTolerance * (max_capacity > 0.0 ? max_capacity : 1.0);
    }

    double run() {
        double total = 0.0;
        while (build_levels()) {
            std::fill(cursor_.begin(), cursor_.end(), 0);
            while (true) {
                const double pushed =
                    augment(graph_.alpha(), std::numeric_limits<double>::infinity());
                if (pushed <= eps_) break;
                total += pushed;
            }
        }
        return total;
    }

    std::vector<bool> reachable_from_source() const {
        std::vector<bool> seen(n_, false);
        std::queue<std::size_t> q;
        seen[graph_.alpha()] = true;
        q.push(graph_.alpha());
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto e : graph_.incident(u)) {
                const auto [arc, w] = outgoing(e, u);
                if (!seen[w] && residual_[arc] > eps_) {
                    seen[w] = true;
                    q.push(w);
                }
            }
        }
        return seen;
    }

    /// Net flow along edge e in the u -> v direction (may be negative).
    double net_flow(std::size_t e) const { return 0.5 * (residual_[2 * e + 1] - residual_[2 * e]); }

private:
    std::pair<std::size_t, std::size_t> outgoing(std::size_t e, std::size_t from) const {
        const auto& edge = graph_.edges()[e];
        return from == edge.u ? std::pair{2 * e, edge.v} : std::pair{2 * e + 1, edge.u};
    }

    bool build_levels() {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> q;
        level_[graph_.alpha()] = 0;
        q.push(graph_.alpha());
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto e : graph_.incident(u)) {
                const auto [arc, w] = outgoing(e, u);
                if (level_[w] < 0 && residual_[arc] > eps_) {
                    level_[w] = level_[u] + 1;
                    q.push(w);
                }
            }
        }
        return level_[graph_.beta()] >= 0;
    }

    double augment(std::size_t u, double limit) {
        if (u == graph_.beta()) return limit;
        const auto& inc = graph_.incident(u);
        for (auto& i = cursor_[u]; i < inc.size(); ++i) {
            const auto e = inc[i];
            const auto [arc, w] = outgoing(e, u);
            if (level_[w] != level_[u] + 1 || residual_[arc] <= eps_) continue;
            const double pushed = augment(w, std::min(limit, residual_[arc]));
            if (pushed > eps_) {
                residual_[arc] -= pushed;
                residual_[arc ^ 1] += pushed;
                return pushed;
            }
        }
        return 0.0;
    }

    const BoundedGraph& graph_;
    std::size_t n_;
    std::vector<double> residual_;
    std::vector<int> level_;
    std::vector<std::size_t> cursor_;
    double eps_ = kResidualTolerance;
};

}  // namespace

double cut_value(const BoundedGraph& graph, const std::vector<bool>& on_source_side,
                 Selector selector) {
    double sum = 0.0;
    for (const auto& e : graph.edges()) {
        if (on_source_side[e.u] != on_source_side[e.v]) sum += e.value(selector);
    }
    return sum;
}

Cut make_cut(const BoundedGraph& graph, const std::vector<bool>& on_source_side) {
    Cut cut;
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
        (on_source_side[i] ? cut.source_side : cut.sink_side).push_back(i);
    }
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        const auto& edge = graph.edges()[e];
        if (on_source_side[edge.u] != on_source_side[edge.v]) cut.edges.push_back(e);
    }
    return cut;
}

PathResult widest_path(const BoundedGraph& graph, Selector selector) {
    const std::size_t n = graph.node_count();
    // -1 marks unreached nodes so that zero-valued links still count as links.
    std::vector<double> best(n, -1.0);
    std::vector<std::size_t> parent(n, n);
    std::vector<bool> done(n, false);

    // Max-heap on bottleneck; among equal values the smaller index pops first.
    using Entry = std::pair<double, std::size_t>;
    auto worse = [](const Entry& a, const Entry& b) {
        return a.first < b.first || (a.first == b.first && a.second > b.second);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

    best[graph.alpha()] = std::numeric_limits<double>::infinity();
    heap.push({best[graph.alpha()], graph.alpha()});
    while (!heap.empty()) {
        const auto [value, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = true;
        if (u == graph.beta()) break;
        for (auto ei : graph.incident(u)) {
            const auto& e = graph.edges()[ei];
            const std::size_t w = e.u == u ? e.v : e.u;
            if (done[w]) continue;
            const double candidate = std::min(value, e.value(selector));
            if (candidate > best[w]) {
                best[w] = candidate;
                parent[w] = u;
                heap.push({candidate, w});
            }
        }
    }

    PathResult result;
    if (best[graph.beta()] < 0.0) return result;
    result.value = best[graph.beta()];
    for (std::size_t v = graph.beta(); v != n; v = parent[v]) result.nodes.push_back(v);
    std::reverse(result.nodes.begin(), result.nodes.end());
    return result;
}

FlowResult max_flow(const BoundedGraph& graph, Selector selector) {
    Dinic solver(graph, selector);
    FlowResult result;
    result.value = solver.run();
    const auto side = solver.reachable_from_source();
    result.mincut = make_cut(graph, side);
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        const double f = solver.net_flow(e);
        if (f == 0.0) continue;
        const auto& edge = graph.edges()[e];
        if (f > 0.0) {
            result.flows.push_back({e, edge.u, edge.v, f});
        } else {
            result.flows.push_back({e, edge.v, edge.u, -f});
        }
    }
    return result;
}

MinCut brute_force_min_cut(const BoundedGraph& graph, Selector selector) {
    const std::size_t n = graph.node_count();
    if (n > kBruteForceLimit) {
        throw SizeError("exhaustive cut enumeration is limited to " +
                        std::to_string(kBruteForceLimit) + " nodes");
    }
    std::vector<std::size_t> free_nodes;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != graph.alpha() && i != graph.beta()) free_nodes.push_back(i);
    }

    std::vector<bool> side(n, false);
    std::vector<bool> best_side;
    double best = std::numeric_limits<double>::infinity();
    const std::uint64_t count = std::uint64_t{1} << free_nodes.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (std::size_t j = 0; j < free_nodes.size(); ++j) side[free_nodes[j]] = (mask >> j) & 1U;
        side[graph.alpha()] = true;
        side[graph.beta()] = false;
        const double value = cut_value(graph, side, selector);
        if (value < best) {
            best = value;
            best_side = side;
        }
    }
    return {best, make_cut(graph, best_side)};
}

CapacityReport capacity_report(const BoundedGraph& graph) {
    CapacityReport report;
    report.path_lower = widest_path(graph, Selector::Lower);
    report.path_upper = widest_path(graph, Selector::Upper);
    report.flow_lower = max_flow(graph, Selector::Lower);
    report.flow_upper = max_flow(graph, Selector::Upper);
    report.single_path = {report.path_lower.value, report.path_upper.value};
    report.flooding = {report.flow_lower.value, report.flow_upper.value};
    report.min_neighbourhood = {min_neighbourhood_capacity(graph, Selector::Lower),
                                min_neighbourhood_capacity(graph, Selector::Upper)};
    return report;
}

}  // namespace qnetcap
