#include "qnetcap/network.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace qnetcap {

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
    std::ostringstream out;
    out << "invalid network:";
    for (const auto& v : violations) out << "\n  " << to_string(v);
    return out.str();
}

std::string edge_path(std::size_t i) { return "edges[" + std::to_string(i) + "]"; }

}  // namespace

std::string to_string(const Violation& v) { return v.path + ": " + v.message; }

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

void NetworkGraph::add_node(NodeSpec node) {
    auto id = node.id;
    nodes.insert_or_assign(std::move(id), std::move(node));
}

void NetworkGraph::add_edge(std::string a, std::string b,
                            std::variant<ChannelSpec, FibreParams> link) {
    edges.push_back({std::move(a), std::move(b), std::move(link)});
}

const NodeSpec& NetworkGraph::node(const std::string& id) const {
    auto it = nodes.find(id);
    if (it == nodes.end()) throw NotFound("unknown node '" + id + "'");
    return it->second;
}

Family NetworkGraph::resolved_family() const {
    std::optional<Family> found = family;
    auto visit = [&found](const ChannelSpec& ch) {
        auto f = ch.family();
        if (!f) return;
        if (found && *found != *f) {
            throw FamilyError("network mixes amplitude-damping and bosonic channels");
        }
        found = f;
    };
    for (const auto& [id, node] : nodes) {
        visit(node.recv);
        visit(node.send);
    }
    for (const auto& e : edges) {
        if (const auto* ch = std::get_if<ChannelSpec>(&e.link)) visit(*ch);
    }
    return found.value_or(Family::Bosonic);
}

ChannelSpec NetworkGraph::edge_channel(const EdgeSpec& edge) const {
    if (const auto* ch = std::get_if<ChannelSpec>(&edge.link)) return *ch;
    return fibre_channel(std::get<FibreParams>(edge.link), resolved_family());
}

std::vector<Violation> validate(const NetworkGraph& graph) {
    std::vector<Violation> out;

    for (const auto& [key, node] : graph.nodes) {
        if (key != node.id) {
            out.push_back({"nodes." + key, "id mismatch ('" + node.id + "')"});
        }
    }

    if (!graph.users) {
        out.push_back({"users", "required"});
    } else {
        const auto& [alpha, beta] = *graph.users;
        if (alpha == beta) out.push_back({"users", "end users must be distinct"});
        for (const auto* u : {&alpha, &beta}) {
            if (!graph.nodes.contains(*u)) out.push_back({"users", "unknown node '" + *u + "'"});
        }
    }
    for (const auto& [key, node] : graph.nodes) {
        if (node.role != NodeRole::User) continue;
        const bool listed = graph.users && (graph.users->first == key || graph.users->second == key);
        if (!listed) out.push_back({"nodes." + key, "user node is not one of the end users"});
    }

    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        const auto& e = graph.edges[i];
        for (const auto* end : {&e.a, &e.b}) {
            if (!graph.nodes.contains(*end)) {
                out.push_back({edge_path(i), "unknown endpoint '" + *end + "'"});
            }
        }
        if (e.a == e.b) out.push_back({edge_path(i), "self-loop on '" + e.a + "'"});
        auto key = std::minmax(e.a, e.b);
        if (!seen.insert({key.first, key.second}).second) {
            out.push_back({edge_path(i), "parallel edge " + e.a + "-" + e.b});
        }
        if (const auto* fibre = std::get_if<FibreParams>(&e.link)) {
            if (!(fibre->length_km >= 0.0)) out.push_back({edge_path(i), "negative fibre length"});
            if (!(fibre->gamma > 0.0)) out.push_back({edge_path(i), "fibre loss rate must be positive"});
            if (!(fibre->nbar_b >= 0.0)) out.push_back({edge_path(i), "negative background noise"});
        }
    }

    // Family homogeneity: the first typed channel fixes the family.
    std::optional<Family> family = graph.family;
    std::string origin = family ? "family" : "";
    auto check = [&](const ChannelSpec& ch, const std::string& path) {
        auto f = ch.family();
        if (!f) return;
        if (!family) {
            family = f;
            origin = path;
        } else if (*family != *f) {
            out.push_back({path, "family mismatch (" + std::string(to_string(*f)) + " vs " +
                                     std::string(to_string(*family)) + " at " + origin + ")"});
        }
    };
    for (const auto& [key, node] : graph.nodes) {
        check(node.recv, "nodes." + key + ".recv");
        check(node.send, "nodes." + key + ".send");
    }
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        if (const auto* ch = std::get_if<ChannelSpec>(&graph.edges[i].link)) {
            check(*ch, edge_path(i) + ".channel");
        }
    }
    return out;
}

BoundedGraph::BoundedGraph(std::vector<std::string> ids, std::vector<BoundedEdge> edges,
                           std::size_t alpha, std::size_t beta)
    : ids_(std::move(ids)), edges_(std::move(edges)), incident_(ids_.size()), alpha_(alpha),
      beta_(beta) {
    const std::size_t n = ids_.size();
    if (alpha_ >= n || beta_ >= n) throw DomainError("end user index out of range");
    if (alpha_ == beta_) throw DomainError("end users must be distinct");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (e.u >= n || e.v >= n) throw DomainError("edge endpoint out of range");
        if (e.u == e.v) throw DomainError("self-loop in bounded graph");
        if (!(e.bounds.lower >= 0.0) || !(e.bounds.upper >= e.bounds.lower)) {
            throw DomainError("edge bounds must satisfy 0 <= lower <= upper");
        }
        incident_[e.u].push_back(i);
        incident_[e.v].push_back(i);
    }
}

BoundedGraph BoundedGraph::from_values(
    std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
    std::size_t alpha, std::size_t beta) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        char buf[24];
        std::snprintf(buf, sizeof buf, "v%03zu", i);
        ids.emplace_back(buf);
    }
    std::vector<BoundedEdge> out;
    out.reserve(edges.size());
    for (const auto& [u, v, value] : edges) {
        BoundedEdge e{u, v, {}};
        e.bounds.lower = e.bounds.upper = value;
        if (u < n && v < n) {
            e.bounds.lower_orientation = e.bounds.upper_orientation = {ids[u], ids[v]};
        }
        out.push_back(std::move(e));
    }
    return BoundedGraph(std::move(ids), std::move(out), alpha, beta);
}

std::size_t BoundedGraph::index_of(const std::string& id) const {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) throw NotFound("unknown node '" + id + "'");
    return static_cast<std::size_t>(it - ids_.begin());
}

BoundedGraph BoundedGraph::without_edge(std::size_t edge_index) const {
    auto edges = edges_;
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(edge_index));
    return BoundedGraph(ids_, std::move(edges), alpha_, beta_);
}

BoundedGraph apply_split(const NetworkGraph& graph) {
    if (auto violations = validate(graph); !violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    std::vector<std::string> ids;
    ids.reserve(graph.nodes.size());
    for (const auto& [id, node] : graph.nodes) ids.push_back(id);

    auto index = [&ids](const std::string& id) {
        return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };

    std::vector<BoundedEdge> edges;
    edges.reserve(graph.edges.size());
    for (const auto& e : graph.edges) {
        edges.push_back({index(e.a), index(e.b),
                         oriented_edge_bounds(graph.edge_channel(e), graph.node(e.a), graph.node(e.b))});
    }
    return BoundedGraph(std::move(ids), std::move(edges), index(graph.users->first),
                        index(graph.users->second));
}

std::vector<EdgeSpec> neighbourhood_edges(const NetworkGraph& graph, const std::string& id) {
    if (!graph.nodes.contains(id)) throw NotFound("unknown node '" + id + "'");
    std::vector<EdgeSpec> out;
    for (const auto& e : graph.edges) {
        if (e.a == id || e.b == id) out.push_back(e);
    }
    return out;
}

double min_neighbourhood_capacity(const BoundedGraph& graph, Selector selector) {
    auto isolate = [&](std::size_t node) {
        double sum = 0.0;
        for (auto ei : graph.incident(node)) sum += graph.edges()[ei].value(selector);
        return sum;
    };
    return std::min(isolate(graph.alpha()), isolate(graph.beta()));
}

}  // namespace qnetcap
