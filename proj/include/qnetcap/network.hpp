#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qnetcap/bounds.hpp"
#include "qnetcap/channels.hpp"
#include "qnetcap/errors.hpp"

namespace qnetcap {

/// Undirected link between two nodes: either an explicit channel or a fibre
/// whose channel is derived from the network's family.
struct EdgeSpec {
    std::string a;
    std::string b;
    std::variant<ChannelSpec, FibreParams> link;
};

struct Violation {
    std::string path;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

std::string to_string(const Violation& v);

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

struct NetworkGraph {
    std::map<std::string, NodeSpec> nodes;
    std::vector<EdgeSpec> edges;
    std::optional<std::pair<std::string, std::string>> users;
    /// Explicit family; otherwise inferred from the channels, and fibre-only
    /// networks default to bosonic.
    std::optional<Family> family;

    void add_node(NodeSpec node);
    void add_edge(std::string a, std::string b, std::variant<ChannelSpec, FibreParams> link);

    const NodeSpec& node(const std::string& id) const;

    /// Throws FamilyError when explicit channels disagree.
    Family resolved_family() const;

    ChannelSpec edge_channel(const EdgeSpec& edge) const;
};

/// Structural and family checks. Never throws.
std::vector<Violation> validate(const NetworkGraph& graph);

/// Which of the two per-edge bounds a query reads.
enum class Selector { Lower, Upper };

struct BoundedEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    EdgeBounds bounds;

    double value(Selector s) const { return s == Selector::Lower ? bounds.lower : bounds.upper; }
};

/// Index-based graph with every edge annotated by its capacity bounds.
/// Node indices follow the order of `ids`; routines break ties by index.
class BoundedGraph {
public:
    BoundedGraph(std::vector<std::string> ids, std::vector<BoundedEdge> edges, std::size_t alpha,
                 std::size_t beta);

    /// Graph on nodes "v000", "v001", ... with lower == upper == value.
    static BoundedGraph from_values(std::size_t n,
                                    const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
                                    std::size_t alpha, std::size_t beta);

    std::size_t node_count() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(std::size_t i) const { return ids_.at(i); }
    std::size_t index_of(const std::string& id) const;

    const std::vector<BoundedEdge>& edges() const { return edges_; }
    /// Edge indices incident to node i.
    const std::vector<std::size_t>& incident(std::size_t i) const { return incident_.at(i); }

    std::size_t alpha() const { return alpha_; }
    std::size_t beta() const { return beta_; }

    /// Copy with the given edge removed.
    BoundedGraph without_edge(std::size_t edge_index) const;

private:
    std::vector<std::string> ids_;
    std::vector<BoundedEdge> edges_;
    std::vector<std::vector<std::size_t>> incident_;
    std::size_t alpha_;
    std::size_t beta_;
};

/// Annotates every edge with its orientation-optimized bounds. Throws
/// ValidationError on an invalid graph.
BoundedGraph apply_split(const NetworkGraph& graph);

/// Edges incident to `id`. Throws NotFound for unknown ids.
std::vector<EdgeSpec> neighbourhood_edges(const NetworkGraph& graph, const std::string& id);

/// Capacity of the cheaper of the two user-isolating cuts.
double min_neighbourhood_capacity(const BoundedGraph& graph, Selector selector);

}  // namespace qnetcap
