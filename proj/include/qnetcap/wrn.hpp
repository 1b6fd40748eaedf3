#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnetcap/channels.hpp"
#include "qnetcap/network.hpp"
#include "qnetcap/qkd.hpp"

namespace qnetcap::wrn {

/// triangular6: triangular lattice, every edge shares 2 neighbours.
/// manhattan8: square lattice with both diagonals; axis edges share 4
/// neighbours, diagonal edges 2.
enum class CellType { Triangular6, Manhattan8 };

std::string_view to_string(CellType cell);
CellType parse_cell(std::string_view name);

/// Sorted multiset of adjacent commonalities of one node.
using Commonality = std::vector<int>;
using CommonalitySet = std::vector<Commonality>;

int degree(CellType cell);
CommonalitySet commonality_set(CellType cell);

/// Weakly-regular lattice description. The generated network holds every
/// lattice node within `radius` hops of either end user; the users sit
/// `user_separation` hops apart on one lattice axis.
struct WrnSpec {
    CellType cell = CellType::Triangular6;
    int radius = 2;
    double edge_length_km = 50.0;
    Family family = Family::Bosonic;
    double gamma = 0.02;
    double nbar_b = 0.002;
    ChannelSpec node_recv;
    ChannelSpec node_send;
    int user_separation = 3;
    /// Apply the internal channels at the end users as well.
    bool split_users = true;

    int k() const { return degree(cell); }
    CommonalitySet lambda() const { return commonality_set(cell); }
    FibreParams fibre() const { return {gamma, nbar_b, edge_length_km}; }
};

struct Ratio {
    long long numerator;
    long long denominator;

    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
    friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// min over multisets of sum (k - lambda_i - 1).
int delta(int k, const CommonalitySet& lambda);

/// delta (k - 1) / (delta - k + 1), reduced. Requires delta > k - 1.
Ratio omega(int k, int delta);

NetworkGraph generate(const WrnSpec& spec);

/// Multiset of |N_x ∩ N_y| over the neighbours y of `id`, sorted.
Commonality adjacent_commonality(const NetworkGraph& graph, const std::string& id);

enum class Direction { MaxTolerable, MinRequired };
std::string_view to_string(Direction d);

/// Physical range of the searched parameter.
struct SearchDomain {
    double min = 0.0;
    double max = std::numeric_limits<double>::infinity();
};

struct ThresholdSolution {
    double xi;
    /// bound(xi), equal to target / scale to relative 1e-6.
    double value;
    Direction direction;
};

/// Solves scale * bound(xi) = target by bisection on the log-ratio cost.
/// The starting bracket [1e-6, 1e3] (clipped to the domain) is widened
/// outward by doubling up to 60 times. Throws NotAttainable when the target
/// falls outside the sampled range of the bound, MonotonicityError when a
/// 64-point scan finds the bound non-monotone.
ThresholdSolution solve_threshold(const std::function<double(double)>& bound, double target,
                                  double scale, SearchDomain domain = {});

enum class ParameterKind { EdgeLength, InternalLoss, ReceiverNoise };
std::string_view to_string(ParameterKind kind);
ParameterKind parse_parameter(std::string_view name);

enum class ScaleKind { Delta, Omega };
std::string_view to_string(ScaleKind kind);

/// Threshold of one parameter at one scale, bracketed by the solutions from
/// the lower and the upper bounding function.
struct ThresholdResult {
    ParameterKind param = ParameterKind::EdgeLength;
    ScaleKind scale_kind = ScaleKind::Delta;
    double scale = 0.0;
    double target = 0.0;
    Direction direction = Direction::MaxTolerable;
    /// Empty when the target is outside that bound's range.
    std::optional<double> from_lower_bound;
    std::optional<double> from_upper_bound;
    /// Ordered low-high; NaN ends where a bound is unattainable.
    std::array<double, 2> bracket{};
};

/// Fixed context for a threshold query. The varied parameter overrides the
/// matching part of `spec`:
///   EdgeLength    - fibre length of every edge;
///   InternalLoss  - receive-side loss p (qubit) or 1 - tau (bosonic) of every
///                   node, with an ideal send side;
///   ReceiverNoise - receive-side thermal photons of every node (bosonic).
/// With `qkd` set, every node's receive channel follows the receiver model
/// of that setup and the fibre noise is the setup's nbar_b.
struct ThresholdQuery {
    WrnSpec spec;
    ParameterKind param = ParameterKind::EdgeLength;
    double target = 1e-2;
    std::optional<qkd::QkdSetup> qkd;
};

struct BoundFunctions {
    std::function<double(double)> lower;
    std::function<double(double)> upper;
    SearchDomain domain;
};

/// Single-edge lower/upper capacity bounds as functions of the varied parameter.
BoundFunctions bound_functions(const ThresholdQuery& query);

struct ThresholdReport {
    ThresholdResult bulk;        ///< scale delta, all edges
    ThresholdResult user_edges;  ///< scale omega, edges at the end users
    int k = 0;
    int delta = 0;
    Ratio omega{0, 1};
    /// 2 (k - 1) / delta, the guaranteed fraction under the bulk threshold.
    double performance_lower_coefficient = 0.0;
    std::vector<std::string> warnings;
};

ThresholdReport threshold_report(const ThresholdQuery& query);

struct DensityResult {
    double d_max;
    double xi_geom;
    double rho_min;  ///< nodes per km^2
};

DensityResult min_nodal_density(double d_max, CellType cell);

struct Theorem2Check {
    bool holds;
    double flooding;
    double expected;
};

/// Max flow on the generated lattice with every edge set to `c`, compared to k c.
Theorem2Check verify_theorem2(const WrnSpec& spec, double edge_value);

/// Same check on an arbitrary graph. Throws DomainError unless the users and
/// their neighbours have degree k with commonalities drawn from `lambda`.
Theorem2Check verify_theorem2(const NetworkGraph& graph, int k, const CommonalitySet& lambda,
                              double edge_value);

}  // namespace qnetcap::wrn
