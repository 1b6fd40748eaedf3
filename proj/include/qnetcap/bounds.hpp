#pragma once

#include <string>
#include <string_view>

#include "qnetcap/channels.hpp"

namespace qnetcap {

enum class BoundKind { RciLower, SquashedUpper, ReeUpper, PlobExact };

std::string_view to_string(BoundKind kind);

/// Physical direction chosen for an edge, sender first.
struct Orientation {
    std::string from;
    std::string to;

    friend bool operator==(const Orientation&, const Orientation&) = default;
};

/// Capacity bounds (bits per channel use) for one undirected edge after the
/// physical orientation has been optimized separately for each bound.
struct EdgeBounds {
    double lower = 0.0;
    double upper = 0.0;
    BoundKind lower_kind = BoundKind::RciLower;
    BoundKind upper_kind = BoundKind::SquashedUpper;
    Orientation lower_orientation;
    Orientation upper_orientation;
};

/// Binary Shannon entropy in bits.
double h2(double u);

/// Entropy of a thermal state with mean photon number x, in bits.
double bosonic_h(double x);

/// Reverse coherent information of amplitude damping, maximized over the
/// input excitation u. Coarse 1001-point scan then golden-section refinement.
double ad_rci(double p_tot);

/// Squashed-entanglement upper bound of amplitude damping.
double ad_squashed(double p_tot);

/// Reverse coherent information of a thermal-loss channel, clamped at zero.
/// eta == 1 is divergent and throws DomainError.
double tl_rci(double eta_tot, double nbar_tot);

/// Relative entropy of entanglement bound of a thermal-loss channel, clamped
/// at zero. Entanglement-breaking channels (nbar >= eta) return 0.
double tl_ree(double eta_tot, double nbar_tot);

/// Two-way capacity of the pure-loss channel, -log2(1 - eta).
double plob_pure_loss(double eta);

/// Bounds for the edge (x, y) with node splitting applied in both physical
/// directions; each bound takes its best direction. Equal directions resolve
/// to the lexicographically smaller (sender, receiver) id pair.
EdgeBounds oriented_edge_bounds(const ChannelSpec& edge, const NodeSpec& x, const NodeSpec& y);

}  // namespace qnetcap
