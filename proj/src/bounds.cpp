#include "qnetcap/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "qnetcap/errors.hpp"

namespace qnetcap {

namespace {

constexpr int kCoarseGrid = 1001;
constexpr double kArgTolerance = 1e-10;

double log2_one_minus(double eta) { return std::log1p(-eta) / std::numbers::ln2; }

void check_bosonic(double eta, double nbar) {
    if (!(eta > 0.0 && eta < 1.0)) {
        std::ostringstream msg;
        msg << "transmissivity must lie in (0, 1), got " << eta;
        if (eta == 1.0) msg << " (lossless channel has unbounded capacity)";
        throw DomainError(msg.str());
    }
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw DomainError("thermal photon number must be non-negative");
    }
}

double rci_raw(double eta, double nbar) {
    return -log2_one_minus(eta) - bosonic_h(nbar / (1.0 - eta));
}

double ad_rci_objective(double u, double p) { return h2(u) - h2(u * p); }

std::optional<Family> resolve_family(const ChannelSpec& edge, const NodeSpec& x,
                                     const NodeSpec& y) {
    std::optional<Family> family;
    for (const ChannelSpec* ch : {&edge, &x.receive_channel(), &x.send_channel(),
                                  &y.receive_channel(), &y.send_channel()}) {
        auto f = ch->family();
        if (!f) continue;
        if (family && *family != *f) {
            throw FamilyError("edge " + x.id + "-" + y.id +
                              " mixes amplitude-damping and bosonic channels");
        }
        family = f;
    }
    return family;
}

struct DirectedValue {
    double lower;
    double upper;
    BoundKind lower_kind;
    BoundKind upper_kind;
};

DirectedValue directed_bounds(Family family, const ChannelSpec& edge, const NodeSpec& sender,
                              const NodeSpec& receiver) {
    if (family == Family::Qubit) {
        const double p = node_split_ad(edge.damping(), sender, receiver);
        return {ad_rci(p), ad_squashed(p), BoundKind::RciLower, BoundKind::SquashedUpper};
    }
    const auto total = node_split_tl(edge.thermal(), sender, receiver);
    if (total.nbar == 0.0) {
        const double c = plob_pure_loss(total.tau);
        return {c, c, BoundKind::PlobExact, BoundKind::PlobExact};
    }
    return {tl_rci(total.tau, total.nbar), tl_ree(total.tau, total.nbar), BoundKind::RciLower,
            BoundKind::ReeUpper};
}

}  // namespace

std::string_view to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::RciLower: return "rci";
        case BoundKind::SquashedUpper: return "squashed";
        case BoundKind::ReeUpper: return "ree";
        case BoundKind::PlobExact: return "plob";
    }
    return "?";
}

double h2(double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        std::ostringstream msg;
        msg << "binary entropy argument must lie in [0, 1], got " << u;
        throw DomainError(msg.str());
    }
    double result = 0.0;
    if (u > 0.0) result -= u * std::log2(u);
    if (u < 1.0) result -= (1.0 - u) * std::log2(1.0 - u);
    return result;
}

double bosonic_h(double x) {
    if (!(x >= 0.0)) {
        std::ostringstream msg;
        msg << "mean photon number must be non-negative, got " << x;
        throw DomainError(msg.str());
    }
    if (x == 0.0) return 0.0;
    // (x+1) log2(x+1) - x log2 x, rearranged to stay accurate for large x
    return std::log2(x + 1.0) + x * std::log1p(1.0 / x) / std::numbers::ln2;
}

double ad_rci(double p_tot) {
    if (!(p_tot >= 0.0 && p_tot <= 1.0)) {
        throw DomainError("damping probability must lie in [0, 1]");
    }
    // The objective is expected to be unimodal in u; the coarse pass keeps a
    // second local maximum from being missed if that ever fails.
    const double step = 1.0 / (kCoarseGrid - 1);
    int best = 0;
    double best_value = ad_rci_objective(0.0, p_tot);
    for (int i = 1; i < kCoarseGrid; ++i) {
        const double v = ad_rci_objective(i * step, p_tot);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    double a = std::max(0, best - 1) * step;
    double b = std::min(kCoarseGrid - 1, best + 1) * step;

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = ad_rci_objective(c, p_tot);
    double fd = ad_rci_objective(d, p_tot);
    while (b - a > kArgTolerance) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = ad_rci_objective(c, p_tot);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = ad_rci_objective(d, p_tot);
        }
    }
    best_value = std::max({best_value, fc, fd, ad_rci_objective(0.5 * (a + b), p_tot)});
    return std::max(0.0, best_value);
}

double ad_squashed(double p_tot) {
    if (!(p_tot >= 0.0 && p_tot <= 1.0)) {
        throw DomainError("damping probability must lie in [0, 1]");
    }
    return std::max(0.0, h2(0.5 - p_tot / 4.0) - h2(1.0 - p_tot / 4.0));
}

double tl_rci(double eta_tot, double nbar_tot) {
    check_bosonic(eta_tot, nbar_tot);
    return std::max(0.0, rci_raw(eta_tot, nbar_tot));
}

double tl_ree(double eta_tot, double nbar_tot) {
    check_bosonic(eta_tot, nbar_tot);
    // The closed form only holds below the entanglement-breaking point
    // nbar / (1 - eta) = eta / (1 - eta); past it the bound is zero.
    if (nbar_tot >= eta_tot) return 0.0;
    const double n_env = nbar_tot / (1.0 - eta_tot);
    return std::max(0.0, rci_raw(eta_tot, nbar_tot) - n_env * std::log2(eta_tot));
}

double plob_pure_loss(double eta) {
    check_bosonic(eta, 0.0);
    return -log2_one_minus(eta);
}

EdgeBounds oriented_edge_bounds(const ChannelSpec& edge, const NodeSpec& x, const NodeSpec& y) {
    // An all-identity edge is treated as a perfect qubit link.
    const Family family = resolve_family(edge, x, y).value_or(Family::Qubit);

    const NodeSpec& first = x.id <= y.id ? x : y;
    const NodeSpec& second = x.id <= y.id ? y : x;
    const auto forward = directed_bounds(family, edge, first, second);
    const auto backward = directed_bounds(family, edge, second, first);
    const Orientation fwd{first.id, second.id};
    const Orientation bwd{second.id, first.id};

    EdgeBounds out;
    if (backward.lower > forward.lower) {
        out.lower = backward.lower;
        out.lower_kind = backward.lower_kind;
        out.lower_orientation = bwd;
    } else {
        out.lower = forward.lower;
        out.lower_kind = forward.lower_kind;
        out.lower_orientation = fwd;
    }
    if (backward.upper > forward.upper) {
        out.upper = backward.upper;
        out.upper_kind = backward.upper_kind;
        out.upper_orientation = bwd;
    } else {
        out.upper = forward.upper;
        out.upper_kind = forward.upper_kind;
        out.upper_orientation = fwd;
    }
    return out;
}

}  // namespace qnetcap
