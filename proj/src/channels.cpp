#include "qnetcap/channels.hpp"

#include <cmath>
#include <sstream>

#include "qnetcap/errors.hpp"

namespace qnetcap {

namespace {

// n_tot values this far below zero are rounding noise from xi - (1 - tau)/2.
constexpr double kNbarClamp = 1e-12;

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << what << " must lie in [0, 1], got " << p;
        throw DomainError(msg.str());
    }
}

void check_transmissivity(double tau, const char* what) {
    if (!(tau > 0.0 && tau <= 1.0)) {
        std::ostringstream msg;
        msg << what << " must lie in (0, 1], got " << tau;
        throw DomainError(msg.str());
    }
}

void check_photons(double nbar, const char* what) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        std::ostringstream msg;
        msg << what << " must be a non-negative photon number, got " << nbar;
        throw DomainError(msg.str());
    }
}

}  // namespace

std::string_view to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::AmplitudeDamping: return "ad";
        case ChannelKind::ThermalLoss: return "tl";
        case ChannelKind::PureLoss: return "pl";
        case ChannelKind::Identity: return "id";
    }
    return "?";
}

std::string_view to_string(Family family) {
    return family == Family::Qubit ? "qubit" : "bosonic";
}

ChannelSpec ChannelSpec::amplitude_damping(double p) {
    check_probability(p, "damping probability");
    return {ChannelKind::AmplitudeDamping, p, 0.0};
}

ChannelSpec ChannelSpec::thermal_loss(double tau, double nbar) {
    check_transmissivity(tau, "transmissivity");
    check_photons(nbar, "thermal photon number");
    return {ChannelKind::ThermalLoss, tau, nbar};
}

ChannelSpec ChannelSpec::pure_loss(double eta) {
    check_transmissivity(eta, "transmissivity");
    return {ChannelKind::PureLoss, eta, 0.0};
}

std::optional<Family> ChannelSpec::family() const {
    switch (kind_) {
        case ChannelKind::AmplitudeDamping: return Family::Qubit;
        case ChannelKind::ThermalLoss:
        case ChannelKind::PureLoss: return Family::Bosonic;
        case ChannelKind::Identity: return std::nullopt;
    }
    return std::nullopt;
}

double ChannelSpec::damping() const {
    switch (kind_) {
        case ChannelKind::AmplitudeDamping: return first_;
        case ChannelKind::Identity: return 0.0;
        default: throw FamilyError("expected an amplitude-damping channel, got a bosonic one");
    }
}

ThermalLoss ChannelSpec::thermal() const {
    switch (kind_) {
        case ChannelKind::ThermalLoss: return {first_, second_};
        case ChannelKind::PureLoss: return {first_, 0.0};
        case ChannelKind::Identity: return {1.0, 0.0};
        default: throw FamilyError("expected a bosonic channel, got amplitude damping");
    }
}

double FibreParams::transmissivity() const {
    if (!(length_km >= 0.0) || !std::isfinite(length_km)) {
        std::ostringstream msg;
        msg << "fibre length must be non-negative, got " << length_km;
        throw DomainError(msg.str());
    }
    if (!(gamma > 0.0)) throw DomainError("fibre loss rate must be positive");
    return std::pow(10.0, -gamma * length_km);
}

const ChannelSpec& NodeSpec::receive_channel() const {
    static const ChannelSpec ideal;
    return split ? recv : ideal;
}

const ChannelSpec& NodeSpec::send_channel() const {
    static const ChannelSpec ideal;
    return split ? send : ideal;
}

CompoundChannel::CompoundChannel(std::vector<ChannelSpec> links) : links_(std::move(links)) {
    if (links_.empty()) throw EmptyCompound();
    for (const auto& link : links_) {
        auto fam = link.family();
        if (!fam) continue;
        if (family_ && *family_ != *fam) {
            throw FamilyError("compound channel mixes amplitude-damping and bosonic links");
        }
        family_ = fam;
    }
}

ChannelSpec CompoundChannel::reduce() const {
    if (!family_) return ChannelSpec::identity();
    if (*family_ == Family::Qubit) {
        std::vector<double> probs;
        probs.reserve(links_.size());
        for (const auto& link : links_) probs.push_back(link.damping());
        return ChannelSpec::amplitude_damping(compose_ad(probs));
    }
    std::vector<ThermalLoss> parts;
    parts.reserve(links_.size());
    bool noiseless = true;
    for (const auto& link : links_) {
        parts.push_back(link.thermal());
        noiseless = noiseless && link.kind() != ChannelKind::ThermalLoss;
    }
    auto total = compose_tl(parts);
    return noiseless ? ChannelSpec::pure_loss(total.tau)
                     : ChannelSpec::thermal_loss(total.tau, total.nbar);
}

double compose_ad(std::span<const double> probs) {
    if (probs.empty()) throw EmptyCompound();
    double efficiency = 1.0;
    for (double p : probs) {
        check_probability(p, "damping probability");
        efficiency *= 1.0 - p;
    }
    return 1.0 - efficiency;
}

ThermalLoss compose_tl(std::span<const ThermalLoss> channels) {
    if (channels.empty()) throw EmptyCompound();
    // Covariance recursion V_j = tau_j V_{j-1} + eps_j I, with xi tracking the
    // accumulated additive term (vacuum = I/2).
    double tau_tot = 1.0;
    double xi = 0.0;
    for (const auto& ch : channels) {
        check_transmissivity(ch.tau, "transmissivity");
        check_photons(ch.nbar, "thermal photon number");
        const double eps = ch.nbar + 0.5 * std::abs(1.0 - ch.tau);
        xi = ch.tau * xi + eps;
        tau_tot *= ch.tau;
    }
    double nbar = xi - 0.5 * std::abs(1.0 - tau_tot);
    if (nbar < 0.0) {
        if (nbar < -kNbarClamp) {
            std::ostringstream msg;
            msg << "compound thermal noise evaluated to " << nbar;
            throw DomainError(msg.str());
        }
        nbar = 0.0;
    }
    return {tau_tot, nbar};
}

double node_split_ad(double edge_p, const NodeSpec& sender, const NodeSpec& receiver) {
    const double probs[] = {sender.send_channel().damping(), edge_p,
                            receiver.receive_channel().damping()};
    return compose_ad(probs);
}

ThermalLoss node_split_tl(const ThermalLoss& edge, const NodeSpec& sender,
                          const NodeSpec& receiver) {
    const ThermalLoss parts[] = {sender.send_channel().thermal(), edge,
                                 receiver.receive_channel().thermal()};
    return compose_tl(parts);
}

ChannelSpec fibre_channel(const FibreParams& params, Family family) {
    const double eta = params.transmissivity();
    if (family == Family::Qubit) return ChannelSpec::amplitude_damping(1.0 - eta);
    return ChannelSpec::thermal_loss(eta, params.nbar_b);
}

CompoundChannel directed_compound(const ChannelSpec& edge, const NodeSpec& sender,
                                  const NodeSpec& receiver) {
    return CompoundChannel({sender.send_channel(), edge, receiver.receive_channel()});
}

}  // namespace qnetcap
