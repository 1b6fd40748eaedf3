#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnetcap {

enum class ChannelKind { AmplitudeDamping, ThermalLoss, PureLoss, Identity };

/// Qubit channels (amplitude damping) and bosonic channels (thermal/pure loss)
/// never compose with each other. Identity is compatible with both.
enum class Family { Qubit, Bosonic };

std::string_view to_string(ChannelKind kind);
std::string_view to_string(Family family);

/// Transmissivity and output thermal photon number of a bosonic channel.
struct ThermalLoss {
    double tau = 1.0;
    double nbar = 0.0;

    friend bool operator==(const ThermalLoss&, const ThermalLoss&) = default;
};

/// A single point-to-point quantum channel. Parameters are validated on
/// construction, so any live ChannelSpec is within its domain.
class ChannelSpec {
public:
    /// Identity.
    ChannelSpec() = default;

    static ChannelSpec amplitude_damping(double p);
    static ChannelSpec thermal_loss(double tau, double nbar);
    static ChannelSpec pure_loss(double eta);
    static ChannelSpec identity() { return {}; }

    ChannelKind kind() const { return kind_; }

    /// Empty for Identity.
    std::optional<Family> family() const;

    /// Damping probability. Identity reads as p = 0; bosonic kinds throw FamilyError.
    double damping() const;

    /// Bosonic view. PureLoss(eta) reads as (eta, 0), Identity as (1, 0);
    /// amplitude damping throws FamilyError.
    ThermalLoss thermal() const;

    friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;

private:
    ChannelSpec(ChannelKind kind, double first, double second)
        : kind_(kind), first_(first), second_(second) {}

    ChannelKind kind_ = ChannelKind::Identity;
    double first_ = 0.0;
    double second_ = 0.0;
};

/// Optical fibre link. Transmissivity is 10^(-gamma * length).
struct FibreParams {
    double gamma = 0.02;
    double nbar_b = 0.002;
    double length_km = 0.0;

    double transmissivity() const;
    double damping() const { return 1.0 - transmissivity(); }
};

enum class NodeRole { Repeater, User };

/// A network node after node splitting: `recv` models the receiver-to-user
/// internal channel, `send` the user-to-sender one. With `split` off the
/// internals are ignored and the node behaves as an ideal repeater.
struct NodeSpec {
    std::string id;
    ChannelSpec recv;
    ChannelSpec send;
    NodeRole role = NodeRole::Repeater;
    bool split = true;

    const ChannelSpec& receive_channel() const;
    const ChannelSpec& send_channel() const;
};

/// Ordered channel sequence, first element applied first.
class CompoundChannel {
public:
    explicit CompoundChannel(std::vector<ChannelSpec> links);

    const std::vector<ChannelSpec>& links() const { return links_; }

    /// Empty when every link is the identity.
    std::optional<Family> family() const { return family_; }

    /// Single-channel equivalent of the whole sequence.
    ChannelSpec reduce() const;

private:
    std::vector<ChannelSpec> links_;
    std::optional<Family> family_;
};

/// p_tot = 1 - prod(1 - p_j).
double compose_ad(std::span<const double> probs);

/// Single thermal-loss channel equivalent to applying `channels` in order.
ThermalLoss compose_tl(std::span<const ThermalLoss> channels);

/// Total damping for the physical direction sender -> receiver.
double node_split_ad(double edge_p, const NodeSpec& sender, const NodeSpec& receiver);

/// Total (eta, nbar) for the physical direction sender -> receiver.
ThermalLoss node_split_tl(const ThermalLoss& edge, const NodeSpec& sender, const NodeSpec& receiver);

ChannelSpec fibre_channel(const FibreParams& params, Family family);

/// send(sender), edge, recv(receiver), in application order.
CompoundChannel directed_compound(const ChannelSpec& edge, const NodeSpec& sender,
                                  const NodeSpec& receiver);

}  // namespace qnetcap
